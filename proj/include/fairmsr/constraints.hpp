#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fairmsr {

// Point colors, interned densely in first-appearance order.
struct ColorTable {
    std::vector<int> color_of;       // one entry per point
    std::vector<std::string> labels; // one entry per color id

    int num_colors() const { return static_cast<int>(labels.size()); }
    std::size_t size() const { return color_of.size(); }
};

// Exact nonnegative rational, used so ratio constraints avoid float
// comparisons. Parsed from plain decimals ("0.25" -> 1/4) or fractions
// ("1/3").
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

Rational parse_rational(const std::string& text); // throws std::invalid_argument

enum class ConstraintKind {
    Unconstrained,
    LowerBound,
    Outliers,
    ExactFairness,
    MinBalance,
    ExactBalance,
    RangeBalance,
};

std::string constraint_kind_name(ConstraintKind k);

struct ConstraintSpec {
    ConstraintKind kind = ConstraintKind::Unconstrained;
    std::int64_t lower_bound = 0; // LowerBound
    std::int64_t max_outliers = 0; // Outliers
    Rational min_balance;          // MinBalance, in [0,1]
    std::vector<Rational> alpha;   // RangeBalance, per color id
    std::vector<Rational> beta;

    static ConstraintSpec unconstrained();
    static ConstraintSpec lower_bound_of(std::int64_t l);
    static ConstraintSpec outliers_of(std::int64_t z);
    static ConstraintSpec exact_fairness();
    static ConstraintSpec min_balance_of(Rational b);
    static ConstraintSpec exact_balance();
    static ConstraintSpec range_balance_of(std::vector<Rational> alpha,
                                           std::vector<Rational> beta);

    bool needs_colors() const;
};

// Renders a spec in the CLI constraint grammar ("lower-bound:3",
// "min-balance:1/2"); RangeBalance tables print as "range-balance".
std::string to_string(const ConstraintSpec& spec);

// A partition of point indices into at most k clusters. Under Outliers the
// union may be a strict subset of all indices; otherwise it must cover.
struct Clustering {
    std::vector<std::vector<std::size_t>> clusters;

    std::size_t covered_count() const;
};

// Per-cluster definitional predicate; vacuously true on the empty cluster.
// n_total and the color table provide the global context ExactFairness
// compares against. Throws std::invalid_argument when a color-dependent
// kind lacks colors or the table shape is wrong.
bool satisfies_cluster(const std::vector<std::size_t>& cluster,
                       std::size_t n_total, const ColorTable* colors,
                       const ConstraintSpec& spec);

// Whole-clustering check: index validity, coverage (full coverage, or
// >= n - z under Outliers), and every per-cluster predicate.
bool satisfies(const Clustering& clustering, std::size_t n_total,
               const ColorTable* colors, const ConstraintSpec& spec);

// Disjoint union of two clusters, sorted ascending; throws on overlap.
std::vector<std::size_t> merged(const std::vector<std::size_t>& a,
                                const std::vector<std::size_t>& b);

} // namespace fairmsr
