#include "fairmsr/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace fairmsr {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational normalized(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("rational: nonpositive denominator");
    if (num < 0) throw std::invalid_argument("rational: negative value");
    if (num == 0) return {0, 1};
    const std::int64_t g = gcd64(num, den);
    return {num / g, den / g};
}

// Color counts of a cluster, indexed by color id.
std::vector<std::int64_t> color_counts(const std::vector<std::size_t>& cluster,
                                       const ColorTable& colors) {
    std::vector<std::int64_t> counts(colors.labels.size(), 0);
    for (const std::size_t i : cluster) {
        if (i >= colors.color_of.size())
            throw std::invalid_argument("cluster index outside color table");
        ++counts[static_cast<std::size_t>(colors.color_of[i])];
    }
    return counts;
}

const ColorTable& require_colors(const ColorTable* colors,
                                 const ConstraintSpec& spec) {
    if (!colors)
        throw std::invalid_argument("constraint " +
                                    constraint_kind_name(spec.kind) +
                                    " requires point colors");
    return *colors;
}

} // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t pos = 0;
    std::int64_t int_part = 0;
    bool any_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        int_part = int_part * 10 + (text[pos] - '0');
        if (int_part > 1000000000) throw std::invalid_argument("rational too large");
        any_digit = true;
        ++pos;
    }
    std::int64_t num = int_part;
    std::int64_t den = 1;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (den > 100000000000000000LL)
                throw std::invalid_argument("rational literal too long");
            num = num * 10 + (text[pos] - '0');
            den *= 10;
            any_digit = true;
            ++pos;
        }
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = 0;
        bool den_digit = false;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos]))) {
            den = den * 10 + (text[pos] - '0');
            if (den > 1000000000) throw std::invalid_argument("rational too large");
            den_digit = true;
            ++pos;
        }
        if (!den_digit) throw std::invalid_argument("malformed rational literal: " + text);
    }
    if (!any_digit || pos != text.size())
        throw std::invalid_argument("malformed rational literal: " + text);
    return normalized(num, den);
}

std::string constraint_kind_name(ConstraintKind k) {
    switch (k) {
    case ConstraintKind::Unconstrained: return "none";
    case ConstraintKind::LowerBound: return "lower-bound";
    case ConstraintKind::Outliers: return "outliers";
    case ConstraintKind::ExactFairness: return "exact-fairness";
    case ConstraintKind::MinBalance: return "min-balance";
    case ConstraintKind::ExactBalance: return "exact-balance";
    case ConstraintKind::RangeBalance: return "range-balance";
    }
    return "unknown";
}

ConstraintSpec ConstraintSpec::unconstrained() { return {}; }

ConstraintSpec ConstraintSpec::lower_bound_of(std::int64_t l) {
    if (l < 0) throw std::invalid_argument("lower bound must be >= 0");
    ConstraintSpec s;
    s.kind = ConstraintKind::LowerBound;
    s.lower_bound = l;
    return s;
}

ConstraintSpec ConstraintSpec::outliers_of(std::int64_t z) {
    if (z < 0) throw std::invalid_argument("outlier count must be >= 0");
    ConstraintSpec s;
    s.kind = ConstraintKind::Outliers;
    s.max_outliers = z;
    return s;
}

ConstraintSpec ConstraintSpec::exact_fairness() {
    ConstraintSpec s;
    s.kind = ConstraintKind::ExactFairness;
    return s;
}

ConstraintSpec ConstraintSpec::min_balance_of(Rational b) {
    if (b.num > b.den)
        throw std::invalid_argument("min-balance parameter must be in [0,1]");
    ConstraintSpec s;
    s.kind = ConstraintKind::MinBalance;
    s.min_balance = b;
    return s;
}

ConstraintSpec ConstraintSpec::exact_balance() {
    ConstraintSpec s;
    s.kind = ConstraintKind::ExactBalance;
    return s;
}

ConstraintSpec ConstraintSpec::range_balance_of(std::vector<Rational> alpha,
                                                std::vector<Rational> beta) {
    if (alpha.size() != beta.size())
        throw std::invalid_argument("range-balance: alpha/beta size mismatch");
    for (std::size_t h = 0; h < alpha.size(); ++h) {
        if (alpha[h].num > alpha[h].den || beta[h].num > beta[h].den)
            throw std::invalid_argument("range-balance bounds must be in [0,1]");
        if (alpha[h].num * beta[h].den > beta[h].num * alpha[h].den)
            throw std::invalid_argument("range-balance: alpha > beta");
    }
    ConstraintSpec s;
    s.kind = ConstraintKind::RangeBalance;
    s.alpha = std::move(alpha);
    s.beta = std::move(beta);
    return s;
}

bool ConstraintSpec::needs_colors() const {
    switch (kind) {
    case ConstraintKind::ExactFairness:
    case ConstraintKind::MinBalance:
    case ConstraintKind::ExactBalance:
    case ConstraintKind::RangeBalance:
        return true;
    default:
        return false;
    }
}

std::size_t Clustering::covered_count() const {
    std::size_t total = 0;
    for (const auto& c : clusters) total += c.size();
    return total;
}

bool satisfies_cluster(const std::vector<std::size_t>& cluster,
                       std::size_t n_total, const ColorTable* colors,
                       const ConstraintSpec& spec) {
    if (cluster.empty()) return true;
    const auto size = static_cast<std::int64_t>(cluster.size());

    switch (spec.kind) {
    case ConstraintKind::Unconstrained:
    case ConstraintKind::Outliers:
        return true;

    case ConstraintKind::LowerBound:
        return size >= spec.lower_bound;

    case ConstraintKind::ExactFairness: {
        const ColorTable& ct = require_colors(colors, spec);
        if (ct.color_of.size() != n_total)
            throw std::invalid_argument("color table size != point count");
        std::vector<std::int64_t> global(ct.labels.size(), 0);
        for (const int c : ct.color_of) ++global[static_cast<std::size_t>(c)];
        const auto counts = color_counts(cluster, ct);
        const auto n = static_cast<std::int64_t>(n_total);
        for (std::size_t h = 0; h < counts.size(); ++h)
            if (counts[h] * n != global[h] * size) return false;
        return true;
    }

    case ConstraintKind::MinBalance: {
        const ColorTable& ct = require_colors(colors, spec);
        if (ct.num_colors() != 2)
            throw std::invalid_argument("min-balance requires exactly two colors");
        const auto counts = color_counts(cluster, ct);
        // balance = min(a/c, c/a) >= num/den, cross-multiplied; a cluster
        // holding a single color has balance 0.
        const std::int64_t a = counts[0], c = counts[1];
        return a * spec.min_balance.den >= c * spec.min_balance.num &&
               c * spec.min_balance.den >= a * spec.min_balance.num;
    }

    case ConstraintKind::ExactBalance: {
        const ColorTable& ct = require_colors(colors, spec);
        const auto counts = color_counts(cluster, ct);
        for (std::size_t h = 1; h < counts.size(); ++h)
            if (counts[h] != counts[0]) return false;
        return true;
    }

    case ConstraintKind::RangeBalance: {
        const ColorTable& ct = require_colors(colors, spec);
        if (spec.alpha.size() != ct.labels.size())
            throw std::invalid_argument(
                "range-balance table does not match color count");
        const auto counts = color_counts(cluster, ct);
        for (std::size_t h = 0; h < counts.size(); ++h) {
            const Rational& lo = spec.alpha[h];
            const Rational& hi = spec.beta[h];
            if (lo.num * size > counts[h] * lo.den) return false;
            if (counts[h] * hi.den > hi.num * size) return false;
        }
        return true;
    }
    }
    return false;
}

bool satisfies(const Clustering& clustering, std::size_t n_total,
               const ColorTable* colors, const ConstraintSpec& spec) {
    std::vector<char> seen(n_total, 0);
    std::size_t covered = 0;
    for (const auto& cluster : clustering.clusters) {
        for (const std::size_t i : cluster) {
            if (i >= n_total)
                throw std::invalid_argument("cluster index out of range");
            if (seen[i])
                throw std::invalid_argument("clusters overlap at index " +
                                            std::to_string(i));
            seen[i] = 1;
            ++covered;
        }
    }
    if (spec.kind == ConstraintKind::Outliers) {
        if (covered + static_cast<std::size_t>(spec.max_outliers) < n_total)
            return false;
    } else if (covered != n_total) {
        return false;
    }
    for (const auto& cluster : clustering.clusters)
        if (!satisfies_cluster(cluster, n_total, colors, spec)) return false;
    return true;
}

std::string to_string(const ConstraintSpec& spec) {
    switch (spec.kind) {
    case ConstraintKind::Unconstrained:
        return "none";
    case ConstraintKind::LowerBound:
        return "lower-bound:" + std::to_string(spec.lower_bound);
    case ConstraintKind::Outliers:
        return "outliers:" + std::to_string(spec.max_outliers);
    case ConstraintKind::ExactFairness:
        return "exact-fairness";
    case ConstraintKind::MinBalance:
        return "min-balance:" + std::to_string(spec.min_balance.num) + "/" +
               std::to_string(spec.min_balance.den);
    case ConstraintKind::ExactBalance:
        return "exact-balance";
    case ConstraintKind::RangeBalance:
        return "range-balance";
    }
    return "none";
}

std::vector<std::size_t> merged(const std::vector<std::size_t>& a,
                                const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::invalid_argument("merged: clusters overlap");
    return out;
}

} // namespace fairmsr
