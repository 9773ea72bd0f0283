#include "fairmsr/oracle.hpp"

#include "fairmsr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fairmsr {

namespace {

// Number of partitions of an m-set into at most k nonempty parts, as a
// double (overflow to inf simply fails the budget check).
double partitions_at_most(std::size_t m, int k) {
    // Stirling second kind, S[j] = S(m, j) built row by row.
    std::vector<double> S(static_cast<std::size_t>(k) + 1, 0.0);
    S[0] = 1.0; // S(0,0)
    for (std::size_t row = 1; row <= m; ++row) {
        for (std::size_t j = std::min<std::size_t>(row, k); j >= 1; --j)
            S[j] = static_cast<double>(j) * S[j] + S[j - 1];
        S[0] = 0.0;
    }
    double total = 0.0;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j)
        total += S[j];
    return total;
}

double binomial(std::size_t n, std::size_t r) {
    if (r > n) return 0.0;
    double v = 1.0;
    for (std::size_t i = 0; i < r; ++i)
        v = v * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return v;
}

struct Enumerator {
    const PointSet& pts;
    int k;
    const ColorTable* colors;
    const ConstraintSpec& spec;

    std::vector<std::size_t> active; // points being partitioned
    std::vector<int> label;          // per active position
    std::vector<std::uint64_t> part_mask;
    std::vector<double> part_r;
    double partial = 0.0;

    std::unordered_map<std::uint64_t, double> memo;
    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::vector<std::size_t>> best_clusters;
    std::vector<std::size_t> best_excluded;
    const std::vector<std::size_t>* excluded = nullptr;
    std::uint64_t enumerated = 0;

    Enumerator(const PointSet& p, int kk, const ColorTable* col,
               const ConstraintSpec& sp)
        : pts(p), k(kk), colors(col), spec(sp) {}

    double meb_radius(std::uint64_t mask) {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
        double r = exact_meb(pts, idx).radius;
        memo.emplace(mask, r);
        return r;
    }

    void evaluate(int used) {
        ++enumerated;
        Clustering cl;
        cl.clusters.assign(used, {});
        for (std::size_t pos = 0; pos < active.size(); ++pos)
            cl.clusters[label[pos]].push_back(active[pos]);
        if (!satisfies(cl, pts.size(), colors, spec)) return;
        if (!(partial < best - 1e-9)) return;
        found = true;
        best = partial;
        best_clusters = cl.clusters;
        best_excluded = *excluded;
    }

    void descend(std::size_t pos, int used) {
        if (pos == active.size()) {
            evaluate(used);
            return;
        }
        std::uint64_t bit = std::uint64_t{1} << active[pos];
        int top = std::min(used, k - 1);
        for (int j = 0; j <= top; ++j) {
            std::uint64_t old_mask = j < used ? part_mask[j] : 0;
            double old_r = j < used ? part_r[j] : 0.0;
            double new_r = meb_radius(old_mask | bit);
            double next_partial = partial - old_r + new_r;
            // A prefix already at incumbent cost can never replace it.
            if (found && !(next_partial < best - 1e-9)) continue;
            if (j == used) {
                part_mask.push_back(old_mask | bit);
                part_r.push_back(new_r);
            } else {
                part_mask[j] = old_mask | bit;
                part_r[j] = new_r;
            }
            label[pos] = j;
            partial = next_partial;
            descend(pos + 1, std::max(used, j + 1));
            partial = partial - new_r + old_r;
            if (j == used) {
                part_mask.pop_back();
                part_r.pop_back();
            } else {
                part_mask[j] = old_mask;
                part_r[j] = old_r;
            }
        }
    }

    void run(const std::vector<std::size_t>& excl) {
        excluded = &excl;
        active.clear();
        std::size_t e = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (e < excl.size() && excl[e] == i) {
                ++e;
                continue;
            }
            active.push_back(i);
        }
        label.assign(active.size(), 0);
        part_mask.clear();
        part_r.clear();
        partial = 0.0;
        descend(0, 0);
    }
};

} // namespace

OracleResult exact_msr(const PointSet& pts, int k, const ColorTable* colors,
                       const ConstraintSpec& spec, const OracleOptions& opts) {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::size_t n = pts.size();
    if (n > 62)
        throw std::invalid_argument("oracle handles at most 62 points");
    if (spec.needs_colors() &&
        (colors == nullptr || colors->size() != n))
        throw std::invalid_argument(constraint_kind_name(spec.kind) +
                                    " needs one color per point");

    std::size_t z = 0;
    if (spec.kind == ConstraintKind::Outliers)
        z = std::min<std::size_t>(static_cast<std::size_t>(spec.max_outliers),
                                  n);
    double work = 0.0;
    for (std::size_t m = 0; m <= z; ++m)
        work += binomial(n, m) * partitions_at_most(n - m, k);
    if (!(work <= static_cast<double>(opts.partition_budget)))
        throw ResourceError(
            "oracle would enumerate about " +
            std::to_string(static_cast<std::uint64_t>(
                std::min(work, 1.8e18))) +
            " assignments, over the budget of " +
            std::to_string(opts.partition_budget));

    Enumerator en(pts, k, colors, spec);
    std::vector<std::size_t> excl;
    for (std::size_t m = 0; m <= z; ++m) {
        excl.resize(m);
        for (std::size_t i = 0; i < m; ++i) excl[i] = i;
        for (;;) {
            en.run(excl);
            if (m == 0) break;
            // Next lexicographic m-subset of {0..n-1}.
            std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(m) - 1;
            while (pos >= 0 &&
                   excl[pos] == n - m + static_cast<std::size_t>(pos))
                --pos;
            if (pos < 0) break;
            ++excl[pos];
            for (std::size_t q = static_cast<std::size_t>(pos) + 1; q < m; ++q)
                excl[q] = excl[q - 1] + 1;
        }
    }

    OracleResult res;
    res.enumerated = en.enumerated;
    if (!en.found) return res;
    res.feasible = true;
    res.clustering.clusters = std::move(en.best_clusters);
    res.outliers = std::move(en.best_excluded);
    res.cost = en.best;
    return res;
}

} // namespace fairmsr
