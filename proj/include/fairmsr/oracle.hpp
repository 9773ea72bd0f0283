#pragma once

#include "fairmsr/constraints.hpp"
#include "fairmsr/geometry.hpp"

#include <cstdint>
#include <vector>

namespace fairmsr {

struct OracleOptions {
    // Upper bound on the number of label assignments (times outlier
    // subsets) the enumeration may visit; exceeding it throws
    // ResourceError before any work starts.
    std::uint64_t partition_budget = 4000;
};

struct OracleResult {
    bool feasible = false;
    Clustering clustering;             // canonical optimum, global indices
    std::vector<std::size_t> outliers; // excluded points (Outliers only)
    double cost = 0.0;                 // sum of exact cluster MEB radii
    std::uint64_t enumerated = 0;      // complete assignments evaluated
};

// Ground-truth minimum: enumerates every partition of the points into at
// most k nonempty clusters (restricted-growth strings, so each partition
// appears once, in canonical first-touch order), keeping the cheapest one
// that satisfies the constraint. Under Outliers every excluded subset of
// size <= z is enumerated as well, smallest subsets first. Partial sums
// prune assignments that cannot beat the incumbent by more than 1e-9, and
// an incumbent is only replaced when beaten by more than 1e-9, so the
// reported optimum is canonical and deterministic. Requires n <= 62.
OracleResult exact_msr(const PointSet& pts, int k, const ColorTable* colors,
                       const ConstraintSpec& spec,
                       const OracleOptions& opts = {});

} // namespace fairmsr
