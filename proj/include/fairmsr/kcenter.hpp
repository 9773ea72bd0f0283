#pragma once

#include "fairmsr/constraints.hpp"
#include "fairmsr/geometry.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fairmsr {

struct KCenterResult {
    std::vector<std::size_t> centers; // indices into the point set
    double value = 0.0;               // max over points of min center distance
    double alpha = 1.0;               // approximation factor of the routine
};

// Farthest-first traversal k-center, started from the first input point,
// lowest index winning ties. 2-approximation; centers are input points.
KCenterResult gonzalez(const PointSet& pts, int k);

// Registry of constrained k-center routines, keyed by constraint family.
// The solver consults this to anchor its radius grids; families without a
// registered routine make it fall back to coreset candidates.
using ConstrainedKCenterFn = std::function<std::optional<KCenterResult>(
    const PointSet&, int, const ColorTable*, const ConstraintSpec&)>;

void register_constrained_kcenter(ConstraintKind kind, ConstrainedKCenterFn fn);
void unregister_constrained_kcenter(ConstraintKind kind);

// Unconstrained dispatches to gonzalez; other kinds to their registered
// routine, or nullopt when none exists.
std::optional<KCenterResult> constrained_kcenter(const PointSet& pts, int k,
                                                 const ColorTable* colors,
                                                 const ConstraintSpec& spec);

} // namespace fairmsr
