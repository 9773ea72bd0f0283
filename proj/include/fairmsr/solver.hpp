#pragma once

#include "fairmsr/constraints.hpp"
#include "fairmsr/geometry.hpp"
#include "fairmsr/radii.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace fairmsr {

// Cluster symbols are 1-based: u = (1,1,2) feeds the first two selected
// points to cluster 1 and the third to cluster 2.
using GuessString = std::vector<int>;

enum class SolveMode { engineering, theoretical };
enum class RadiusPath { automatic, kcenter, coreset };

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Ball enlargement factor 1 + eps + 2*sqrt(eps).
double gamma_for(double eps);

// Per-cluster search cap ceil(32*(1+eps)/eps^3).
std::size_t cluster_cap(double eps);

// Working accuracy: engineering mode runs on eps as given; theoretical
// mode substitutes (eps/(12k))^2, which makes the end-to-end factor
// collapse below 1+eps.
double eps_working(SolveMode mode, double eps, int k);

// Reported approximation factor for a solve at the given mode.
double guarantee_factor(SolveMode mode, double eps, int k);

// ---- selection ----

struct SelectionParams {
    int k = 1;
    double eps = 0.3;
    std::vector<double> radii; // k radius estimates, strictly positive
};

struct GrowthEvent {
    int cluster = 0;        // 1-based
    double old_radius = 0.0; // exact MEB radius before the new point
    double new_radius = 0.0; // and after
};

// Test instrument: exact-MEB growth per ball recompute.
struct SelectionTrace {
    std::vector<GrowthEvent> growth;
};

struct SelectionOutcome {
    std::vector<std::vector<std::size_t>> S; // selected points per cluster
    std::vector<Ball> balls;                 // defined where used[j]
    std::vector<char> used;
    std::size_t consumed = 0;      // symbols actually read from u
    std::size_t next_frontier = npos; // next pick if u had more symbols
};

// One pass of the guided point-selection loop: repeatedly picks the
// first point (input order) outside every computed ball and every
// singleton exclusion ball of radius eps/(1+eps)*radii[j], assigns it to
// the cluster named by the next symbol of u, and re-derives that
// cluster's ball as the gamma-enlarged (1+eps)-approximate MEB once it
// holds two points. Terminal singletons keep zero-radius balls, except
// that leftover points hidden inside a singleton's exclusion ball are
// attached to the lowest such singleton, whose ball grows to the max
// assigned distance.
SelectionOutcome selection(const PointSet& pts, const SelectionParams& params,
                           const GuessString& u,
                           SelectionTrace* trace = nullptr);

// ---- partition derivation ----

struct PartitionResult {
    Clustering clustering;              // nonempty clusters only
    std::vector<std::size_t> ball_index; // per cluster: index into `balls`
    std::vector<std::size_t> uncovered;  // points in no ball
};

// Assigns every point to the lowest-index ball containing it
// (ball_contains at rel_tol); empty clusters are dropped.
PartitionResult balls_to_partition(const PointSet& pts,
                                   const std::vector<Ball>& balls,
                                   double rel_tol = tol_geo);

// ---- search ----

struct SearchDiagnostics {
    RadiusSource source = RadiusSource::kcenter_grid;
    std::size_t r_max_candidates = 0; // candidate largest radii considered
    std::size_t tuple_space = 0;      // full tuple-grid cardinality (summed)
    std::size_t jobs = 0;             // behavior-distinct jobs actually run
    std::size_t nodes = 0;            // selection steps explored
    std::size_t leaves = 0;           // completed selection runs
    std::size_t valid_candidates = 0; // leaves passing validity + constraint
    double wall_ms = 0.0;
};

struct Solution {
    bool feasible = false;
    Clustering clustering;   // nonempty clusters
    std::vector<Ball> balls; // aligned with clustering.clusters
    std::vector<std::size_t> outliers;
    double reported_cost = 0.0; // sum of ball radii
    double refined_cost = 0.0;  // sum of exact cluster MEB radii

    int k = 0;
    double eps_input = 0.0;
    double eps_work = 0.0;
    SolveMode mode = SolveMode::engineering;
    double guarantee = 0.0;
    double r_max = 0.0;         // 0 when the baseline won
    std::vector<double> radii;  // winning radius guesses (k values)
    GuessString guess;          // winning guess string
    bool from_baseline = false;

    SearchDiagnostics diag;
};

struct SolveOptions {
    SolveMode mode = SolveMode::engineering;
    RadiusPath path = RadiusPath::automatic;
    int workers = 1;
    std::size_t subset_budget = 10'000'000; // coreset subset enumeration cap
    std::size_t node_budget = 500'000'000;  // selection-step cap per solve
};

// Full search for one fixed largest radius: every tuple of remaining
// radii from the geometric grid times every guess string (explored as a
// pruned DFS), seeded with the single-cluster baseline.
Solution clustering_search(const PointSet& pts, int k, double eps,
                           double r_max, const ColorTable* colors,
                           const ConstraintSpec& spec,
                           const SolveOptions& opts = {});

// End-to-end solve: picks the working accuracy by mode, derives largest-
// radius candidates (constrained k-center grid when such a routine
// exists, coreset subsets otherwise), searches all candidates, and
// returns the cheapest valid solution by refined cost. feasible == false
// marks a proven-empty search (no valid clustering at all).
// Requires 0 < eps < 0.5.
Solution solve(const PointSet& pts, int k, double eps,
               const ColorTable* colors, const ConstraintSpec& spec,
               const SolveOptions& opts = {});

} // namespace fairmsr
