#pragma once

#include "fairmsr/geometry.hpp"
#include "fairmsr/solver.hpp"

#include <cstddef>
#include <vector>

namespace fairmsr {

// A set of balls covering a point set, carrying the separation factor and
// balance parameter it is meant to satisfy.
struct Covering {
    std::vector<Ball> balls;
    double gamma = 1.0;   // >= 1
    double eps_bal = 0.3; // in (0, 1]
};

// True iff the gamma-enlarged balls are pairwise disjoint:
// dist(c_i, c_j) > gamma * (r_i + r_j) for all pairs.
bool is_separated(const std::vector<Ball>& balls, double gamma);

// True iff every radius is at least (eps/k) times the largest.
bool is_balanced(const std::vector<Ball>& balls, double eps, std::size_t k);

struct SepBalResult {
    std::vector<Ball> balls;
    // Which input balls each output ball absorbed, ascending.
    std::vector<std::vector<std::size_t>> groups;
    int phases = 0; // merge/raise rounds; at most the input ball count
};

// Alternates two repairs until both properties hold: chains of balls
// whose gamma-enlargements touch are merged (the merged ball is the exact
// MEB of the chain's point content, grown to contain every member ball),
// and radii below (eps/k) of the maximum are raised to exactly that
// threshold, where k is the input ball count. Each merge round reduces
// the ball count, so at most k rounds run. Total radius grows by at most
// gamma per merge round and (1+eps) per raise round.
SepBalResult separate_and_balance(const Covering& cov, const PointSet& pts);

// Replays the point-selection loop against a disjoint covering: at each
// step the frontier point determines its unique containing ball, whose
// index (1-based) becomes the next symbol. Throws std::invalid_argument
// if a frontier point lies in zero or in several covering balls.
GuessString record_guess_string(const PointSet& pts,
                                const std::vector<Ball>& covering,
                                const std::vector<double>& radii, double eps);

} // namespace fairmsr
