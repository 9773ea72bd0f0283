#pragma once

#include "fairmsr/constraints.hpp"
#include "fairmsr/geometry.hpp"

#include <cstdint>
#include <vector>

namespace fairmsr {

struct GenOptions {
    std::size_t n = 20;
    std::size_t d = 2;
    std::size_t k_planted = 2;
    // Pairwise guarantee on the planted cluster MEBs: centers end up
    // farther apart than separation * (r_i + r_j).
    double separation = 3.0;
    double cluster_radius = 1.0;
    int colors = 0;          // 0 = uncolored instance
    bool exact_fair = false; // equal color counts inside every cluster
    std::uint64_t seed = 1;
    bool shuffle = true; // interleave clusters in the output order
};

struct PlantedInstance {
    PointSet points;
    ColorTable colors; // empty labels when uncolored
    std::vector<std::vector<std::size_t>> planted_clusters;
    std::vector<Ball> planted_balls; // exact MEB of each planted cluster
};

// Deterministic synthetic instance: k_planted well-separated Gaussian
// blobs of radius <= cluster_radius. exact_fair requires n divisible by
// colors * k-compatible unit counts and yields clusters whose color
// histogram matches the global one exactly. Throws std::invalid_argument
// on unsatisfiable shape requests.
PlantedInstance generate_planted(const GenOptions& opt);

} // namespace fairmsr
