#include "fairmsr/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace fairmsr {

namespace {

// Explicit draws on top of mt19937_64, so generated instances do not
// depend on the standard library's distribution implementations.
double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& g, double a, double b) {
    return a + (b - a) * uniform01(g);
}

std::size_t randint(std::mt19937_64& g, std::size_t m) {
    return std::min(m - 1, static_cast<std::size_t>(uniform01(g) *
                                                    static_cast<double>(m)));
}

class Gauss {
public:
    double next(std::mt19937_64& g) {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform01(g);
        double u2 = uniform01(g);
        double m = std::sqrt(-2.0 * std::log(u1));
        spare_ = m * std::sin(2.0 * std::acos(-1.0) * u2);
        have_ = true;
        return m * std::cos(2.0 * std::acos(-1.0) * u2);
    }

private:
    bool have_ = false;
    double spare_ = 0.0;
};

} // namespace

PlantedInstance generate_planted(const GenOptions& opt) {
    if (opt.n == 0) throw std::invalid_argument("n must be positive");
    if (opt.d == 0) throw std::invalid_argument("d must be positive");
    if (opt.k_planted == 0)
        throw std::invalid_argument("k_planted must be positive");
    if (opt.k_planted > opt.n)
        throw std::invalid_argument("k_planted exceeds n");
    if (!(opt.cluster_radius > 0.0))
        throw std::invalid_argument("cluster_radius must be positive");
    if (!(opt.separation >= 0.0))
        throw std::invalid_argument("separation must be nonnegative");
    if (opt.colors < 0) throw std::invalid_argument("colors must be >= 0");
    if (opt.exact_fair && opt.colors < 1)
        throw std::invalid_argument("exact_fair needs colors >= 1");

    const std::size_t k = opt.k_planted;
    std::vector<std::size_t> sizes(k);
    if (opt.exact_fair) {
        std::size_t c = static_cast<std::size_t>(opt.colors);
        if (opt.n % c != 0)
            throw std::invalid_argument(
                "exact_fair needs n divisible by the color count");
        std::size_t units = opt.n / c;
        if (units < k)
            throw std::invalid_argument(
                "exact_fair needs at least colors points per cluster");
        std::size_t base = units / k, rem = units % k;
        for (std::size_t i = 0; i < k; ++i)
            sizes[i] = (base + (i < rem ? 1 : 0)) * c;
    } else {
        std::size_t base = opt.n / k, rem = opt.n % k;
        for (std::size_t i = 0; i < k; ++i)
            sizes[i] = base + (i < rem ? 1 : 0);
    }

    std::mt19937_64 rng(opt.seed);
    Gauss gauss;
    const double R = opt.cluster_radius;
    const double gap = 2.0 * R * (opt.separation + 1.0) * 1.05;

    // Rejection-sample centers at pairwise distance >= gap, growing the
    // box deterministically whenever a round fails.
    std::vector<std::vector<double>> centers;
    double box = gap * static_cast<double>(k);
    for (;;) {
        centers.clear();
        bool ok = true;
        for (std::size_t c = 0; c < k && ok; ++c) {
            bool placed = false;
            for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
                std::vector<double> cand(opt.d);
                for (std::size_t t = 0; t < opt.d; ++t)
                    cand[t] = uniform(rng, 0.0, box);
                placed = true;
                for (const auto& prev : centers) {
                    double sq = 0.0;
                    for (std::size_t t = 0; t < opt.d; ++t) {
                        double diff = cand[t] - prev[t];
                        sq += diff * diff;
                    }
                    if (sq < gap * gap) {
                        placed = false;
                        break;
                    }
                }
                if (placed) centers.push_back(std::move(cand));
            }
            ok = placed;
        }
        if (ok) break;
        box *= 1.5;
    }

    struct Record {
        std::vector<double> coords;
        int color = -1;
        std::size_t cluster = 0;
    };
    std::vector<Record> records;
    records.reserve(opt.n);
    const double sigma = R / (2.0 * std::sqrt(static_cast<double>(opt.d)));
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t t = 0; t < sizes[c]; ++t) {
            std::vector<double> off(opt.d);
            for (int attempt = 0;; ++attempt) {
                double sq = 0.0;
                for (std::size_t q = 0; q < opt.d; ++q) {
                    off[q] = sigma * gauss.next(rng);
                    sq += off[q] * off[q];
                }
                if (sq <= R * R) break;
                if (attempt >= 64) {
                    double scale = 0.99 * R / std::sqrt(sq);
                    for (double& v : off) v *= scale;
                    break;
                }
            }
            Record rec;
            rec.coords.resize(opt.d);
            for (std::size_t q = 0; q < opt.d; ++q)
                rec.coords[q] = centers[c][q] + off[q];
            rec.cluster = c;
            if (opt.colors > 0)
                rec.color = opt.exact_fair
                                ? static_cast<int>(t) % opt.colors
                                : static_cast<int>(records.size()) % opt.colors;
            records.push_back(std::move(rec));
        }
    }

    if (opt.shuffle) {
        for (std::size_t i = records.size(); i > 1; --i)
            std::swap(records[i - 1], records[randint(rng, i)]);
    }

    PlantedInstance out;
    out.points = PointSet(opt.d);
    out.planted_clusters.assign(k, {});
    if (opt.colors > 0) {
        out.colors.labels.resize(opt.colors);
        for (int c = 0; c < opt.colors; ++c)
            out.colors.labels[c] = "c" + std::to_string(c);
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        out.points.push_back(records[i].coords);
        out.planted_clusters[records[i].cluster].push_back(i);
        if (opt.colors > 0) out.colors.color_of.push_back(records[i].color);
    }
    for (const auto& cl : out.planted_clusters)
        out.planted_balls.push_back(exact_meb(out.points, cl));
    return out;
}

} // namespace fairmsr
