#include "fairmsr/sepbal.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>

namespace fairmsr {

bool is_separated(const std::vector<Ball>& balls, double gamma) {
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            double d = distance(balls[i].center, balls[j].center);
            if (d <= gamma * (balls[i].radius + balls[j].radius)) return false;
        }
    return true;
}

bool is_balanced(const std::vector<Ball>& balls, double eps, std::size_t k) {
    if (balls.empty() || k == 0) return true;
    double mx = 0.0;
    for (const Ball& b : balls) mx = std::max(mx, b.radius);
    double thr = (eps / static_cast<double>(k)) * mx;
    for (const Ball& b : balls)
        if (b.radius < thr * (1.0 - 1e-12)) return false;
    return true;
}

namespace {

std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

} // namespace

SepBalResult separate_and_balance(const Covering& cov, const PointSet& pts) {
    if (cov.balls.empty()) throw std::invalid_argument("empty covering");
    if (!(cov.gamma >= 1.0))
        throw std::invalid_argument("gamma must be >= 1");
    if (!(cov.eps_bal > 0.0 && cov.eps_bal <= 1.0))
        throw std::invalid_argument("balance parameter must lie in (0, 1]");
    for (const Ball& b : cov.balls)
        if (b.center.size() != pts.dim())
            throw std::invalid_argument("ball dimension mismatch");

    const std::size_t k0 = cov.balls.size();
    SepBalResult res;
    res.balls = cov.balls;
    res.groups.resize(k0);
    for (std::size_t i = 0; i < k0; ++i) res.groups[i] = {i};

    for (;;) {
        if (res.phases > static_cast<int>(k0) + 1)
            throw std::logic_error("separation/balance did not converge");
        ++res.phases;

        // Merge chains of gamma-touching balls.
        std::vector<std::size_t> parent(res.balls.size());
        std::iota(parent.begin(), parent.end(), 0);
        for (std::size_t i = 0; i < res.balls.size(); ++i)
            for (std::size_t j = i + 1; j < res.balls.size(); ++j) {
                double d =
                    distance(res.balls[i].center, res.balls[j].center);
                if (d <= cov.gamma *
                             (res.balls[i].radius + res.balls[j].radius)) {
                    std::size_t ri = uf_find(parent, i);
                    std::size_t rj = uf_find(parent, j);
                    if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
                }
            }
        std::vector<std::vector<std::size_t>> comps;
        {
            std::vector<std::size_t> comp_of(res.balls.size(), npos);
            for (std::size_t i = 0; i < res.balls.size(); ++i) {
                std::size_t r = uf_find(parent, i);
                if (comp_of[r] == npos) {
                    comp_of[r] = comps.size();
                    comps.emplace_back();
                }
                comps[comp_of[r]].push_back(i);
            }
        }
        if (comps.size() < res.balls.size()) {
            std::vector<Ball> merged_balls;
            std::vector<std::vector<std::size_t>> merged_groups;
            for (const auto& comp : comps) {
                if (comp.size() == 1) {
                    merged_balls.push_back(std::move(res.balls[comp[0]]));
                    merged_groups.push_back(std::move(res.groups[comp[0]]));
                    continue;
                }
                std::vector<std::size_t> content;
                for (std::size_t i = 0; i < pts.size(); ++i)
                    for (std::size_t m : comp)
                        if (ball_contains(res.balls[m], pts[i])) {
                            content.push_back(i);
                            break;
                        }
                Ball nb;
                if (!content.empty()) {
                    nb = exact_meb(pts, content);
                } else {
                    // Chain holds no points; anchor on its centers.
                    PointSet centers(pts.dim());
                    for (std::size_t m : comp)
                        centers.push_back(res.balls[m].center);
                    nb = exact_meb(centers);
                }
                for (std::size_t m : comp)
                    nb.radius = std::max(
                        nb.radius, distance(nb.center, res.balls[m].center) +
                                       res.balls[m].radius);
                std::vector<std::size_t> grp;
                for (std::size_t m : comp)
                    grp.insert(grp.end(), res.groups[m].begin(),
                               res.groups[m].end());
                std::sort(grp.begin(), grp.end());
                merged_balls.push_back(std::move(nb));
                merged_groups.push_back(std::move(grp));
            }
            res.balls = std::move(merged_balls);
            res.groups = std::move(merged_groups);
        }

        // Raise small radii to the balance threshold.
        double mx = 0.0;
        for (const Ball& b : res.balls) mx = std::max(mx, b.radius);
        double thr = (cov.eps_bal / static_cast<double>(k0)) * mx;
        for (Ball& b : res.balls)
            if (b.radius < thr) b.radius = thr;

        // Raising radii may re-create touching pairs; go again if so.
        if (is_separated(res.balls, cov.gamma)) return res;
    }
}

GuessString record_guess_string(const PointSet& pts,
                                const std::vector<Ball>& covering,
                                const std::vector<double>& radii, double eps) {
    if (covering.empty()) throw std::invalid_argument("empty covering");
    if (radii.size() != covering.size())
        throw std::invalid_argument("need one radius per covering ball");
    SelectionParams params;
    params.k = static_cast<int>(covering.size());
    params.eps = eps;
    params.radii = radii;
    GuessString u;
    for (std::size_t step = 0; step <= pts.size(); ++step) {
        SelectionOutcome out = selection(pts, params, u);
        if (out.next_frontier == npos) return u;
        std::span<const double> p = pts[out.next_frontier];
        int hit = -1;
        for (std::size_t j = 0; j < covering.size(); ++j) {
            if (ball_contains(covering[j], p)) {
                if (hit >= 0)
                    throw std::invalid_argument(
                        "covering balls overlap at a frontier point");
                hit = static_cast<int>(j);
            }
        }
        if (hit < 0)
            throw std::invalid_argument(
                "frontier point escapes the covering");
        u.push_back(hit + 1);
    }
    throw std::logic_error("guess string exceeded the point count");
}

} // namespace fairmsr
