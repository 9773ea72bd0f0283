#include "fairmsr/solver.hpp"

#include "fairmsr/errors.hpp"
#include "fairmsr/kcenter.hpp"
#include "fairmsr/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace fairmsr {

double gamma_for(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    return 1.0 + eps + 2.0 * std::sqrt(eps);
}

std::size_t cluster_cap(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    double v = std::ceil(32.0 * (1.0 + eps) / (eps * eps * eps));
    if (v >= 9e18) return std::numeric_limits<std::size_t>::max();
    return static_cast<std::size_t>(v);
}

double eps_working(SolveMode mode, double eps, int k) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (mode == SolveMode::engineering) return eps;
    double t = eps / (12.0 * k);
    return t * t;
}

double guarantee_factor(SolveMode mode, double eps, int k) {
    if (mode == SolveMode::theoretical) return 1.0 + eps;
    return std::pow(1.0 + eps, k) * std::pow(gamma_for(eps), k - 1);
}

namespace {

std::vector<double> copy_point(std::span<const double> p) {
    return std::vector<double>(p.begin(), p.end());
}

// Fixed per-run inputs of the selection loop.
struct StepCtx {
    const PointSet* pts = nullptr;
    std::size_t n = 0;
    std::size_t d = 0;
    int k = 1;
    double eps = 0.3;
    double gamma = 1.0;
    std::vector<double> radii;
    std::vector<double> excl_sq; // squared singleton exclusion radii
};

StepCtx make_step_ctx(const PointSet& pts, int k, double eps,
                      const std::vector<double>& radii) {
    StepCtx c;
    c.pts = &pts;
    c.n = pts.size();
    c.d = pts.dim();
    c.k = k;
    c.eps = eps;
    c.gamma = gamma_for(eps);
    c.radii = radii;
    c.excl_sq.resize(radii.size());
    double f = eps / (1.0 + eps);
    for (std::size_t j = 0; j < radii.size(); ++j) {
        double e = f * radii[j];
        c.excl_sq[j] = e * e;
    }
    return c;
}

struct SelState {
    std::vector<std::vector<std::size_t>> S;
    std::vector<Ball> balls;
    std::vector<char> has_ball;
    std::vector<std::size_t> single; // point index while |S_j| == 1, else npos
    std::vector<char> covered;
    std::size_t covered_count = 0;
    std::vector<double> meb_r; // tracing only: last exact MEB radius
};

SelState initial_state(const StepCtx& c, bool tracing) {
    SelState st;
    st.S.resize(c.k);
    st.balls.resize(c.k);
    st.has_ball.assign(c.k, 0);
    st.single.assign(c.k, npos);
    st.covered.assign(c.n, 0);
    if (tracing) st.meb_r.assign(c.k, 0.0);
    return st;
}

// First point in input order outside every ball and every singleton
// exclusion ball; npos when no such point remains.
std::size_t frontier_point(const StepCtx& c, const SelState& st) {
    const double* base = c.pts->data();
    for (std::size_t i = 0; i < c.n; ++i) {
        if (st.covered[i]) continue;
        const double* pi = base + i * c.d;
        bool hidden = false;
        for (int j = 0; j < c.k; ++j) {
            std::size_t s = st.single[j];
            if (s == npos) continue;
            if (kernels::sqdist(pi, base + s * c.d, c.d) <= c.excl_sq[j]) {
                hidden = true;
                break;
            }
        }
        if (!hidden) return i;
    }
    return npos;
}

// Feeds point p to cluster j (0-based) and refreshes that cluster's ball.
void apply_step(const StepCtx& c, SelState& st, int j, std::size_t p,
                SelectionTrace* trace) {
    auto& Sj = st.S[j];
    if (Sj.empty()) {
        Sj.push_back(p);
        st.single[j] = p;
        if (trace) st.meb_r[j] = 0.0;
        return;
    }
    double old_r = trace ? st.meb_r[j] : 0.0;
    Sj.push_back(p);
    st.single[j] = npos;
    Ball ab = approx_meb(*c.pts, Sj, c.eps);
    st.balls[j] = Ball{std::move(ab.center), c.gamma * ab.radius};
    st.has_ball[j] = 1;
    const Ball& b = st.balls[j];
    for (std::size_t i = 0; i < c.n; ++i) {
        if (st.covered[i]) continue;
        if (ball_contains(b, (*c.pts)[i])) {
            st.covered[i] = 1;
            ++st.covered_count;
        }
    }
    if (trace) {
        Ball ex = exact_meb(*c.pts, Sj);
        trace->growth.push_back({j + 1, old_r, ex.radius});
        st.meb_r[j] = ex.radius;
    }
}

struct Finalized {
    std::vector<Ball> balls;     // one per used cluster, ascending cluster id
    std::vector<int> cluster_of; // 0-based cluster id per ball
};

// Terminal singleton handling: each singleton keeps a ball at its point,
// grown to reach every leftover uncovered point hiding inside its
// exclusion ball (lowest singleton wins a contested point).
Finalized finalize_balls(const StepCtx& c, const SelState& st) {
    const double* base = c.pts->data();
    std::vector<double> rep_r(c.k, 0.0);
    std::vector<char> is_single_pt(c.n, 0);
    for (int j = 0; j < c.k; ++j)
        if (st.single[j] != npos) is_single_pt[st.single[j]] = 1;
    for (std::size_t i = 0; i < c.n; ++i) {
        if (st.covered[i] || is_single_pt[i]) continue;
        for (int j = 0; j < c.k; ++j) {
            std::size_t s = st.single[j];
            if (s == npos) continue;
            double dsq = kernels::sqdist(base + i * c.d, base + s * c.d, c.d);
            if (dsq <= c.excl_sq[j]) {
                rep_r[j] = std::max(rep_r[j], std::sqrt(dsq));
                break;
            }
        }
    }
    Finalized f;
    for (int j = 0; j < c.k; ++j) {
        if (st.S[j].empty()) continue;
        if (st.has_ball[j])
            f.balls.push_back(st.balls[j]);
        else
            f.balls.push_back(Ball{copy_point((*c.pts)[st.single[j]]), rep_r[j]});
        f.cluster_of.push_back(j);
    }
    return f;
}

} // namespace

SelectionOutcome selection(const PointSet& pts, const SelectionParams& params,
                           const GuessString& u, SelectionTrace* trace) {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    if (params.k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(params.eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (params.radii.size() != static_cast<std::size_t>(params.k))
        throw std::invalid_argument("need one radius estimate per cluster");
    for (double r : params.radii)
        if (!(r > 0.0))
            throw std::invalid_argument("radius estimates must be positive");
    for (int sym : u)
        if (sym < 1 || sym > params.k)
            throw std::invalid_argument("guess symbol out of range");

    StepCtx ctx = make_step_ctx(pts, params.k, params.eps, params.radii);
    SelState st = initial_state(ctx, trace != nullptr);
    std::size_t consumed = 0;
    std::size_t nf = npos;
    bool stopped = false;
    for (int sym : u) {
        std::size_t p = frontier_point(ctx, st);
        if (p == npos) {
            stopped = true;
            break;
        }
        apply_step(ctx, st, sym - 1, p, trace);
        ++consumed;
    }
    if (!stopped) nf = frontier_point(ctx, st);

    Finalized f = finalize_balls(ctx, st);
    SelectionOutcome out;
    out.S = st.S;
    out.consumed = consumed;
    out.next_frontier = nf;
    out.used.assign(params.k, 0);
    out.balls.assign(params.k, Ball{});
    for (std::size_t b = 0; b < f.balls.size(); ++b) {
        out.balls[f.cluster_of[b]] = f.balls[b];
        out.used[f.cluster_of[b]] = 1;
    }
    return out;
}

PartitionResult balls_to_partition(const PointSet& pts,
                                   const std::vector<Ball>& balls,
                                   double rel_tol) {
    PartitionResult pr;
    std::vector<std::vector<std::size_t>> buckets(balls.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t hit = npos;
        for (std::size_t b = 0; b < balls.size(); ++b) {
            if (ball_contains(balls[b], pts[i], rel_tol)) {
                hit = b;
                break;
            }
        }
        if (hit == npos)
            pr.uncovered.push_back(i);
        else
            buckets[hit].push_back(i);
    }
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        if (buckets[b].empty()) continue;
        pr.clustering.clusters.push_back(std::move(buckets[b]));
        pr.ball_index.push_back(b);
    }
    return pr;
}

namespace {

struct JobSpec {
    std::size_t rmax_index = 0;
    double rmax_value = 0.0;
    std::vector<double> radii; // k values, radii[0] == rmax_value
};

struct CandidateSol {
    double refined = 0.0;
    double reported = 0.0;
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<Ball> balls;
    std::vector<std::size_t> uncovered;
    GuessString guess;
};

struct SearchShared {
    const PointSet* pts = nullptr;
    int k = 1;
    double eps = 0.3;
    std::size_t cap = 0;
    const ColorTable* colors = nullptr;
    const ConstraintSpec* spec = nullptr;
    std::uint64_t node_budget = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> leaves{0};
    std::atomic<std::uint64_t> valid{0};
    std::atomic<bool> abort{false};
};

// Depth-first walk of the guess-string prefix tree for one fixed radius
// vector. Children share the node's frontier point; symmetric branches
// over equal-radius unused clusters are canonicalized away.
class JobRunner {
public:
    JobRunner(SearchShared& sh, const JobSpec& job)
        : sh_(sh), job_(job),
          ctx_(make_step_ctx(*sh.pts, sh.k, sh.eps, job.radii)) {}

    std::optional<CandidateSol> run() {
        struct Frame {
            SelState st;
            std::size_t p = npos;
            int next_j = 0;
        };
        std::vector<Frame> stack;
        stack.push_back({initial_state(ctx_, false), npos, 0});
        GuessString path;
        enter(stack.back());
        while (!stack.empty()) {
            if (sh_.abort.load(std::memory_order_relaxed)) return std::nullopt;
            Frame& top = stack.back();
            int j = next_allowed(top.st, top.next_j);
            if (top.p == npos || j >= ctx_.k) {
                stack.pop_back();
                if (!path.empty()) path.pop_back();
                continue;
            }
            top.next_j = j + 1;
            Frame child;
            child.st = top.st;
            apply_step(ctx_, child.st, j, top.p, nullptr);
            path.push_back(j + 1);
            // Frame reference invalidated past this point.
            stack.push_back(std::move(child));
            enter(stack.back());
            if (stack.back().p == npos) leaf(stack.back().st, path);
        }
        return std::move(best_);
    }

private:
    void enter(auto& frame) {
        std::uint64_t used = sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (used > sh_.node_budget)
            throw ResourceError("selection-step budget exhausted (" +
                                std::to_string(sh_.node_budget) +
                                " nodes); raise the node budget");
        frame.p = frontier_point(ctx_, frame.st);
    }

    int next_allowed(const SelState& st, int from) const {
        for (int j = from; j < ctx_.k; ++j) {
            if (st.S[j].size() >= sh_.cap) continue;
            if (st.S[j].empty()) {
                bool canonical = true;
                for (int j2 = 0; j2 < j; ++j2) {
                    if (st.S[j2].empty() && ctx_.radii[j2] == ctx_.radii[j]) {
                        canonical = false;
                        break;
                    }
                }
                if (!canonical) continue;
            }
            return j;
        }
        return ctx_.k;
    }

    void leaf(const SelState& st, const GuessString& path) {
        sh_.leaves.fetch_add(1, std::memory_order_relaxed);
        Finalized f = finalize_balls(ctx_, st);
        PartitionResult pr = balls_to_partition(*sh_.pts, f.balls);
        const ConstraintSpec& spec = *sh_.spec;
        if (spec.kind == ConstraintKind::Outliers) {
            if (pr.uncovered.size() >
                static_cast<std::size_t>(spec.max_outliers))
                return;
        } else if (!pr.uncovered.empty()) {
            return;
        }
        if (!satisfies(pr.clustering, ctx_.n, sh_.colors, spec)) return;
        sh_.valid.fetch_add(1, std::memory_order_relaxed);
        double refined = 0.0;
        for (const auto& cl : pr.clustering.clusters)
            refined += exact_meb(*sh_.pts, cl).radius;
        if (best_ && !(refined < best_->refined)) return;
        CandidateSol cand;
        cand.refined = refined;
        cand.clusters = pr.clustering.clusters;
        cand.uncovered = pr.uncovered;
        cand.guess = path;
        for (std::size_t c = 0; c < pr.ball_index.size(); ++c) {
            cand.balls.push_back(f.balls[pr.ball_index[c]]);
            cand.reported += f.balls[pr.ball_index[c]].radius;
        }
        best_ = std::move(cand);
    }

    SearchShared& sh_;
    const JobSpec& job_;
    StepCtx ctx_;
    std::optional<CandidateSol> best_;
};

// ---- behavior classes over radius candidates ----
//
// A radius estimate only enters the algorithm through its singleton
// exclusion radius eps/(1+eps)*r, and the run only probes that value
// against pairwise point distances. Radii whose exclusion radius lands
// between the same two consecutive pairwise distances are therefore
// interchangeable, and one representative per class (the grid-order
// first) reproduces the full enumeration's output exactly.

struct ClassedValue {
    std::size_t index = 0; // position in the full grid / value list
    double value = 0.0;
    int cls = 0;
};

struct ClassCtx {
    std::vector<double> sorted_d; // ascending pairwise distances
    double excl_factor = 0.0;     // eps/(1+eps)
    bool usable = false;          // false when n is too large to matrix
    int next_free = 0;            // fallback class ids when !usable
};

ClassCtx make_class_ctx(const PointSet& pts, double eps) {
    ClassCtx cc;
    cc.excl_factor = eps / (1.0 + eps);
    std::size_t n = pts.size();
    if (n > 2048) return cc;
    cc.usable = true;
    cc.sorted_d.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            cc.sorted_d.push_back(std::sqrt(
                kernels::sqdist(pts.row(i), pts.row(j), pts.dim())));
    std::sort(cc.sorted_d.begin(), cc.sorted_d.end());
    return cc;
}

int radius_class(const ClassCtx& cc, double r) {
    double e = cc.excl_factor * r;
    return static_cast<int>(std::upper_bound(cc.sorted_d.begin(),
                                             cc.sorted_d.end(), e) -
                            cc.sorted_d.begin());
}

constexpr std::size_t grid_materialize_limit = 200000;

std::vector<ClassedValue> grid_representatives(const GeometricGridSpec& g,
                                               ClassCtx& cc) {
    std::vector<ClassedValue> out;
    if (g.count == 0) return out;
    if (!cc.usable) {
        if (g.count > grid_materialize_limit)
            throw ResourceError("radius grid too large to enumerate at this "
                                "point count");
        for (std::size_t i = 0; i < g.count; ++i)
            out.push_back({i, g.value(i), cc.next_free++});
        return out;
    }
    if (g.count <= 2 * (cc.sorted_d.size() + 2)) {
        int prev = -1;
        for (std::size_t i = 0; i < g.count; ++i) {
            double v = g.value(i);
            int c = radius_class(cc, v);
            if (out.empty() || c != prev) out.push_back({i, v, c});
            prev = c;
        }
        return out;
    }
    // Large grid: visit only exponents adjacent to class boundaries. The
    // boundary for a distance t is the least i with value(i) >= t*(1+eps)/eps,
    // located by logarithm and then confirmed by the exact class check.
    std::vector<std::size_t> cand = {0, g.count - 1};
    double lr = std::log(g.ratio);
    double prev_t = -1.0;
    for (double t : cc.sorted_d) {
        if (t == prev_t) continue;
        prev_t = t;
        if (!(t > 0.0)) continue;
        double x = std::log((t / cc.excl_factor) / g.anchor) / lr;
        if (x > static_cast<double>(g.count) + 2.0) continue;
        long base = static_cast<long>(std::ceil(x));
        for (long off = -1; off <= 1; ++off) {
            long e = base + off;
            if (e >= 0 && static_cast<std::size_t>(e) < g.count)
                cand.push_back(static_cast<std::size_t>(e));
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    int prev = -1;
    for (std::size_t i : cand) {
        double v = g.value(i);
        int c = radius_class(cc, v);
        if (out.empty() || c != prev) out.push_back({i, v, c});
        prev = c;
    }
    return out;
}

std::vector<ClassedValue> list_representatives(const std::vector<double>& vals,
                                               ClassCtx& cc) {
    std::vector<ClassedValue> out;
    int prev = -1;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        int c = cc.usable ? radius_class(cc, vals[i]) : cc.next_free++;
        if (out.empty() || c != prev) out.push_back({i, vals[i], c});
        prev = c;
    }
    return out;
}

bool advance_odometer(std::vector<std::size_t>& dig, std::size_t base) {
    for (std::size_t pos = dig.size(); pos-- > 0;) {
        if (++dig[pos] < base) return true;
        dig[pos] = 0;
    }
    return false;
}

// Jobs for one largest-radius candidate: every behavior-distinct tuple of
// remaining radii. The dedupe key carries the class of each coordinate
// plus the pattern of exact value coincidences, since equal radii also
// canonicalize the search tree.
void append_jobs(std::vector<JobSpec>& jobs,
                 std::set<std::vector<int>>& seen, const ClassedValue& rmax,
                 int k, double eps, ClassCtx& cc, std::size_t job_limit) {
    std::vector<ClassedValue> rreps;
    if (k >= 2) {
        GeometricGridSpec rem = remaining_radii_grid_spec(rmax.value, k, eps);
        rreps = grid_representatives(rem, cc);
    }
    std::vector<std::size_t> dig(static_cast<std::size_t>(k) - 1, 0);
    for (;;) {
        JobSpec job;
        job.rmax_index = rmax.index;
        job.rmax_value = rmax.value;
        job.radii.resize(k);
        job.radii[0] = rmax.value;
        std::vector<int> key;
        key.reserve(2 * k);
        key.push_back(rmax.cls);
        for (std::size_t t = 0; t < dig.size(); ++t) {
            const ClassedValue& cv = rreps[dig[t]];
            job.radii[t + 1] = cv.value;
            key.push_back(cv.cls);
        }
        for (int j = 0; j < k; ++j) {
            int first = j;
            for (int j2 = 0; j2 < j; ++j2)
                if (job.radii[j2] == job.radii[j]) {
                    first = j2;
                    break;
                }
            key.push_back(first);
        }
        if (seen.insert(std::move(key)).second) {
            jobs.push_back(std::move(job));
            if (jobs.size() > job_limit)
                throw ResourceError("radius-guess job list exceeds " +
                                    std::to_string(job_limit) +
                                    " behavior classes");
        }
        if (dig.empty() || !advance_odometer(dig, rreps.size())) break;
    }
}

struct MergeState {
    std::optional<CandidateSol> best;
    bool from_baseline = false;
    std::size_t winner_job = npos;
};

void run_jobs(SearchShared& sh, const std::vector<JobSpec>& jobs, int workers,
              std::vector<std::optional<CandidateSol>>& results) {
    results.assign(jobs.size(), std::nullopt);
    if (jobs.empty()) return;
    std::atomic<std::size_t> next{0};
    std::mutex err_mx;
    std::exception_ptr err;
    auto body = [&]() {
        for (;;) {
            if (sh.abort.load(std::memory_order_relaxed)) return;
            std::size_t ji = next.fetch_add(1);
            if (ji >= jobs.size()) return;
            try {
                JobRunner runner(sh, jobs[ji]);
                results[ji] = runner.run();
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lk(err_mx);
                    if (!err) err = std::current_exception();
                }
                sh.abort.store(true);
                return;
            }
        }
    };
    int nw = std::clamp(workers, 1, 256);
    nw = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(nw), jobs.size()));
    if (nw <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
}

void check_inputs(const PointSet& pts, int k, const ColorTable* colors,
                  const ConstraintSpec& spec) {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (spec.needs_colors()) {
        if (colors == nullptr || colors->size() != pts.size())
            throw std::invalid_argument(
                constraint_kind_name(spec.kind) +
                " needs one color per point");
    } else if (colors != nullptr && !colors->color_of.empty() &&
               colors->size() != pts.size()) {
        throw std::invalid_argument("color table size mismatch");
    }
}

std::optional<CandidateSol> baseline_candidate(const PointSet& pts,
                                               const ColorTable* colors,
                                               const ConstraintSpec& spec) {
    Clustering all;
    all.clusters.emplace_back(pts.size());
    auto& c0 = all.clusters[0];
    for (std::size_t i = 0; i < pts.size(); ++i) c0[i] = i;
    if (!satisfies(all, pts.size(), colors, spec)) return std::nullopt;
    Ball m = exact_meb(pts);
    CandidateSol cand;
    cand.refined = m.radius;
    cand.reported = m.radius;
    cand.clusters = all.clusters;
    cand.balls = {std::move(m)};
    return cand;
}

Solution assemble(int k, double eps_input,
                  double eps_work, SolveMode mode, SearchShared& sh,
                  const std::vector<JobSpec>& jobs,
                  std::vector<std::optional<CandidateSol>>& results,
                  std::optional<CandidateSol> baseline,
                  SearchDiagnostics diag) {
    MergeState ms;
    if (baseline) {
        ms.best = std::move(baseline);
        ms.from_baseline = true;
    }
    for (std::size_t ji = 0; ji < results.size(); ++ji) {
        if (!results[ji]) continue;
        if (!ms.best || results[ji]->refined < ms.best->refined) {
            ms.best = std::move(results[ji]);
            ms.from_baseline = false;
            ms.winner_job = ji;
        }
    }
    diag.nodes = sh.nodes.load();
    diag.leaves = sh.leaves.load();
    diag.valid_candidates = sh.valid.load() + (ms.from_baseline ? 1 : 0);

    Solution sol;
    sol.k = k;
    sol.eps_input = eps_input;
    sol.eps_work = eps_work;
    sol.mode = mode;
    sol.guarantee = guarantee_factor(mode, eps_input, k);
    sol.diag = diag;
    if (!ms.best) return sol; // infeasible: nothing valid anywhere
    sol.feasible = true;
    CandidateSol& w = *ms.best;
    sol.clustering.clusters = std::move(w.clusters);
    sol.balls = std::move(w.balls);
    sol.outliers = std::move(w.uncovered);
    sol.reported_cost = w.reported;
    sol.refined_cost = w.refined;
    sol.from_baseline = ms.from_baseline;
    if (!ms.from_baseline) {
        const JobSpec& job = jobs[ms.winner_job];
        sol.r_max = job.rmax_value;
        sol.radii = job.radii;
        sol.guess = std::move(w.guess);
    }
    return sol;
}

double to_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

std::uint64_t saturating_u64(double v) {
    if (v >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
    if (v <= 0.0) return 0;
    return static_cast<std::uint64_t>(v);
}

constexpr std::size_t default_job_limit = 2'000'000;

Solution search_candidates(const PointSet& pts, int k, double eps_input,
                           double eps_work, SolveMode mode,
                           const ColorTable* colors, const ConstraintSpec& spec,
                           const SolveOptions& opts,
                           const std::vector<ClassedValue>& rmax_reps,
                           SearchDiagnostics diag,
                           std::chrono::steady_clock::time_point t0,
                           ClassCtx& cc) {
    std::vector<JobSpec> jobs;
    std::set<std::vector<int>> seen;
    for (const ClassedValue& rv : rmax_reps)
        append_jobs(jobs, seen, rv, k, eps_work, cc, default_job_limit);
    diag.jobs = jobs.size();

    SearchShared sh;
    sh.pts = &pts;
    sh.k = k;
    sh.eps = eps_work;
    sh.cap = cluster_cap(eps_work);
    sh.colors = colors;
    sh.spec = &spec;
    sh.node_budget = opts.node_budget;

    std::vector<std::optional<CandidateSol>> results;
    run_jobs(sh, jobs, opts.workers, results);

    Solution sol = assemble(k, eps_input, eps_work, mode, sh, jobs,
                            results, baseline_candidate(pts, colors, spec),
                            diag);
    sol.diag.wall_ms = to_ms(t0);
    return sol;
}

} // namespace

Solution clustering_search(const PointSet& pts, int k, double eps,
                           double r_max, const ColorTable* colors,
                           const ConstraintSpec& spec,
                           const SolveOptions& opts) {
    check_inputs(pts, k, colors, spec);
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    auto t0 = std::chrono::steady_clock::now();
    ClassCtx cc = make_class_ctx(pts, eps);
    std::vector<ClassedValue> rmax_reps = {
        {0, r_max, cc.usable ? radius_class(cc, r_max) : cc.next_free++}};
    SearchDiagnostics diag;
    diag.source = RadiusSource::kcenter_grid;
    diag.r_max_candidates = 1;
    diag.tuple_space =
        k >= 2 ? saturating_u64(std::pow(
                     static_cast<double>(
                         remaining_radii_grid_spec(r_max, k, eps).count),
                     k - 1))
               : 1;
    return search_candidates(pts, k, eps, eps, SolveMode::engineering, colors,
                             spec, opts, rmax_reps, diag, t0, cc);
}

Solution solve(const PointSet& pts, int k, double eps,
               const ColorTable* colors, const ConstraintSpec& spec,
               const SolveOptions& opts) {
    check_inputs(pts, k, colors, spec);
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("eps must lie in (0, 0.5)");
    auto t0 = std::chrono::steady_clock::now();
    double eps_work = eps_working(opts.mode, eps, k);

    // Degenerate geometry: at most k distinct sites cost nothing.
    KCenterResult gz = gonzalez(pts, k);
    if (gz.value <= 0.0) {
        std::vector<std::vector<std::size_t>> sites;
        std::vector<std::size_t> site_of;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::size_t hit = npos;
            for (std::size_t s = 0; s < sites.size(); ++s) {
                if (kernels::sqdist(pts.row(i), pts.row(sites[s][0]),
                                    pts.dim()) == 0.0) {
                    hit = s;
                    break;
                }
            }
            if (hit == npos) {
                sites.push_back({i});
            } else {
                sites[hit].push_back(i);
            }
        }
        Clustering sc;
        sc.clusters = sites;
        if (satisfies(sc, pts.size(), colors, spec)) {
            Solution sol;
            sol.feasible = true;
            sol.clustering = std::move(sc);
            for (const auto& cl : sol.clustering.clusters)
                sol.balls.push_back(Ball{copy_point(pts[cl[0]]), 0.0});
            sol.k = k;
            sol.eps_input = eps;
            sol.eps_work = eps_work;
            sol.mode = opts.mode;
            sol.guarantee = guarantee_factor(opts.mode, eps, k);
            sol.diag.wall_ms = to_ms(t0);
            return sol;
        }
    }

    ClassCtx cc = make_class_ctx(pts, eps_work);
    SearchDiagnostics diag;
    std::vector<ClassedValue> rmax_reps;

    bool want_grid = opts.path != RadiusPath::coreset && gz.value > 0.0;
    std::optional<KCenterResult> kc;
    if (want_grid) {
        kc = constrained_kcenter(pts, k, colors, spec);
        if (opts.path == RadiusPath::kcenter && !kc)
            throw std::invalid_argument(
                "no constrained k-center routine registered for " +
                constraint_kind_name(spec.kind) +
                "; use the coreset radius path");
    }
    if (kc && kc->value > 0.0) {
        GeometricGridSpec grid =
            largest_radius_grid_spec(kc->value, kc->alpha, 2.0, k, eps_work);
        diag.source = RadiusSource::kcenter_grid;
        diag.r_max_candidates = grid.count;
        rmax_reps = grid_representatives(grid, cc);
    } else {
        RadiusCandidates rc =
            coreset_radius_candidates(pts, eps_work, opts.subset_budget);
        std::vector<double> vals;
        for (double v : rc.values)
            if (v > 0.0) vals.push_back(v);
        diag.source = RadiusSource::coreset;
        diag.r_max_candidates = vals.size();
        rmax_reps = list_representatives(vals, cc);
    }
    if (k >= 2 && !rmax_reps.empty()) {
        // Tuple-grid cardinality is identical across candidates.
        double m = static_cast<double>(
            remaining_radii_grid_spec(rmax_reps[0].value, k, eps_work).count);
        diag.tuple_space = saturating_u64(
            static_cast<double>(diag.r_max_candidates) * std::pow(m, k - 1));
    } else {
        diag.tuple_space = diag.r_max_candidates;
    }
    return search_candidates(pts, k, eps, eps_work, opts.mode, colors, spec,
                             opts, rmax_reps, diag, t0, cc);
}

} // namespace fairmsr
