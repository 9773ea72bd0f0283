// Command-line front end: solve, oracle, gen, and bench subcommands over
// the clustering library. Exit codes: 0 success, 1 usage or malformed
// input, 2 proven infeasible, 3 enumeration budget exceeded.

#include "fairmsr/errors.hpp"
#include "fairmsr/generator.hpp"
#include "fairmsr/instance_io.hpp"
#include "fairmsr/kcenter.hpp"
#include "fairmsr/oracle.hpp"
#include "fairmsr/radii.hpp"
#include "fairmsr/result_doc.hpp"
#include "fairmsr/sepbal.hpp"
#include "fairmsr/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace {

using namespace fairmsr;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_resource = 3;

std::int64_t parse_int_arg(const std::string& s, const char* what) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + s +
                                    "'");
    }
    if (used != s.size() || v < 0)
        throw std::invalid_argument(std::string("bad ") + what + " '" + s +
                                    "'");
    return v;
}

// Grammar: none | lower-bound:<l> | outliers:<z> | exact-fairness |
// min-balance:<b> | exact-balance | range-balance:<path>
// range-balance needs the instance colors, so the table is resolved later.
struct ParsedConstraint {
    ConstraintSpec spec;
    std::string range_table_path; // nonempty for range-balance
};

ParsedConstraint parse_constraint_arg(const std::string& text) {
    ParsedConstraint pc;
    if (text == "none") return pc;
    if (text == "exact-fairness") {
        pc.spec = ConstraintSpec::exact_fairness();
        return pc;
    }
    if (text == "exact-balance") {
        pc.spec = ConstraintSpec::exact_balance();
        return pc;
    }
    std::size_t colon = text.find(':');
    if (colon != std::string::npos) {
        std::string head = text.substr(0, colon);
        std::string rest = text.substr(colon + 1);
        if (head == "lower-bound") {
            pc.spec = ConstraintSpec::lower_bound_of(
                parse_int_arg(rest, "lower bound"));
            return pc;
        }
        if (head == "outliers") {
            pc.spec =
                ConstraintSpec::outliers_of(parse_int_arg(rest, "outlier count"));
            return pc;
        }
        if (head == "min-balance") {
            pc.spec = ConstraintSpec::min_balance_of(parse_rational(rest));
            return pc;
        }
        if (head == "range-balance") {
            if (rest.empty())
                throw std::invalid_argument("range-balance needs a table path");
            pc.spec.kind = ConstraintKind::RangeBalance;
            pc.range_table_path = rest;
            return pc;
        }
    }
    throw std::invalid_argument("unknown constraint '" + text + "'");
}

// Table rows "label,alpha,beta"; every instance color must get a row.
ConstraintSpec resolve_range_balance(const std::string& path,
                                     const ColorTable& colors) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open range-balance table '" +
                                    path + "'");
    std::vector<Rational> alpha(colors.labels.size());
    std::vector<Rational> beta(colors.labels.size());
    std::vector<char> have(colors.labels.size(), 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream row(line);
        std::string label, lo, hi;
        if (!std::getline(row, label, ',') || !std::getline(row, lo, ',') ||
            !std::getline(row, hi))
            throw std::invalid_argument(
                "range-balance table line " + std::to_string(line_no) +
                ": expected label,alpha,beta");
        std::size_t id = colors.labels.size();
        for (std::size_t c = 0; c < colors.labels.size(); ++c)
            if (colors.labels[c] == label) {
                id = c;
                break;
            }
        if (id == colors.labels.size())
            throw std::invalid_argument("range-balance table line " +
                                        std::to_string(line_no) +
                                        ": unknown color '" + label + "'");
        if (have[id])
            throw std::invalid_argument("range-balance table line " +
                                        std::to_string(line_no) +
                                        ": duplicate color '" + label + "'");
        have[id] = 1;
        alpha[id] = parse_rational(lo);
        beta[id] = parse_rational(hi);
    }
    for (std::size_t c = 0; c < colors.labels.size(); ++c)
        if (!have[c])
            throw std::invalid_argument("range-balance table misses color '" +
                                        colors.labels[c] + "'");
    return ConstraintSpec::range_balance_of(std::move(alpha), std::move(beta));
}

Instance load_instance(const std::string& path) {
    if (path == "-") return read_instance_csv(std::cin);
    return read_instance_file(path);
}

std::optional<std::uint64_t> budget_from_env() {
    const char* v = std::getenv("FAIR_MSR_BUDGET");
    if (v == nullptr || *v == '\0') return std::nullopt;
    return static_cast<std::uint64_t>(
        parse_int_arg(v, "FAIR_MSR_BUDGET value"));
}

struct OutputFile {
    explicit OutputFile(const std::string& path) {
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file)
                throw std::invalid_argument("cannot open output '" + path +
                                            "'");
        }
    }
    std::ostream& stream() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

void emit_plot_data(const std::string& path, const Instance& inst,
                    const Solution& sol) {
    OutputFile out(path);
    std::vector<long> cluster_of(inst.points.size(), -1);
    for (std::size_t c = 0; c < sol.clustering.clusters.size(); ++c)
        for (std::size_t i : sol.clustering.clusters[c])
            cluster_of[i] = static_cast<long>(c);
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
        auto p = inst.points[i];
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (c) out.stream() << ',';
            out.stream() << p[c];
        }
        out.stream() << ',' << cluster_of[i];
        if (inst.has_colors())
            out.stream() << ','
                         << inst.colors.labels[inst.colors.color_of[i]];
        out.stream() << '\n';
    }
}

// ---- solve ----

struct SolveArgs {
    std::string input;
    int k = 2;
    double epsilon = 0.3;
    std::string constraint = "none";
    std::string mode = "engineering";
    std::string radius_path = "auto";
    int workers = 1;
    std::string output;
    std::string plot_data;
};

int run_solve(const SolveArgs& a) {
    try {
        Instance inst = load_instance(a.input);
        ParsedConstraint pc = parse_constraint_arg(a.constraint);
        if (!pc.range_table_path.empty()) {
            if (!inst.has_colors()) {
                std::cerr << "error: range-balance needs a colored instance\n";
                return exit_usage;
            }
            pc.spec = resolve_range_balance(pc.range_table_path, inst.colors);
        }
        if (pc.spec.needs_colors() && !inst.has_colors()) {
            std::cerr << "error: " << constraint_kind_name(pc.spec.kind)
                      << " needs a colored instance\n";
            return exit_usage;
        }
        SolveOptions opts;
        opts.mode = a.mode == "theoretical" ? SolveMode::theoretical
                                            : SolveMode::engineering;
        if (a.radius_path == "kcenter")
            opts.path = RadiusPath::kcenter;
        else if (a.radius_path == "coreset")
            opts.path = RadiusPath::coreset;
        opts.workers = a.workers;
        if (auto b = budget_from_env()) {
            opts.node_budget = *b;
            opts.subset_budget = *b;
        }
        const ColorTable* colors = inst.has_colors() ? &inst.colors : nullptr;
        Solution sol = solve(inst.points, a.k, a.epsilon, colors, pc.spec, opts);
        OutputFile out(a.output);
        out.stream() << dump_document(
            make_result_document(inst, pc.spec, sol, true));
        if (!a.plot_data.empty()) emit_plot_data(a.plot_data, inst, sol);
        return sol.feasible ? exit_ok : exit_infeasible;
    } catch (const InstanceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

// ---- oracle ----

struct OracleArgs {
    std::string input;
    int k = 2;
    std::string constraint = "none";
    std::string output;
};

int run_oracle(const OracleArgs& a) {
    try {
        Instance inst = load_instance(a.input);
        ParsedConstraint pc = parse_constraint_arg(a.constraint);
        if (!pc.range_table_path.empty()) {
            if (!inst.has_colors()) {
                std::cerr << "error: range-balance needs a colored instance\n";
                return exit_usage;
            }
            pc.spec = resolve_range_balance(pc.range_table_path, inst.colors);
        }
        if (pc.spec.needs_colors() && !inst.has_colors()) {
            std::cerr << "error: " << constraint_kind_name(pc.spec.kind)
                      << " needs a colored instance\n";
            return exit_usage;
        }
        OracleOptions opts;
        if (auto b = budget_from_env()) opts.partition_budget = *b;
        const ColorTable* colors = inst.has_colors() ? &inst.colors : nullptr;
        OracleResult res =
            exact_msr(inst.points, a.k, colors, pc.spec, opts);
        OutputFile out(a.output);
        out.stream() << dump_document(
            make_oracle_document(inst, pc.spec, a.k, res));
        return res.feasible ? exit_ok : exit_infeasible;
    } catch (const InstanceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

// ---- gen ----

struct GenArgs {
    std::size_t n = 20;
    std::size_t d = 2;
    std::size_t k_planted = 2;
    double separation = 3.0;
    double cluster_radius = 1.0;
    int colors = 0;
    bool exact_fair = false;
    std::uint64_t seed = 1;
    bool no_shuffle = false;
    std::string output;
};

int run_gen(const GenArgs& a) {
    try {
        GenOptions opt;
        opt.n = a.n;
        opt.d = a.d;
        opt.k_planted = a.k_planted;
        opt.separation = a.separation;
        opt.cluster_radius = a.cluster_radius;
        opt.colors = a.colors;
        opt.exact_fair = a.exact_fair;
        opt.seed = a.seed;
        opt.shuffle = !a.no_shuffle;
        PlantedInstance planted = generate_planted(opt);
        OutputFile out(a.output);
        write_instance_csv(out.stream(), planted.points,
                           planted.colors.labels.empty() ? nullptr
                                                         : &planted.colors);
        nlohmann::json diag;
        diag["seed"] = opt.seed;
        diag["separation"] = opt.separation;
        nlohmann::json balls = nlohmann::json::array();
        for (const Ball& b : planted.planted_balls) {
            nlohmann::json jb;
            jb["center"] = b.center;
            jb["radius"] = b.radius;
            balls.push_back(jb);
        }
        diag["planted_balls"] = balls;
        diag["planted_clusters"] = planted.planted_clusters;
        diag["digest"] = instance_digest(planted.points,
                                         planted.colors.labels.empty()
                                             ? nullptr
                                             : &planted.colors);
        std::cerr << diag.dump(2) << "\n";
        return exit_ok;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

// ---- bench ----

double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& g, double a, double b) {
    return a + (b - a) * uniform01(g);
}

PointSet random_points(std::mt19937_64& g, std::size_t n, std::size_t d,
                       double lo = 0.0, double hi = 1.0) {
    PointSet pts(d);
    std::vector<double> p(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) p[c] = uniform(g, lo, hi);
        pts.push_back(p);
    }
    return pts;
}

struct BenchArgs {
    std::string suite;
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string output;
};

int bench_ratio_vs_oracle(const BenchArgs& a, std::ostream& out) {
    const int k = 2;
    const double eps = 0.3;
    double bound = guarantee_factor(SolveMode::engineering, eps, k);
    out << "trial\tn\toracle_cost\trefined_cost\tratio\twall_ms\n";
    double max_ratio = 0.0, sum_ratio = 0.0;
    for (std::size_t t = 0; t < a.trials; ++t) {
        std::mt19937_64 g(a.seed + t);
        std::size_t n = 4 + t % 5;
        PointSet pts = random_points(g, n, 2);
        SolveOptions opts;
        opts.workers = a.workers;
        Solution sol = solve(pts, k, eps, nullptr,
                             ConstraintSpec::unconstrained(), opts);
        OracleResult orc = exact_msr(pts, k, nullptr,
                                     ConstraintSpec::unconstrained());
        double ratio = orc.cost > 0 ? sol.refined_cost / orc.cost : 1.0;
        max_ratio = std::max(max_ratio, ratio);
        sum_ratio += ratio;
        char row[160];
        std::snprintf(row, sizeof row, "%zu\t%zu\t%.12g\t%.12g\t%.12g\t%.3f\n",
                      t, n, orc.cost, sol.refined_cost, ratio,
                      sol.diag.wall_ms);
        out << row;
    }
    char sum[160];
    std::snprintf(sum, sizeof sum,
                  "summary\tmax_ratio=%.12g\tmean_ratio=%.12g\tbound=%.12g\n",
                  max_ratio,
                  a.trials ? sum_ratio / static_cast<double>(a.trials) : 0.0,
                  bound);
    out << sum;
    return exit_ok;
}

int bench_lemma_interval(const BenchArgs& a, std::ostream& out) {
    out << "trial\tn\tk\tr_alpha\tr1_star\tlo\thi\twithin\n";
    std::size_t violations = 0;
    for (std::size_t t = 0; t < a.trials; ++t) {
        std::mt19937_64 g(a.seed + t);
        std::size_t n = 4 + t % 6;
        int k = (t % 3 == 2 && n <= 9) ? 3 : 2;
        PointSet pts = random_points(g, n, 2);
        KCenterResult kc = gonzalez(pts, k);
        OracleResult orc = exact_msr(pts, k, nullptr,
                                     ConstraintSpec::unconstrained());
        double r1 = 0.0;
        for (const auto& cl : orc.clustering.clusters)
            r1 = std::max(r1, exact_meb(pts, cl).radius);
        // The r_alpha/2 <= r1* <= 2 k^2 r_alpha box (Gonzalez alpha = 2).
        double lo = kc.value / kc.alpha;
        double hi = 2.0 * static_cast<double>(k) * static_cast<double>(k) *
                    kc.value;
        bool within = r1 >= lo - 1e-12 && r1 <= hi + 1e-12;
        if (!within) ++violations;
        char row[200];
        std::snprintf(row, sizeof row,
                      "%zu\t%zu\t%d\t%.12g\t%.12g\t%.12g\t%.12g\t%d\n", t, n,
                      k, kc.value, r1, lo, hi, within ? 1 : 0);
        out << row;
    }
    out << "summary\tviolations=" << violations << "\n";
    return violations == 0 ? exit_ok : exit_usage;
}

int bench_grid_covering(const BenchArgs& a, std::ostream& out) {
    out << "trial\ta\tb\teps\tr_star\tgrid_ok\trem_ok\n";
    std::size_t violations = 0;
    for (std::size_t t = 0; t < a.trials; ++t) {
        std::mt19937_64 g(a.seed + t);
        double lo = std::exp(uniform(g, std::log(1e-2), std::log(1e2)));
        double hi = lo * std::exp(uniform(g, 0.0, std::log(1e3)));
        double eps = uniform(g, 0.01, 2.0);
        double r_star = uniform(g, lo, hi);
        bool grid_ok = false;
        for (double v : geometric_grid(lo, hi, eps))
            if (v >= r_star && v <= (1.0 + eps) * r_star * (1.0 + 1e-12)) {
                grid_ok = true;
                break;
            }
        // Remaining-radii grid: any balanced radius has an overestimate
        // within factor 1+eps.
        int k = 2 + static_cast<int>(t % 4);
        double r_max = std::exp(uniform(g, std::log(1e-3), std::log(1e3)));
        double eps2 = uniform(g, 0.05, 1.0);
        double r_i = uniform(g, (eps2 / k) * r_max / (1.0 + eps2),
                             r_max / (1.0 + eps2));
        bool rem_ok = false;
        for (double v : remaining_radii_candidates(r_max, k, eps2))
            if (v >= r_i && v <= (1.0 + eps2) * r_i * (1.0 + 1e-12)) {
                rem_ok = true;
                break;
            }
        if (!grid_ok || !rem_ok) ++violations;
        char row[200];
        std::snprintf(row, sizeof row,
                      "%zu\t%.12g\t%.12g\t%.12g\t%.12g\t%d\t%d\n", t, lo, hi,
                      eps, r_star, grid_ok ? 1 : 0, rem_ok ? 1 : 0);
        out << row;
    }
    out << "summary\tviolations=" << violations << "\n";
    return violations == 0 ? exit_ok : exit_usage;
}

int run_bench(const BenchArgs& a) {
    try {
        OutputFile out(a.output);
        if (a.suite == "ratio-vs-oracle")
            return bench_ratio_vs_oracle(a, out.stream());
        if (a.suite == "lemma-interval")
            return bench_lemma_interval(a, out.stream());
        if (a.suite == "grid-covering")
            return bench_grid_covering(a, out.stream());
        std::cerr << "error: unknown suite '" << a.suite << "'\n";
        return exit_usage;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sum-of-radii clustering under mergeable constraints"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "approximate a constrained clustering");
    solve_cmd->add_option("--input", sa.input, "instance CSV ('-' = stdin)")
        ->required();
    solve_cmd->add_option("--k", sa.k, "maximum cluster count")->required();
    solve_cmd->add_option("--epsilon", sa.epsilon, "accuracy in (0, 0.5)")
        ->required();
    solve_cmd->add_option("--constraint", sa.constraint,
                          "none | lower-bound:<l> | outliers:<z> | "
                          "exact-fairness | min-balance:<b> | exact-balance | "
                          "range-balance:<table.csv>");
    solve_cmd->add_option("--mode", sa.mode, "engineering | theoretical")
        ->check(CLI::IsMember({"engineering", "theoretical"}));
    solve_cmd
        ->add_option("--radius-path", sa.radius_path,
                     "auto | kcenter | coreset")
        ->check(CLI::IsMember({"auto", "kcenter", "coreset"}));
    solve_cmd->add_option("--workers", sa.workers, "parallel search workers");
    solve_cmd->add_option("--output", sa.output, "result JSON path");
    solve_cmd->add_option("--emit-plot-data", sa.plot_data,
                          "CSV of points with cluster assignments");

    OracleArgs oa;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "exact optimum by enumeration");
    oracle_cmd->add_option("--input", oa.input, "instance CSV ('-' = stdin)")
        ->required();
    oracle_cmd->add_option("--k", oa.k, "maximum cluster count")->required();
    oracle_cmd->add_option("--constraint", oa.constraint,
                           "constraint (same grammar as solve)");
    oracle_cmd->add_option("--output", oa.output, "result JSON path");

    GenArgs ga;
    CLI::App* gen_cmd =
        app.add_subcommand("gen", "generate a planted instance");
    gen_cmd->add_option("--n", ga.n, "point count");
    gen_cmd->add_option("--d", ga.d, "dimension");
    gen_cmd->add_option("--k-planted", ga.k_planted, "planted cluster count");
    gen_cmd->add_option("--separation", ga.separation,
                        "pairwise MEB separation factor");
    gen_cmd->add_option("--cluster-radius", ga.cluster_radius,
                        "max planted cluster radius");
    gen_cmd->add_option("--colors", ga.colors, "color count (0 = none)");
    gen_cmd->add_flag("--exact-fair", ga.exact_fair,
                      "equal color counts inside every planted cluster");
    gen_cmd->add_option("--seed", ga.seed, "random seed");
    gen_cmd->add_flag("--no-shuffle", ga.no_shuffle,
                      "keep clusters contiguous in the output");
    gen_cmd->add_option("--output", ga.output, "instance CSV path");

    BenchArgs ba;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "empirical audit suites (TSV report)");
    bench_cmd
        ->add_option("--suite", ba.suite,
                     "ratio-vs-oracle | lemma-interval | grid-covering")
        ->required();
    bench_cmd->add_option("--trials", ba.trials, "trial count");
    bench_cmd->add_option("--seed", ba.seed, "base seed");
    bench_cmd->add_option("--workers", ba.workers, "solver workers");
    bench_cmd->add_option("--output", ba.output, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (solve_cmd->parsed()) return run_solve(sa);
    if (oracle_cmd->parsed()) return run_oracle(oa);
    if (gen_cmd->parsed()) return run_gen(ga);
    if (bench_cmd->parsed()) return run_bench(ba);
    return exit_usage;
}
