#include "fairmsr/result_doc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fairmsr {

namespace {

nlohmann::json instance_block(const Instance& inst) {
    nlohmann::json j;
    j["digest"] = instance_digest(inst.points,
                                  inst.has_colors() ? &inst.colors : nullptr);
    j["n"] = inst.points.size();
    j["d"] = inst.points.dim();
    if (inst.has_colors())
        j["colors"] = inst.colors.labels;
    else
        j["colors"] = nullptr;
    return j;
}

nlohmann::json cluster_block(const std::vector<std::size_t>& indices,
                             const Ball& ball) {
    nlohmann::json j;
    j["indices"] = indices;
    j["center"] = ball.center;
    j["radius"] = ball.radius;
    return j;
}

} // namespace

nlohmann::json make_result_document(const Instance& inst,
                                    const ConstraintSpec& spec,
                                    const Solution& sol,
                                    bool include_timing) {
    nlohmann::json doc;
    doc["schema"] = result_schema;
    doc["instance"] = instance_block(inst);

    nlohmann::json params;
    params["k"] = sol.k;
    params["epsilon"] = sol.eps_input;
    params["epsilon_working"] = sol.eps_work;
    params["mode"] =
        sol.mode == SolveMode::engineering ? "engineering" : "theoretical";
    params["constraint"] = to_string(spec);
    params["radius_source"] = sol.diag.source == RadiusSource::kcenter_grid
                                  ? "kcenter-grid"
                                  : "coreset";
    params["r_max"] = sol.r_max;
    params["radii"] = sol.radii;
    params["guess_string"] = sol.guess;
    doc["parameters"] = params;

    nlohmann::json result;
    result["feasible"] = sol.feasible;
    result["reported_cost"] = sol.reported_cost;
    result["refined_cost"] = sol.refined_cost;
    result["guarantee_factor"] = sol.guarantee;
    result["from_baseline"] = sol.from_baseline;
    nlohmann::json clusters = nlohmann::json::array();
    for (std::size_t c = 0; c < sol.clustering.clusters.size(); ++c)
        clusters.push_back(
            cluster_block(sol.clustering.clusters[c], sol.balls[c]));
    result["clusters"] = clusters;
    result["outliers"] = sol.outliers;
    doc["result"] = result;

    nlohmann::json diag;
    diag["r_max_candidates"] = sol.diag.r_max_candidates;
    diag["tuple_space"] = sol.diag.tuple_space;
    diag["jobs"] = sol.diag.jobs;
    diag["nodes"] = sol.diag.nodes;
    diag["leaves"] = sol.diag.leaves;
    diag["valid_candidates"] = sol.diag.valid_candidates;
    if (include_timing) diag["wall_ms"] = sol.diag.wall_ms;
    doc["diagnostics"] = diag;
    return doc;
}

nlohmann::json make_oracle_document(const Instance& inst,
                                    const ConstraintSpec& spec, int k,
                                    const OracleResult& res) {
    nlohmann::json doc;
    doc["schema"] = result_schema;
    doc["instance"] = instance_block(inst);

    nlohmann::json params;
    params["k"] = k;
    params["constraint"] = to_string(spec);
    params["oracle"] = true;
    doc["parameters"] = params;

    nlohmann::json result;
    result["feasible"] = res.feasible;
    result["cost"] = res.cost;
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& cl : res.clustering.clusters)
        clusters.push_back(cluster_block(cl, exact_meb(inst.points, cl)));
    result["clusters"] = clusters;
    result["outliers"] = res.outliers;
    result["enumerated"] = res.enumerated;
    doc["result"] = result;
    return doc;
}

void validate_result_document(const nlohmann::json& doc,
                              const Instance& inst) {
    auto fail = [](const std::string& what) {
        throw std::runtime_error("result document invalid: " + what);
    };
    if (!doc.contains("schema") || doc["schema"] != result_schema)
        fail("unknown schema");
    std::string digest = instance_digest(
        inst.points, inst.has_colors() ? &inst.colors : nullptr);
    if (doc["instance"]["digest"].get<std::string>() != digest)
        fail("instance digest mismatch");
    if (doc["instance"]["n"].get<std::size_t>() != inst.points.size())
        fail("point count mismatch");

    const nlohmann::json& result = doc.at("result");
    bool oracle = doc.at("parameters").contains("oracle");
    double reported = 0.0;
    double refined = 0.0;
    std::vector<char> seen(inst.points.size(), 0);
    for (const auto& cl : result.at("clusters")) {
        std::vector<std::size_t> indices =
            cl.at("indices").get<std::vector<std::size_t>>();
        if (indices.empty()) fail("empty cluster");
        for (std::size_t i : indices) {
            if (i >= inst.points.size()) fail("cluster index out of range");
            if (seen[i]) fail("clusters overlap");
            seen[i] = 1;
        }
        Ball b;
        b.center = cl.at("center").get<std::vector<double>>();
        b.radius = cl.at("radius").get<double>();
        for (std::size_t i : indices)
            if (!ball_contains(b, inst.points[i]))
                fail("cluster escapes its ball");
        reported += b.radius;
        refined += exact_meb(inst.points, indices).radius;
    }
    for (std::size_t i : result.at("outliers").get<std::vector<std::size_t>>()) {
        if (i >= inst.points.size()) fail("outlier index out of range");
        if (seen[i]) fail("outlier also clustered");
        seen[i] = 1;
    }
    if (result.at("feasible").get<bool>()) {
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) fail("point neither clustered nor an outlier");
    }
    auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a),
                                                   std::abs(b)});
    };
    if (oracle) {
        if (!close(result.at("cost").get<double>(), refined))
            fail("cost disagrees with its clusters");
    } else {
        if (!close(result.at("reported_cost").get<double>(), reported))
            fail("reported cost disagrees with its balls");
        if (!close(result.at("refined_cost").get<double>(), refined))
            fail("refined cost disagrees with its clusters");
        if (result.at("refined_cost").get<double>() >
            result.at("reported_cost").get<double>() * (1.0 + 1e-9) + 1e-12)
            fail("refined cost exceeds reported cost");
    }
}

std::string dump_document(const nlohmann::json& doc) {
    return doc.dump(2) + "\n";
}

} // namespace fairmsr
