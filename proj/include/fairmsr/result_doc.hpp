#pragma once

#include "fairmsr/instance_io.hpp"
#include "fairmsr/oracle.hpp"
#include "fairmsr/solver.hpp"

#include <json.hpp>

#include <string>

namespace fairmsr {

inline constexpr int result_schema = 1;

// Machine-readable solve report: instance fingerprint, parameters,
// clusters with their balls, both costs, the guarantee factor, and search
// diagnostics. include_timing=false omits wall-clock fields so two runs
// of the same solve compare byte-identically.
nlohmann::json make_result_document(const Instance& inst,
                                    const ConstraintSpec& spec,
                                    const Solution& sol,
                                    bool include_timing = true);

nlohmann::json make_oracle_document(const Instance& inst,
                                    const ConstraintSpec& spec, int k,
                                    const OracleResult& res);

// Re-derives both costs from the document's own clusters against the
// instance (exact MEB per cluster, ball radii as written) and demands
// agreement within 1e-9, plus schema, digest, and index sanity. Throws
// std::runtime_error on any mismatch.
void validate_result_document(const nlohmann::json& doc,
                              const Instance& inst);

// Stable two-space serialization with a trailing newline.
std::string dump_document(const nlohmann::json& doc);

} // namespace fairmsr
