#pragma once

// JSON encodings. Instances are {"n", "m", "values"}, allocations are
// {"bundles"}; exact rationals are written as "p/q" strings.

#include <string>

#include <json.hpp>

#include "propm/cpsets.hpp"
#include "propm/fairness.hpp"
#include "propm/leximin.hpp"
#include "propm/oracle.hpp"
#include "propm/solver.hpp"

namespace propm::io {

using Json = nlohmann::ordered_json;

/// Malformed documents raise InputError.
Instance instance_from_json(const Json& doc);
Json to_json(const Instance& inst);

Allocation allocation_from_json(const Json& doc);
Json to_json(const Allocation& allocation);

Json to_json(const Bundle& bundle);
Json to_json(const FairnessReport& report);
Json to_json(const CpLadder& ladder);
Json to_json(const Certificate& certificate);
Certificate certificate_from_json(const Json& doc);
Json to_json(const ExistenceResult& result);
Json to_json(const AuditReport& report);
Json to_json(const AdjustedProfile& profile);
Json to_json(const EnvyGraph& graph);

/// Parses text; syntax errors raise InputError.
Json parse(const std::string& text);
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& doc);

}  // namespace propm::io
