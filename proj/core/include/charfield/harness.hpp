#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "charfield/report.hpp"
#include "charfield/ring.hpp"

namespace charfield {

// Validated configuration for one verification scenario. Unset trials pick
// the scenario default; the CLI fills seed from --seed or CHARFIELD_SEED.
struct ScenarioConfig {
    std::string scenario;
    std::optional<RingSpec> field;
    long long p = 0;
    int m = 0;
    int level = 0;
    long long radius = 3;
    long long denom_bound = 4;
    long long trials = 0; // 0 = scenario default
    std::uint64_t seed = 0;
    int prec = 8;
    std::string out_path; // empty = stdout only
};

// Dispatches to the matching verifier. BadConfig for unknown scenarios or
// invalid parameters; scenario failures are encoded in the Report, not
// thrown. Writes the canonical JSON to out_path when set.
Report run(const ScenarioConfig& config);

// Scenario ids accepted by run().
bool known_scenario(const std::string& id);

} // namespace charfield
