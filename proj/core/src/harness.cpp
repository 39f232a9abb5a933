#include "charfield/harness.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "charfield/characterize.hpp"

namespace charfield {

namespace {

const std::set<std::string> kScenarios = {
    "lemma1",  "theorem1", "theorem2", "remark1", "remark2",
    "theorem3", "remark3",  "lemma4",   "lemma5",  "eq12",
};

long long default_trials(const std::string& scenario) {
    if (scenario == "lemma1") return 500;
    if (scenario == "theorem1") return 1000;
    if (scenario == "theorem2") return 500;
    if (scenario == "remark1") return 200;
    if (scenario == "theorem3") return 100;
    if (scenario == "lemma4" || scenario == "lemma5") return 4; // extra seeded samples
    return 0;
}

RingSpec require_field(const ScenarioConfig& config) {
    if (!config.field) fail(Errc::bad_config, config.scenario + " needs --field");
    return *config.field;
}

long long require_p(const ScenarioConfig& config) {
    if (config.p == 0) fail(Errc::bad_config, config.scenario + " needs --p");
    if (!is_prime(config.p)) fail(Errc::bad_config, "--p must be prime");
    return config.p;
}

} // namespace

bool known_scenario(const std::string& id) { return kScenarios.count(id) != 0; }

Report run(const ScenarioConfig& config) {
    if (!known_scenario(config.scenario))
        fail(Errc::bad_config, "unknown scenario '" + config.scenario + "'");
    long long trials = config.trials > 0 ? config.trials : default_trials(config.scenario);

    auto start = std::chrono::steady_clock::now();
    Report report;
    if (config.scenario == "lemma1") {
        report = lemma1_verify(require_field(config), trials, config.seed);
    } else if (config.scenario == "theorem1") {
        report = theorem1_verify(require_field(config), trials, config.seed);
    } else if (config.scenario == "theorem2") {
        report = theorem2_search(config.radius, config.denom_bound, trials, config.seed);
    } else if (config.scenario == "remark1") {
        report = remark1_verify(require_field(config), trials, config.seed);
    } else if (config.scenario == "remark2") {
        report = remark2_counterexample(require_field(config));
    } else if (config.scenario == "theorem3") {
        report = theorem3_verify(require_p(config), config.m,
                                 config.level > 0 ? config.level : 3, trials, config.seed);
    } else if (config.scenario == "remark3") {
        int fallback = std::max(config.m + 2, 2 * config.m + 1);
        report = remark3_verify(config.m, config.level > 0 ? config.level : fallback);
    } else if (config.scenario == "lemma4") {
        report = lemma4_verify(require_p(config), config.level > 0 ? config.level : 5, trials,
                               config.seed);
    } else if (config.scenario == "lemma5") {
        report = lemma5_verify(require_p(config), config.level > 0 ? config.level : 4, trials,
                               config.seed);
    } else if (config.scenario == "eq12") {
        report = eq12_verify(require_p(config), config.level > 0 ? config.level : 3);
    }
    auto elapsed = std::chrono::steady_clock::now() - start;
    report.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    if (!config.out_path.empty()) emit(report, config.out_path);
    return report;
}

} // namespace charfield
