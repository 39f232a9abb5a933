#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace charfield {

// Machine-readable verdict of a verification scenario. Serialization is
// canonical: keys sorted, rationals as "num/den" strings, and runtime_ms
// pinned to 0 in the emitted bytes so identical (config, seed) pairs produce
// byte-identical files; live timing goes to the console instead.
struct Report {
    std::string scenario;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    bool pass = false;
    std::vector<nlohmann::json> witnesses;
    long long trials = 0;
    long long passes = 0;
    long long fails = 0;
    long long runtime_ms = 0; // measured, not serialized

    nlohmann::json to_json() const;
};

// Writes the canonical JSON (newline-terminated) to path. IoError on failure.
void emit(const Report& report, const std::string& path);

} // namespace charfield
