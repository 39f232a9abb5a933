#include "charfield/report.hpp"

#include <fstream>

#include "charfield/errors.hpp"

namespace charfield {

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["params"] = params;
    j["seed"] = seed;
    j["pass"] = pass;
    j["witnesses"] = witnesses;
    j["counts"] = {{"trials", trials}, {"passes", passes}, {"fails", fails}};
    // Pinned so that identical (config, seed) runs emit identical bytes.
    j["runtime_ms"] = 0;
    return j;
}

void emit(const Report& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
    out << report.to_json().dump(2) << "\n";
    if (!out) fail(Errc::io_error, "write to '" + path + "' failed");
}

} // namespace charfield
