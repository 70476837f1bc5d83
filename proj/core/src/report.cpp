#include "fqm/report.hpp"

namespace fqm {

nlohmann::json to_json(const VerifyReport& report, bool include_timing) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : report.failures) {
        failures.push_back({{"identity", f.identity}, {"inputs", f.inputs}, {"deviation", f.deviation}});
    }
    nlohmann::json j = {{"suite", report.suite},
                        {"params", report.params},
                        {"checks_run", report.checks_run},
                        {"failure_count", report.failure_count},
                        {"failures", std::move(failures)},
                        {"max_abs_deviation", report.max_abs_deviation},
                        {"passed", report.passed()},
                        {"findings", report.findings}};
    if (include_timing) j["runtime_ms"] = report.runtime_ms;
    return j;
}

}  // namespace fqm
