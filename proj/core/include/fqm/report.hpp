#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fqm {

struct Failure {
    std::string identity;
    std::string inputs;
    double deviation;
};

/// Outcome of a batch of identity checks. passed <=> failure_count == 0.
struct VerifyReport {
    static constexpr std::size_t kMaxStoredFailures = 1000;

    std::string suite;
    nlohmann::json params = nlohmann::json::object();
    std::int64_t checks_run = 0;
    std::int64_t failure_count = 0;
    std::vector<Failure> failures;  // first kMaxStoredFailures, in check order
    double max_abs_deviation = 0.0;
    std::int64_t runtime_ms = 0;
    /// Tables and witnesses a suite wants to surface (phase tables, defect pairs).
    nlohmann::json findings = nlohmann::json::object();

    bool passed() const noexcept { return failure_count == 0; }

    void record(bool ok, const std::string& identity, const std::string& inputs, double deviation) {
        ++checks_run;
        if (deviation > max_abs_deviation) max_abs_deviation = deviation;
        if (ok) return;
        ++failure_count;
        if (failures.size() < kMaxStoredFailures) failures.push_back({identity, inputs, deviation});
    }

    /// Folds another report's counts and failures in, preserving order.
    void merge(const VerifyReport& other) {
        checks_run += other.checks_run;
        failure_count += other.failure_count;
        if (other.max_abs_deviation > max_abs_deviation) max_abs_deviation = other.max_abs_deviation;
        for (const auto& f : other.failures) {
            if (failures.size() >= kMaxStoredFailures) break;
            failures.push_back(f);
        }
    }
};

/// Stable JSON; runtime_ms is emitted only when include_timing is set so that
/// reports stay byte-identical for fixed inputs.
nlohmann::json to_json(const VerifyReport& report, bool include_timing = false);

}  // namespace fqm
