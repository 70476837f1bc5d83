#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqm/matrix.hpp"
#include "fqm/report.hpp"

namespace fqm {

/// Unset fields fall back to the suite's own ranges and sample counts.
struct SuiteSpec {
    std::string name;
    std::optional<int> n;
    std::optional<std::int64_t> N;
    std::optional<std::int64_t> p;
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
    bool exhaustive = false;
    double tol = 1e-9;
    std::optional<Backend> backend;
};

const std::vector<std::string>& suite_names();

/// UnknownSuite for names outside suite_names(); TooLarge beyond desk scale
/// (dim > 4096, or more than 10^7 exhaustive pairs).
VerifyReport run_suite(const SuiteSpec& spec);

/// Generator relations of the twisted U-images at N = 2^n: periodicities, the
/// dilatation/translation relations, the twisted Fourier identities and the
/// Q-expansion of U(T).
VerifyReport group_relations_report(int n, std::int64_t p, Backend backend);

/// Exact versus float construction of every matrix family at N = 2^n, all odd p.
VerifyReport backend_agreement_report(int n, double tol = 1e-9);

}  // namespace fqm
