#include <doctest.h>

#include "fqm/harness.hpp"

using namespace fqm;

namespace {

SuiteSpec make(std::string name) {
    SuiteSpec s;
    s.name = std::move(name);
    return s;
}

ErrorCode code_of(const SuiteSpec& spec) {
    try {
        (void)run_suite(spec);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected fqm::Error");
    return ErrorCode::Unreachable;
}

}  // namespace

TEST_CASE("suite registry") {
    const auto& names = suite_names();
    for (const char* n : {"heisenberg", "cocycle-odd", "cocycle-twisted", "metaplectic", "homomorphism", "decomposition",
                          "weil-odd", "quadratic-module", "feichtinger-defect"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK(code_of(make("no-such-suite")) == ErrorCode::UnknownSuite);
}

TEST_CASE("homomorphism, N = 4 exhaustive") {
    auto spec = make("homomorphism");
    spec.N = 4;
    spec.exhaustive = true;
    const auto r = run_suite(spec);
    CHECK(r.suite == "homomorphism");
    CHECK(r.checks_run == 2304);
    CHECK(r.passed());
}

TEST_CASE("metaplectic, n = 1, p = 1") {
    auto spec = make("metaplectic");
    spec.n = 1;
    spec.p = 1;
    const auto r = run_suite(spec);
    CHECK(r.checks_run == 8);
    CHECK(r.passed());
}

TEST_CASE("feichtinger-defect, N = 2") {
    auto spec = make("feichtinger-defect");
    spec.N = 2;
    const auto r = run_suite(spec);
    CHECK(r.passed());
    const auto& w = r.findings["theta_witnesses"]["2"];
    REQUIRE(w.is_array());
    bool has_22 = false;
    for (const auto& e : w) has_22 = has_22 || (e["c1"] == 2 && e["c2"] == 2 && e["theta"] == -1);
    CHECK(has_22);
}

TEST_CASE("reports are deterministic and the seed matters for sampled suites") {
    auto spec = make("homomorphism");
    spec.n = 3;
    spec.samples = 5;
    spec.seed = 3;
    const auto a = to_json(run_suite(spec)).dump();
    const auto b = to_json(run_suite(spec)).dump();
    CHECK(a == b);
    CHECK(a.find("runtime_ms") == std::string::npos);
    CHECK(to_json(run_suite(spec), true).contains("runtime_ms"));
    spec.seed = 4;
    const auto c = to_json(run_suite(spec));
    CHECK(c["params"]["seed"] == 4);
    CHECK(c.dump() != a);
}

TEST_CASE("report json layout") {
    auto spec = make("quadratic-module");
    spec.n = 1;
    const auto j = to_json(run_suite(spec));
    for (const char* k : {"suite", "params", "checks_run", "failure_count", "failures", "max_abs_deviation", "passed"})
        CHECK(j.contains(k));
    CHECK(j["passed"] == true);
}

TEST_CASE("parameter errors") {
    auto big = make("metaplectic");
    big.n = 7;
    CHECK(code_of(big) == ErrorCode::TooLarge);
    auto odd = make("weil-odd");
    odd.N = 9;
    CHECK(code_of(odd) == ErrorCode::InvalidParams);
    auto pairs = make("homomorphism");
    pairs.n = 5;
    pairs.exhaustive = true;
    CHECK(code_of(pairs) == ErrorCode::TooLarge);
    auto fe = make("feichtinger-defect");
    fe.n = 2;
    CHECK(code_of(fe) == ErrorCode::InvalidParams);
}

TEST_CASE("group relations and backend agreement at n = 1") {
    CHECK(group_relations_report(1, 1, Backend::exact).passed());
    CHECK(group_relations_report(2, 3, Backend::exact).passed());
    CHECK(group_relations_report(2, 1, Backend::floating).passed());
}
