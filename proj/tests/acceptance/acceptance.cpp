// One PASS/FAIL line per acceptance criterion. With --criterion k only that
// criterion runs; the exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fqm/harness.hpp"
#include "fqm/heisenberg.hpp"

using namespace fqm;

namespace {

struct Outcome {
    bool ok = true;
    std::int64_t checks = 0;
    std::int64_t failures = 0;
    double max_dev = 0.0;
    std::vector<std::string> notes;
    std::vector<std::string> first_failures;

    void add(const VerifyReport& r) {
        checks += r.checks_run;
        failures += r.failure_count;
        max_dev = std::max(max_dev, r.max_abs_deviation);
        ok = ok && r.passed();
        for (const auto& f : r.failures) {
            if (first_failures.size() >= 5) break;
            first_failures.push_back(f.identity + " @ " + f.inputs);
        }
    }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("missing: " + what);
        }
    }
};

SuiteSpec spec(const std::string& name) {
    SuiteSpec s;
    s.name = name;
    return s;
}

struct Criterion {
    int id;
    std::string title;
    double limit_s;  // 0: no runtime bound
    std::function<void(Outcome&)> run;
};

std::vector<Criterion> criteria() {
    std::vector<Criterion> out;

    out.push_back({1, "Heisenberg relations, commutators, Fourier conjugation (exact, n<=3, all p)", 30.0,
                   [](Outcome& o) { o.add(run_suite(spec("heisenberg"))); }});

    out.push_back({2, "Twisted cocycle and unitarity, exhaustive n<=3, all p (exact)", 60.0,
                   [](Outcome& o) { o.add(run_suite(spec("cocycle-twisted"))); }});

    out.push_back({3, "Metaplectic property: S, T for n<=3 all p; 200 seeded U(A) at n=2,3 (exact)", 120.0,
                   [](Outcome& o) {
                       o.add(run_suite(spec("metaplectic")));
                       for (int n : {2, 3}) {
                           auto s = spec("metaplectic");
                           s.n = n;
                           s.samples = 200;
                           s.seed = 2024;
                           o.add(run_suite(s));
                       }
                   }});

    out.push_back({4, "Exact homomorphism: all 48^2 pairs N=4; 500 pairs N=8 (exact), N=16 (float 1e-9)", 300.0,
                   [](Outcome& o) {
                       auto s = spec("homomorphism");
                       s.N = 4;
                       s.exhaustive = true;
                       const auto r4 = run_suite(s);
                       o.require(r4.checks_run == 48 * 48, "2304 pairs at N=4");
                       o.add(r4);
                       for (std::int64_t N : {8, 16}) {
                           auto t = spec("homomorphism");
                           t.N = N;
                           t.samples = 500;
                           t.seed = 2024;
                           t.tol = 1e-9;
                           const auto r = run_suite(t);
                           o.require(r.checks_run == 500, "500 pairs at N=" + std::to_string(N));
                           o.add(r);
                       }
                   }});

    out.push_back({5, "Closed forms equal word products; one decomposition candidate (200 seeded A per n<=3)", 0.0,
                   [](Outcome& o) {
                       auto s = spec("decomposition");
                       s.samples = 200;
                       s.seed = 2024;
                       o.add(run_suite(s));
                   }});

    out.push_back({6, "Group relations for N=4,8; U(S)=tau(F x F) and twisted Fourier identities n<=3", 0.0,
                   [](Outcome& o) {
                       for (int n = 1; n <= 3; ++n)
                           for (std::int64_t p : HWParams::faithful_labels(n))
                               o.add(group_relations_report(n, p, Backend::exact));
                   }});

    out.push_back({7, "Odd-prime Weil: metaplectic for all A, N=3,5,7; all-pairs homomorphism (tol 1e-9)", 0.0,
                   [](Outcome& o) {
                       auto s = spec("weil-odd");
                       s.tol = 1e-9;
                       const auto r = run_suite(s);
                       o.add(r);
                       for (const char* N : {"3", "5", "7"}) {
                           const auto& t = r.findings["phase_defects"][N];
                           o.require(t.is_object() && t.size() == 1 && t.contains("1.000000+0.000000i"),
                                     std::string("phase defect table == {1} at N=") + N);
                           o.notes.push_back(std::string("N=") + N + " phase defects " + t.dump());
                       }
                   }});

    out.push_back({8, "Quadratic module: alpha(a)=1 and properness, n<=3 (tol 1e-10)", 0.0, [](Outcome& o) {
                       auto s = spec("quadratic-module");
                       s.tol = 1e-10;
                       o.add(run_suite(s));
                   }});

    out.push_back({9, "Feichtinger defect: theta, chirp law, even-N witnesses, non-homomorphism pair", 0.0,
                   [](Outcome& o) {
                       const auto r = run_suite(spec("feichtinger-defect"));
                       o.add(r);
                       for (const char* N : {"2", "4", "6", "8"}) {
                           const auto& w = r.findings["theta_witnesses"][N];
                           o.require(w.is_array() && !w.empty(), std::string("theta witness at N=") + N);
                       }
                       bool has22 = false;
                       for (const auto& e : r.findings["theta_witnesses"]["2"])
                           has22 = has22 || (e["c1"] == 2 && e["c2"] == 2);
                       o.require(has22, "theta(2;2,2) = -1");
                       const auto& hw = r.findings["non_homomorphism_witness"]["4"];
                       o.require(hw.is_object(), "non-homomorphism pair at N=4");
                       if (hw.is_object()) o.notes.push_back("N=4 witness " + hw.dump());
                   }});

    out.push_back({10, "Exact and float constructions agree within 1e-9, n<=3", 0.0, [](Outcome& o) {
                       for (int n = 1; n <= 3; ++n) o.add(backend_agreement_report(n, 1e-9));
                   }});
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    app.add_option("--criterion", only, "run only these criteria (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    bool all_ok = true;
    for (const auto& c : criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            o.ok = false;
            o.notes.push_back("runtime over the " + std::to_string(static_cast<int>(c.limit_s)) + " s bound");
        }
        all_ok = all_ok && o.ok;
        std::ostringstream line;
        line << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << " | " << c.title << " | checks=" << o.checks
             << " failures=" << o.failures << " max_dev=" << o.max_dev << " time=" << secs << "s";
        if (c.limit_s > 0) line << " (bound " << c.limit_s << "s)";
        std::cout << line.str() << std::endl;
        for (const auto& n : o.notes) std::cout << "    " << n << "\n";
        for (const auto& f : o.first_failures) std::cout << "    failure: " << f << "\n";
    }
    return all_ok ? 0 : 1;
}
