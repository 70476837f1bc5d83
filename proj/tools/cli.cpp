#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fqm/harness.hpp"
#include "fqm/heisenberg.hpp"
#include "fqm/magnetic.hpp"
#include "fqm/metaplectic.hpp"
#include "fqm/weilmod.hpp"

namespace fqm::cli {

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct MatrixOpts {
    int n = 1;
    std::int64_t p = 1;
    std::string backend;
    std::string format = "text";
};

void add_matrix_opts(CLI::App* sub, MatrixOpts& o, bool needs_n = true) {
    if (needs_n) {
        sub->add_option("--n", o.n, "N = 2^n")->check(CLI::Range(1, 6));
        sub->add_option("--p", o.p, "irrep label, odd in [1, 2^n)");
    }
    sub->add_option("--backend", o.backend, "exact or float (default: exact for n <= 3)")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
}

Backend pick_backend(const MatrixOpts& o) {
    if (!o.backend.empty()) return parse_backend(o.backend);
    return o.n <= 3 ? Backend::exact : Backend::floating;
}

template <class Fn>
OpMatrix build(Backend b, std::int64_t N, Fn&& fn) {
    if (b == Backend::exact) return OpMatrix(fn(ExactField::for_modulus(N)));
    return OpMatrix(fn(FloatField{}));
}

void emit(const OpMatrix& m, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << to_json(m).dump(2) << "\n";
    } else if (format == "csv") {
        out << to_csv(m);
    } else {
        out << to_text(m);
    }
}

std::uint64_t fallback_seed() {
    if (const char* env = std::getenv("FQM_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "FQM_SEED is not an unsigned integer");
        }
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite Heisenberg-Weyl and metaplectic representation toolkit", "fqm"};
    app.require_subcommand(1);

    MatrixOpts gamma_o;
    std::int64_t gm = 0, gr = 0, gs = 0;
    auto* gamma = app.add_subcommand("gamma", "print Gamma^p(z^m x^r y^s)");
    add_matrix_opts(gamma, gamma_o);
    gamma->add_option("--m", gm);
    gamma->add_option("--r", gr);
    gamma->add_option("--s", gs);

    MatrixOpts jrs_o;
    std::int64_t jr = 0, js = 0, odd_N = 0;
    auto* jrs = app.add_subcommand("jrs", "print a magnetic translation");
    add_matrix_opts(jrs, jrs_o);
    jrs->add_option("--r", jr);
    jrs->add_option("--s", js);
    jrs->add_option("--odd-N", odd_N, "odd prime N: print J_{r,s} on C^N instead of the twisted operator");

    MatrixOpts u_o;
    std::string u_elem;
    auto* u = app.add_subcommand("u", "print U(A) for N = 2^n");
    add_matrix_opts(u, u_o);
    u->add_option("--elem", u_elem, "a,b,c,d")->required();

    MatrixOpts w_o;
    std::int64_t w_N = 3;
    std::string w_elem;
    auto* weil = app.add_subcommand("weil-odd", "print the odd prime Weil operator U(A)");
    add_matrix_opts(weil, w_o, false);
    weil->add_option("--N", w_N, "odd prime")->required();
    weil->add_option("--elem", w_elem, "a,b,c,d")->required();

    SuiteSpec spec;
    std::optional<int> v_n;
    std::optional<std::int64_t> v_N, v_p, v_seed;
    std::optional<std::size_t> v_samples;
    std::string v_out, v_backend;
    bool v_timing = false;
    auto* verify = app.add_subcommand("verify", "run a verification suite and print its JSON report");
    verify->add_option("--suite", spec.name)->required()->check(CLI::IsMember(suite_names()));
    auto* opt_n = verify->add_option("--n", v_n);
    auto* opt_N = verify->add_option("--N", v_N);
    opt_n->excludes(opt_N);
    verify->add_option("--p", v_p);
    verify->add_option("--samples", v_samples);
    verify->add_option("--seed", v_seed, "default: $FQM_SEED, else 0");
    verify->add_option("--out", v_out, "write the report here instead of stdout");
    verify->add_option("--tol", spec.tol, "float tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--backend", v_backend)->check(CLI::IsMember({"exact", "float"}));
    verify->add_flag("--exhaustive", spec.exhaustive);
    verify->add_flag("--timing", v_timing, "include runtime_ms in the report");

    MatrixOpts e_o;
    e_o.format = "json";
    std::string family = "u", e_elem = "1,0,0,1", e_out;
    std::int64_t e_N = 0, e_r = 0, e_s = 0;
    auto* exp = app.add_subcommand("export", "write a matrix as JSON or CSV");
    add_matrix_opts(exp, e_o);
    exp->add_option("--family", family)
        ->check(CLI::IsMember({"q", "p", "p-inverse", "fourier", "gamma", "jrs", "jodd", "u", "u-word", "weil-odd",
                               "feichtinger", "chirp", "pi"}));
    exp->add_option("--elem", e_elem, "a,b,c,d for u, u-word, weil-odd, feichtinger");
    exp->add_option("--N", e_N, "modulus for jodd, weil-odd, feichtinger, chirp, pi");
    exp->add_option("--r", e_r, "r (gamma: r; chirp: c)");
    exp->add_option("--s", e_s);
    exp->add_option("--out", e_out);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (gamma->parsed()) {
            const HWParams params = HWParams::power_of_two(gamma_o.n, gamma_o.p);
            const std::int64_t N = params.N;
            emit(build(pick_backend(gamma_o), N,
                       [&](const auto& f) { return gamma_p(f, params, ZMod(gm, N), ZMod(gr, N), ZMod(gs, N)); }),
                 gamma_o.format, out);
            return kPass;
        }
        if (jrs->parsed()) {
            if (odd_N != 0) {
                if (!is_odd_prime(odd_N)) throw Error(ErrorCode::InvalidParams, "--odd-N must be an odd prime");
                const Backend b = jrs_o.backend.empty() ? Backend::exact : parse_backend(jrs_o.backend);
                emit(build(b, odd_N, [&](const auto& f) { return j_odd(f, odd_N, TorusPoint(jr, js, odd_N)); }),
                     jrs_o.format, out);
                return kPass;
            }
            const HWParams params = HWParams::power_of_two(jrs_o.n, jrs_o.p);
            emit(build(pick_backend(jrs_o), params.N,
                       [&](const auto& f) { return j_twisted(f, params, TorusPoint(jr, js, params.N)); }),
                 jrs_o.format, out);
            return kPass;
        }
        if (u->parsed()) {
            const HWParams params = HWParams::power_of_two(u_o.n, u_o.p);
            const SL2Element A = SL2Element::parse(u_elem, params.N);
            emit(build(pick_backend(u_o), params.N, [&](const auto& f) { return u_general(f, params, A); }), u_o.format,
                 out);
            return kPass;
        }
        if (weil->parsed()) {
            if (!w_o.backend.empty() && w_o.backend != "float") {
                throw Error(ErrorCode::InvalidParams, "the odd prime Weil operators are float only");
            }
            emit(OpMatrix(weil_odd_general(w_N, SL2Element::parse(w_elem, w_N))), w_o.format, out);
            return kPass;
        }
        if (verify->parsed()) {
            spec.n = v_n;
            spec.N = v_N;
            spec.p = v_p;
            spec.samples = v_samples;
            spec.seed = v_seed ? static_cast<std::uint64_t>(*v_seed) : fallback_seed();
            if (!v_backend.empty()) spec.backend = parse_backend(v_backend);
            const VerifyReport report = run_suite(spec);
            const std::string text = to_json(report, v_timing).dump(2) + "\n";
            if (v_out.empty()) {
                out << text;
            } else {
                std::ofstream file(v_out);
                if (!file) throw Error(ErrorCode::InvalidParams, "cannot write " + v_out);
                file << text;
                err << report.suite << ": " << (report.passed() ? "passed" : "FAILED") << " (" << report.checks_run
                    << " checks, " << report.failure_count << " failures)\n";
            }
            return report.passed() ? kPass : kFail;
        }
        if (exp->parsed()) {
            std::optional<OpMatrix> m;
            const auto twisted = [&]() { return HWParams::power_of_two(e_o.n, e_o.p); };
            const auto need_N = [&]() {
                if (e_N < 2) throw Error(ErrorCode::InvalidParams, "--N is required for family " + family);
                return e_N;
            };
            if (family == "weil-odd") {
                m = OpMatrix(weil_odd_general(need_N(), SL2Element::parse(e_elem, e_N)));
            } else if (family == "feichtinger") {
                m = OpMatrix(feichtinger_u(need_N(), SL2Element::parse(e_elem, e_N)));
            } else if (family == "chirp") {
                m = OpMatrix(chirp(need_N(), e_r));
            } else if (family == "pi") {
                m = OpMatrix(pi_shift(need_N(), e_r, e_s));
            } else if (family == "jodd") {
                const std::int64_t N = need_N();
                if (!is_odd_prime(N)) throw Error(ErrorCode::InvalidParams, "jodd needs an odd prime --N");
                const Backend b = e_o.backend.empty() ? Backend::exact : parse_backend(e_o.backend);
                m = build(b, N, [&](const auto& f) { return j_odd(f, N, TorusPoint(e_r, e_s, N)); });
            } else {
                const HWParams params = twisted();
                const std::int64_t N = params.N;
                m = build(pick_backend(e_o), N, [&](const auto& f) -> MatrixOf<std::decay_t<decltype(f)>> {
                    if (family == "q") return q_matrix(f, params);
                    if (family == "p") return p_matrix(f, params);
                    if (family == "p-inverse") return p_inverse_matrix(f, params);
                    if (family == "fourier") return fourier(f, params);
                    if (family == "gamma") return gamma_p(f, params, ZMod(0, N), ZMod(e_r, N), ZMod(e_s, N));
                    if (family == "jrs") return j_twisted(f, params, TorusPoint(e_r, e_s, N));
                    if (family == "u-word") return u_word_oracle(f, params, SL2Element::parse(e_elem, N));
                    return u_general(f, params, SL2Element::parse(e_elem, N));
                });
            }
            if (e_o.format == "text") e_o.format = "json";
            if (e_out.empty()) {
                emit(*m, e_o.format, out);
            } else {
                std::ofstream file(e_out);
                if (!file) throw Error(ErrorCode::InvalidParams, "cannot write " + e_out);
                emit(*m, e_o.format, file);
            }
            return kPass;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace fqm::cli
