#include "fqm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "fqm/heisenberg.hpp"
#include "fqm/magnetic.hpp"
#include "fqm/metaplectic.hpp"
#include "fqm/parallel.hpp"
#include "fqm/sl2.hpp"
#include "fqm/weilmod.hpp"

namespace fqm {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"heisenberg",    "cocycle-odd", "cocycle-twisted",
                                                "metaplectic",   "homomorphism", "decomposition",
                                                "weil-odd",      "quadratic-module", "feichtinger-defect"};
    return names;
}

namespace {

constexpr std::size_t kMaxDim = 4096;
constexpr std::int64_t kMaxPairs = 10'000'000;

template <class S>
void check_eq(VerifyReport& r, const Matrix<S>& a, const Matrix<S>& b, double tol, const std::string& identity,
              const std::string& inputs) {
    const MatEq e = mat_eq(a, b, tol);
    r.record(e.equal, identity, inputs, e.max_deviation);
}

std::string np_str(const HWParams& params) {
    return "n=" + std::to_string(params.n) + " p=" + std::to_string(params.p);
}

int log2_exact(std::int64_t N) {
    if (!is_power_of_two(N) || N < 2) throw Error(ErrorCode::InvalidParams, "N = " + std::to_string(N) + " is not 2^n");
    int n = 0;
    while ((std::int64_t{1} << n) < N) ++n;
    return n;
}

/// n from --n or --N (power of two), else the fallback list.
std::vector<int> resolve_ns(const SuiteSpec& spec, std::vector<int> fallback) {
    if (spec.n) return {*spec.n};
    if (spec.N) return {log2_exact(*spec.N)};
    return fallback;
}

std::vector<std::int64_t> resolve_odd_Ns(const SuiteSpec& spec, std::vector<std::int64_t> fallback) {
    if (spec.N) {
        if (!is_odd_prime(*spec.N)) throw Error(ErrorCode::InvalidParams, "suite needs an odd prime N");
        return {*spec.N};
    }
    if (spec.n) throw Error(ErrorCode::InvalidParams, "suite takes --N (odd prime), not --n");
    return fallback;
}

std::vector<std::int64_t> resolve_ps(const SuiteSpec& spec, int n) {
    if (spec.p) {
        HWParams::power_of_two(n, *spec.p);
        return {*spec.p};
    }
    return HWParams::faithful_labels(n);
}

Backend resolve_backend(const SuiteSpec& spec, int n) {
    if (spec.backend) return *spec.backend;
    return n <= 3 ? Backend::exact : Backend::floating;
}

void require_twisted_dim(int n) {
    const std::size_t N = std::size_t{1} << n;
    if (N * N > kMaxDim) {
        throw Error(ErrorCode::TooLarge, "dim 2^{2n} = " + std::to_string(N * N) + " exceeds " + std::to_string(kMaxDim));
    }
}

template <class Fn>
VerifyReport with_field(Backend backend, std::int64_t N, Fn&& fn) {
    if (backend == Backend::exact) return fn(ExactField::for_modulus(N));
    return fn(FloatField{});
}

// heisenberg -----------------------------------------------------------------

template <class F>
void heisenberg_checks(VerifyReport& r, const F& f, const HWParams& params, const SuiteSpec& spec) {
    const std::int64_t N = params.N;
    const double tol = spec.tol;
    const std::string in = np_str(params);
    const auto Q = q_matrix(f, params);
    const auto P = p_matrix(f, params);
    const auto Pinv = p_inverse_matrix(f, params);
    const auto I = identity(f, params.dim());
    const auto z = z_phase(f, params);

    check_eq(r, Pinv * Q, scalar_mul(z, Q * Pinv), tol, "P^-1 Q = w^p Q P^-1", in);
    check_eq(r, pow(Q, N), I, tol, "Q^N = I", in);
    check_eq(r, pow(P, N), I, tol, "P^N = I", in);
    check_eq(r, P * Pinv, I, tol, "P P^-1 = I", in);
    check_eq(r, Pinv, gamma_p(f, params, ZMod(0, N), ZMod(0, N), ZMod(1, N)), tol, "Gamma(0,0,1) = P^-1", in);
    const auto Fr = fourier(f, params);
    check_eq(r, Fr * pow(P, params.p) * dagger(Fr), Q, tol, "F P^p F^-1 = Q", in);
    check_eq(r, pow(Fr, 4), I, tol, "F^4 = I", in);

    const auto eig = p_eigensystem(f, params);
    for (std::int64_t k = 0; k < N; ++k) {
        const auto& pair = eig[static_cast<std::size_t>(k)];
        const auto lhs = apply(Pinv, pair.vector);
        const auto lhs_p = apply(P, pair.vector);
        const auto conj_val = f.root(N, -k);
        double dev = 0.0, dev_p = 0.0;
        bool ok = true, ok_p = true;
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            const auto want = pair.value * pair.vector[i];
            const auto want_p = conj_val * pair.vector[i];
            dev = std::max(dev, std::abs(scalar_to_complex(lhs[i]) - scalar_to_complex(want)));
            dev_p = std::max(dev_p, std::abs(scalar_to_complex(lhs_p[i]) - scalar_to_complex(want_p)));
            if constexpr (F::backend == Backend::exact) {
                ok = ok && lhs[i] == want;
                ok_p = ok_p && lhs_p[i] == want_p;
            }
        }
        if constexpr (F::backend == Backend::floating) {
            ok = dev <= tol;
            ok_p = dev_p <= tol;
        }
        r.record(ok, "P^-1 psi_k = w^k psi_k", in + " k=" + std::to_string(k), dev);
        r.record(ok_p, "P psi_k = w^-k psi_k", in + " k=" + std::to_string(k), dev_p);
    }

    // Commutator over group elements g = (m, r, s), indexed m N^2 + r N + s.
    const std::int64_t G = N * N * N;
    std::vector<MatrixOf<F>> gam;
    gam.reserve(static_cast<std::size_t>(G));
    for (std::int64_t i = 0; i < G; ++i) {
        gam.push_back(gamma_p(f, params, ZMod(i / (N * N), N), ZMod(i / N % N, N), ZMod(i % N, N)));
    }
    const auto commutator = [&](std::int64_t i, std::int64_t j) {
        const std::int64_t r1 = i / N % N, s1 = i % N, r2 = j / N % N, s2 = j % N;
        const std::int64_t sum = (i / (N * N) + j / (N * N)) % N * N * N + (r1 + r2) % N * N + (s1 + s2) % N;
        const auto lhs = gam[i] * gam[j] - gam[j] * gam[i];
        const auto coeff = f.root(N, params.p * (r2 * s1 % N)) - f.root(N, params.p * (r1 * s2 % N));
        const auto e = mat_eq(lhs, scalar_mul(coeff, gam[sum]), tol);
        r.record(e.equal, "[G(g),G(g')] = (w^{pr's} - w^{prs'}) G(gg')",
                 in + " g=" + std::to_string(i) + " g'=" + std::to_string(j), e.max_deviation);
    };
    if (params.n <= 2 || (spec.exhaustive && G * G <= kMaxPairs)) {
        for (std::int64_t i = 0; i < G; ++i)
            for (std::int64_t j = 0; j < G; ++j) commutator(i, j);
    } else {
        std::mt19937_64 rng(spec.seed);
        std::uniform_int_distribution<std::int64_t> u(0, G - 1);
        const std::size_t count = spec.samples.value_or(1000);
        for (std::size_t t = 0; t < count; ++t) {
            const std::int64_t i = u(rng);
            const std::int64_t j = u(rng);
            commutator(i, j);
        }
    }

    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::int64_t> u(0, G - 1);
    for (int t = 0; t < 100; ++t) {
        const auto& g = gam[u(rng)];
        check_eq(r, g * dagger(g), I, tol, "G(g) G(g)^dagger = I", in);
    }
}

VerifyReport suite_heisenberg(const SuiteSpec& spec) {
    VerifyReport r;
    for (int n : resolve_ns(spec, {1, 2, 3})) {
        for (std::int64_t p : resolve_ps(spec, n)) {
            const HWParams params = HWParams::power_of_two(n, p);
            r.merge(with_field(resolve_backend(spec, n), params.N, [&](const auto& f) {
                VerifyReport part;
                heisenberg_checks(part, f, params, spec);
                return part;
            }));
        }
    }
    return r;
}

// cocycle-odd ----------------------------------------------------------------

template <class F>
void cocycle_odd_checks(VerifyReport& r, const F& f, std::int64_t N, double tol) {
    const std::string in = "N=" + std::to_string(N);
    std::vector<MatrixOf<F>> J;
    for (std::int64_t i = 0; i < N * N; ++i) J.push_back(j_odd(f, N, TorusPoint(i / N, i % N, N)));
    const auto at = [N](std::int64_t r, std::int64_t s) { return static_cast<std::size_t>(floor_mod(r, N) * N + floor_mod(s, N)); };
    const std::int64_t half = ZMod(2, N).inverse().value();
    const auto I = identity(f, static_cast<std::size_t>(N));
    for (std::int64_t i = 0; i < N * N; ++i) {
        const std::int64_t r1 = i / N, s1 = i % N;
        const std::string x = " x=(" + std::to_string(r1) + "," + std::to_string(s1) + ")";
        check_eq(r, dagger(J[i]), J[at(-r1, -s1)], tol, "J_x^dagger = J_-x", in + x);
        auto power = I;
        for (std::int64_t k = 1; k <= N; ++k) {
            power = power * J[i];
            check_eq(r, power, J[at(k * r1, k * s1)], tol, "J_x^k = J_kx", in + x + " k=" + std::to_string(k));
        }
        check_eq(r, power, I, tol, "J_x^N = I", in + x);
        for (std::int64_t j = 0; j < N * N; ++j) {
            const std::int64_t r2 = j / N, s2 = j % N;
            const std::string xy = x + " y=(" + std::to_string(r2) + "," + std::to_string(s2) + ")";
            const auto prod = J[i] * J[j];
            const std::int64_t e = floor_mod(r2 * s1 - r1 * s2, N) * half % N;
            check_eq(r, prod, scalar_mul(f.root(N, e), J[at(r1 + r2, s1 + s2)]), tol,
                     "J_x J_y = w^{(r's - rs')/2} J_{x+y}", in + xy);
            check_eq(r, prod, scalar_mul(f.root(N, floor_mod(s1 * r2 - s2 * r1, N)), J[j] * J[i]), tol,
                     "J_x J_y = w^{sr' - s'r} J_y J_x", in + xy);
        }
    }
}

VerifyReport suite_cocycle_odd(const SuiteSpec& spec) {
    VerifyReport r;
    for (std::int64_t N : resolve_odd_Ns(spec, {3, 5, 7})) {
        r.merge(with_field(spec.backend.value_or(Backend::exact), N, [&](const auto& f) {
            VerifyReport part;
            cocycle_odd_checks(part, f, N, spec.tol);
            return part;
        }));
    }
    return r;
}

// cocycle-twisted ------------------------------------------------------------

template <class F>
void cocycle_twisted_checks(VerifyReport& r, const F& f, const HWParams& params, double tol) {
    const std::int64_t N = params.N;
    const std::string in = np_str(params);
    const auto count = static_cast<std::size_t>(N * N);
    std::vector<MatrixOf<F>> J;
    J.reserve(count);
    for (std::size_t i = 0; i < count; ++i) J.push_back(j_twisted(f, params, TorusPoint(i / N, i % N, N)));
    const auto at = [N](std::int64_t r, std::int64_t s) { return static_cast<std::size_t>(floor_mod(r, N) * N + floor_mod(s, N)); };
    for (std::size_t i = 0; i < count; ++i) {
        const std::int64_t r1 = static_cast<std::int64_t>(i) / N, s1 = static_cast<std::int64_t>(i) % N;
        const TorusPoint x(r1, s1, N);
        check_eq(r, J[i], j_twisted_product(f, params, x), tol, "closed form = w^{-psr} QsPr x QsPr", in + " x=" + x.to_string());
        check_eq(r, dagger(J[i]), J[at(-r1, -s1)], tol, "J_x^dagger = J_-x", in + " x=" + x.to_string());
        check_eq(r, J[i], j_twisted(f, params, TorusPoint(r1 + N, s1 + N, N)), tol, "J_{x+(N,N)} = J_x",
                 in + " x=" + x.to_string());
    }
    struct Slot {
        bool ok;
        double dev;
    };
    std::vector<Slot> slots(count * count);
    parallel_for(count, [&](std::size_t i) {
        const std::int64_t r1 = static_cast<std::int64_t>(i) / N, s1 = static_cast<std::int64_t>(i) % N;
        for (std::size_t j = 0; j < count; ++j) {
            const std::int64_t r2 = static_cast<std::int64_t>(j) / N, s2 = static_cast<std::int64_t>(j) % N;
            const auto phase = f.root(N, params.p * floor_mod(r2 * s1 - s2 * r1, N));
            const auto e = mat_eq(J[i] * J[j], scalar_mul(phase, J[at(r1 + r2, s1 + s2)]), tol);
            slots[i * count + j] = {e.equal, e.max_deviation};
        }
    });
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const std::size_t i = k / count, j = k % count;
        r.record(slots[k].ok, "J_x J_y = w^{p(r's - s'r)} J_{x+y}",
                 in + " x=" + TorusPoint(i / N, i % N, N).to_string() + " y=" + TorusPoint(j / N, j % N, N).to_string(),
                 slots[k].dev);
    }
}

VerifyReport suite_cocycle_twisted(const SuiteSpec& spec) {
    VerifyReport r;
    for (int n : resolve_ns(spec, {1, 2, 3})) {
        require_twisted_dim(n);
        for (std::int64_t p : resolve_ps(spec, n)) {
            const HWParams params = HWParams::power_of_two(n, p);
            r.merge(with_field(resolve_backend(spec, n), params.N, [&](const auto& f) {
                VerifyReport part;
                cocycle_twisted_checks(part, f, params, spec.tol);
                return part;
            }));
        }
    }
    return r;
}

// metaplectic ----------------------------------------------------------------

VerifyReport suite_metaplectic(const SuiteSpec& spec) {
    VerifyReport r;
    const std::size_t samples = spec.samples.value_or(0);
    for (int n : resolve_ns(spec, {1, 2, 3})) {
        require_twisted_dim(n);
        for (std::int64_t p : resolve_ps(spec, n)) {
            const HWParams params = HWParams::power_of_two(n, p);
            r.merge(with_field(resolve_backend(spec, n), params.N, [&](const auto& f) {
                VerifyReport part;
                const auto rep = MetaplecticRep::twisted(params);
                const std::int64_t N = params.N;
                part.merge(verify_metaplectic(f, u_s(f, params), SL2Element::S(N), rep, spec.tol));
                part.merge(verify_metaplectic(f, u_t(f, params), SL2Element::T(N), rep, spec.tol));
                if (samples > 0) {
                    for (const auto& A : sample_sl2(N, spec.seed, samples)) {
                        part.merge(verify_metaplectic(f, u_general(f, params, A), A, rep, spec.tol));
                    }
                }
                return part;
            }));
        }
    }
    return r;
}

// homomorphism ---------------------------------------------------------------

template <class F>
void homomorphism_checks(VerifyReport& r, const F& f, const HWParams& params, const SuiteSpec& spec, nlohmann::json& info) {
    const std::int64_t N = params.N;
    const std::int64_t order = sl2_order(N);
    const bool exhaustive = spec.exhaustive || (!spec.samples && order * order <= 10'000);
    const std::string in = np_str(params);
    if (exhaustive) {
        if (order * order > kMaxPairs) {
            throw Error(ErrorCode::TooLarge, std::to_string(order * order) + " pairs exceed 10^7");
        }
        const auto group = enumerate_sl2(N);
        std::map<std::string, std::size_t> index;
        std::vector<MatrixOf<F>> us;
        us.reserve(group.size());
        for (std::size_t i = 0; i < group.size(); ++i) {
            index[group[i].to_string()] = i;
            us.push_back(u_general(f, params, group[i]));
        }
        const std::size_t G = group.size();
        struct Slot {
            bool ok;
            double dev;
        };
        std::vector<Slot> slots(G * G);
        parallel_for(G, [&](std::size_t i) {
            for (std::size_t j = 0; j < G; ++j) {
                const auto e = mat_eq(us[i] * us[j], us[index.at((group[i] * group[j]).to_string())], spec.tol);
                slots[i * G + j] = {e.equal, e.max_deviation};
            }
        });
        for (std::size_t k = 0; k < slots.size(); ++k) {
            r.record(slots[k].ok, "U(A)U(B) = U(AB)",
                     in + " A=" + group[k / G].to_string() + " B=" + group[k % G].to_string(), slots[k].dev);
        }
        info["mode"] = "exhaustive";
        return;
    }
    const std::size_t count = spec.samples.value_or(500);
    const auto elems = sample_sl2(N, spec.seed, 2 * count);
    struct Slot {
        bool ok;
        double dev;
    };
    std::vector<Slot> slots(count);
    parallel_for(count, [&](std::size_t i) {
        const auto& A = elems[2 * i];
        const auto& B = elems[2 * i + 1];
        const auto e = mat_eq(u_general(f, params, A) * u_general(f, params, B), u_general(f, params, A * B), spec.tol);
        slots[i] = {e.equal, e.max_deviation};
    });
    for (std::size_t i = 0; i < count; ++i) {
        r.record(slots[i].ok, "U(A)U(B) = U(AB)",
                 in + " A=" + elems[2 * i].to_string() + " B=" + elems[2 * i + 1].to_string(), slots[i].dev);
    }
    info["mode"] = "sampled";
    info["pairs"] = count;
}

VerifyReport suite_homomorphism(const SuiteSpec& spec) {
    VerifyReport r;
    for (int n : resolve_ns(spec, {2})) {
        require_twisted_dim(n);
        const HWParams params = HWParams::power_of_two(n, spec.p.value_or(1));
        const Backend backend = resolve_backend(spec, n);
        nlohmann::json info = {{"n", n}, {"p", params.p}, {"backend", to_string(backend)}};
        r.merge(with_field(backend, params.N, [&](const auto& f) {
            VerifyReport part;
            homomorphism_checks(part, f, params, spec, info);
            return part;
        }));
        r.findings["runs"].push_back(info);
    }
    return r;
}

// decomposition --------------------------------------------------------------

template <class F>
void decomposition_checks(VerifyReport& r, const F& f, const HWParams& params, const SuiteSpec& spec) {
    const std::int64_t N = params.N;
    const std::string in = np_str(params);
    WordImages<F> images(f, params);
    for (const auto& A : sample_sl2(N, spec.seed, spec.samples.value_or(200))) {
        const std::string inA = in + " A=" + A.to_string();
        const Decomposition dec = decompose(A);
        const bool reproduces = multiply_out(dec.word, N) == A && dec.matching_candidates == 1;
        r.record(reproduces, "decompose(A) multiplies out to A with one candidate", inA, 0.0);
        const auto closed = u_general(f, params, A);
        check_eq(r, closed, images.word(dec.word), spec.tol, "closed form = word product", inA + " branch=" + closed.label());
        r.record(is_unitary(closed, spec.tol), "U(A) unitary", inA, 0.0);
    }
    if (sl2_order(N) <= 100'000 && params.n <= 3) {
        for (const auto& A : enumerate_sl2(N)) {
            if (!A.d().is_unit() || A.c().is_zero() || !(A.c() * A.d().inverse()).is_odd()) continue;
            check_eq(r, u_a_closed(f, params, A, UBranch::odd_closed), u_a_closed(f, params, A, UBranch::odd_sum), spec.tol,
                     "closed c/d-odd form = r-sum form", in + " A=" + A.to_string());
        }
    }
}

VerifyReport suite_decomposition(const SuiteSpec& spec) {
    VerifyReport r;
    for (int n : resolve_ns(spec, {1, 2, 3})) {
        require_twisted_dim(n);
        for (std::int64_t p : resolve_ps(spec, n)) {
            const HWParams params = HWParams::power_of_two(n, p);
            const Backend backend = resolve_backend(spec, n);
            r.merge(with_field(backend, params.N, [&](const auto& f) {
                VerifyReport part;
                decomposition_checks(part, f, params, spec);
                return part;
            }));
            r.merge(group_relations_report(n, p, backend));
        }
    }
    return r;
}

// weil-odd -------------------------------------------------------------------

std::string phase_key(const Complex& z) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << (std::abs(z.real()) < 5e-7 ? 0.0 : z.real()) << (z.imag() < -5e-7 ? "" : "+")
       << (std::abs(z.imag()) < 5e-7 ? 0.0 : z.imag()) << "i";
    return os.str();
}

nlohmann::json complex_json(const Complex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void weil_odd_checks(VerifyReport& r, std::int64_t N, const SuiteSpec& spec) {
    const double tol = spec.tol;
    const FloatField f;
    const auto rep = MetaplecticRep::weil(N);
    const std::string in = "N=" + std::to_string(N);
    const auto group = enumerate_sl2(N);
    const std::size_t G = group.size();
    std::map<std::string, std::size_t> index;
    std::vector<FloatMatrix> us;
    us.reserve(G);
    for (std::size_t i = 0; i < G; ++i) {
        index[group[i].to_string()] = i;
        us.push_back(weil_odd_general(N, group[i]));
    }
    for (std::size_t i = 0; i < G; ++i) {
        r.merge(verify_metaplectic(f, us[i], group[i], rep, tol));
        r.record(is_unitary(us[i], tol), "U(A) unitary", in + " A=" + group[i].to_string(),
                 mat_eq(us[i] * dagger(us[i]), identity_like(us[i]), tol).max_deviation);
    }
    check_eq(r, weil_odd_general(N, SL2Element::identity(N)), identity(f, N), tol, "U(I) = I", in);

    const SL2Element S = SL2Element::S(N);
    const auto s_phase = proportionality(weil_odd_s(N), weil_odd_generic(N, S), tol);
    r.record(s_phase.has_value(), "printed U(S) proportional to generic U(S)", in, 0.0);
    r.findings["s_formula_phase"][std::to_string(N)] = s_phase ? complex_json(*s_phase) : nlohmann::json(nullptr);
    r.merge(verify_metaplectic(f, weil_odd_s(N), S, rep, tol));

    for (std::int64_t a = 2; a < N; ++a) {
        const ZMod z(a, N);
        const std::string ina = in + " a=" + std::to_string(a);
        check_eq(r, weil_odd_d(N, z), weil_odd_generic(N, S) * weil_odd_generic(N, S.inverse() * SL2Element::D(z)), tol,
                 "U(D(a)) = U(S) U(S^-1 D(a))", ina);
        r.merge(verify_metaplectic(f, weil_odd_d_printed(N, z), SL2Element::D(z.inverse()), rep, tol));
    }
    check_eq(r, weil_odd_d(N, ZMod(1, N)), identity(f, N), tol, "U(D(1)) = I", in);

    if (static_cast<std::int64_t>(G * G) > kMaxPairs) return;
    struct Slot {
        double dev;
        std::optional<Complex> phase;
    };
    std::vector<Slot> slots(G * G);
    parallel_for(G, [&](std::size_t i) {
        for (std::size_t j = 0; j < G; ++j) {
            const auto lhs = us[i] * us[j];
            const auto& rhs = us[index.at((group[i] * group[j]).to_string())];
            slots[i * G + j] = {mat_eq(lhs, rhs, tol).max_deviation, proportionality(lhs, rhs, tol)};
        }
    });
    std::map<std::string, std::int64_t> table;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        table[slots[k].phase ? phase_key(*slots[k].phase) : "not proportional"] += 1;
        r.record(slots[k].dev <= tol, "U(A)U(B) = U(AB)",
                 in + " A=" + group[k / G].to_string() + " B=" + group[k % G].to_string(), slots[k].dev);
    }
    r.findings["phase_defects"][std::to_string(N)] = table;
}

VerifyReport suite_weil_odd(const SuiteSpec& spec) {
    VerifyReport r;
    for (std::int64_t N : resolve_odd_Ns(spec, {3, 5, 7})) weil_odd_checks(r, N, spec);
    return r;
}

// quadratic-module -----------------------------------------------------------

VerifyReport suite_quadratic_module(const SuiteSpec& spec) {
    VerifyReport r;
    const double tol = spec.tol;
    for (int n : resolve_ns(spec, {1, 2, 3})) {
        require_twisted_dim(n);
        const auto qm = QuadraticModule::case_one(n);
        const std::int64_t N = qm.N();
        const std::string in = "n=" + std::to_string(n);
        std::vector<ZMod> units;
        for (std::int64_t a = 1; a < N; a += 2) units.emplace_back(a, N);
        for (const auto& a : units) {
            const double dev = std::abs(alpha_q(qm, a) - 1.0);
            r.record(dev <= tol, "alpha_Q(a) = 1", in + " a=" + std::to_string(a.value()), dev);
        }
        const Complex a1 = alpha_q(qm, ZMod(1, N));
        for (const auto& a : units) {
            for (const auto& b : units) {
                const double dev = std::abs(alpha_q(qm, a) * alpha_q(qm, b) - a1 * alpha_q(qm, a * b));
                r.record(dev <= tol, "alpha(a)alpha(b) = alpha(1)alpha(ab)",
                         in + " a=" + std::to_string(a.value()) + " b=" + std::to_string(b.value()), dev);
            }
        }
        const auto table = weil_relation_table(qm, tol);
        for (const auto& row : table) {
            r.record(!row["lambda_vs_U_inverse"].is_null(), "Gamma(g) proportional to U(g)^-1",
                     in + " g=" + row["generator"].get<std::string>(), 0.0);
        }
        r.findings["weil_relation_table"][in] = table;
        const auto s4 = pow(weil_generator_action(qm, Token::s_inv(N)), 4);
        const auto lambda = proportionality(s4, identity_like(s4), tol);
        r.record(lambda.has_value(), "Gamma(S^-1)^4 proportional to I", in, 0.0);
        if (lambda) r.findings["gamma_s_inv_fourth_power"][in] = complex_json(*lambda);
    }
    return r;
}

// feichtinger-defect ---------------------------------------------------------

void feichtinger_checks(VerifyReport& r, std::int64_t N, const SuiteSpec& spec, bool require_witness) {
    const double tol = spec.tol;
    const std::string in = "N=" + std::to_string(N);
    const FloatField f;

    nlohmann::json witnesses = nlohmann::json::array();
    for (std::int64_t c1 = 1; c1 <= N; ++c1) {
        for (std::int64_t c2 = 1; c2 <= N; ++c2) {
            const int theta = theta_defect(N, c1, c2);
            if (N % 2 == 1) {
                r.record(theta == 1, "theta = +1 for odd N", in + " c1=" + std::to_string(c1) + " c2=" + std::to_string(c2), 0.0);
            } else if (theta == -1) {
                witnesses.push_back({{"c1", c1}, {"c2", c2}, {"theta", -1}});
            }
            const double dev = chirp_product_defect(N, c1, c2);
            r.record(dev <= tol, "R_[c1] R_[c2] = theta^{k^2} R_[c1+c2]",
                     in + " c1=" + std::to_string(c1) + " c2=" + std::to_string(c2), dev);
        }
    }
    if (N % 2 == 0) {
        r.record(!witnesses.empty(), "theta = -1 witness exists for even N", in, 0.0);
        r.findings["theta_witnesses"][std::to_string(N)] = witnesses;
    }

    const auto idx = [](std::int64_t r_, std::int64_t s_) { return std::to_string(r_) + "," + std::to_string(s_); };
    for (std::int64_t r1 = 0; r1 < N; ++r1) {
        for (std::int64_t s1 = 0; s1 < N; ++s1) {
            const auto pi1 = pi_shift(N, r1, s1);
            check_eq(r, inverse(pi1), scalar_mul(f.root(N, s1 * r1), pi_shift(N, -r1, -s1)), tol,
                     "pi(l)^-1 = e(<l|kl>) pi(-l)", in + " l=" + idx(r1, s1));
            for (std::int64_t r2 = 0; r2 < N; ++r2) {
                for (std::int64_t s2 = 0; s2 < N; ++s2) {
                    check_eq(r, pi1 * pi_shift(N, r2, s2), scalar_mul(f.root(N, s1 * r2), pi_shift(N, r1 + r2, s1 + s2)), tol,
                             "pi(l)pi(l') = e(<l|kl'>) pi(l+l')", in + " l=" + idx(r1, s1) + " l'=" + idx(r2, s2));
                }
            }
        }
    }

    const std::size_t samples = spec.samples.value_or(1000);
    for (const auto& A : enumerate_sl2(N)) {
        if (!A.a().is_unit()) continue;
        const std::string inA = in + " A=" + A.to_string();
        try {
            const CharacterSample psi = extract_psi(feichtinger_u(N, A), A, tol);
            r.record(true, "U pi(l) U^-1 proportional to pi(lA)", inA, 0.0);
            r.merge(check_second_degree(psi, samples, spec.seed, tol));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotMetaplectic) throw;
            r.record(false, "U pi(l) U^-1 proportional to pi(lA)", inA, 0.0);
        }
    }

    const auto literal_identity = feichtinger_u(N, SL2Element::identity(N), FeichtingerVariant::literal);
    r.findings["literal_variant_identity_proportional_to_I"][std::to_string(N)] =
        proportionality(literal_identity, identity(f, N), tol).has_value();

    const auto hom = find_non_homomorphism(N, 1e-6);
    if (N % 2 == 1) {
        r.record(!hom.has_value(), "U(A)U(B) proportional to U(AB) for odd N", in, hom ? hom->defect_norm : 0.0);
    } else {
        r.findings["non_homomorphism_witness"][std::to_string(N)] = hom ? to_json(*hom) : nlohmann::json(nullptr);
        if (require_witness) r.record(hom.has_value(), "even-N non-homomorphism witness exists", in, 0.0);
    }
}

VerifyReport suite_feichtinger(const SuiteSpec& spec) {
    VerifyReport r;
    if (spec.n) throw Error(ErrorCode::InvalidParams, "feichtinger-defect takes --N");
    if (spec.N) {
        if (*spec.N < 2 || *spec.N > 64) throw Error(ErrorCode::InvalidParams, "N must be in [2, 64]");
        feichtinger_checks(r, *spec.N, spec, *spec.N == 4);
        return r;
    }
    for (std::int64_t N : {2, 3, 4, 5, 6, 7, 8, 9}) feichtinger_checks(r, N, spec, N == 4);
    return r;
}

nlohmann::json spec_json(const SuiteSpec& spec) {
    nlohmann::json j = {{"seed", spec.seed}, {"tol", spec.tol}, {"exhaustive", spec.exhaustive}};
    if (spec.n) j["n"] = *spec.n;
    if (spec.N) j["N"] = *spec.N;
    if (spec.p) j["p"] = *spec.p;
    if (spec.samples) j["samples"] = *spec.samples;
    if (spec.backend) j["backend"] = to_string(*spec.backend);
    return j;
}

}  // namespace

VerifyReport run_suite(const SuiteSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport r;
    if (spec.name == "heisenberg") {
        r = suite_heisenberg(spec);
    } else if (spec.name == "cocycle-odd") {
        r = suite_cocycle_odd(spec);
    } else if (spec.name == "cocycle-twisted") {
        r = suite_cocycle_twisted(spec);
    } else if (spec.name == "metaplectic") {
        r = suite_metaplectic(spec);
    } else if (spec.name == "homomorphism") {
        r = suite_homomorphism(spec);
    } else if (spec.name == "decomposition") {
        r = suite_decomposition(spec);
    } else if (spec.name == "weil-odd") {
        r = suite_weil_odd(spec);
    } else if (spec.name == "quadratic-module") {
        r = suite_quadratic_module(spec);
    } else if (spec.name == "feichtinger-defect") {
        r = suite_feichtinger(spec);
    } else {
        throw Error(ErrorCode::UnknownSuite, "unknown suite '" + spec.name + "'");
    }
    r.suite = spec.name;
    r.params = spec_json(spec);
    r.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

template <class F>
void relations_checks(VerifyReport& r, const F& f, const HWParams& params, double tol) {
    const std::int64_t N = params.N;
    const std::string in = np_str(params);
    const auto US = u_s(f, params);
    const auto UT = u_t(f, params);
    const auto I = identity(f, params.dim() * params.dim());
    const auto US_inv = pow(US, 3);
    WordImages<F> images(f, params);

    check_eq(r, pow(US, 4), I, tol, "U(S)^4 = I", in);
    check_eq(r, pow(US * UT, 6), I, tol, "(U(S)U(T))^6 = I", in);
    check_eq(r, pow(UT, N), I, tol, "U(T)^N = I", in);
    check_eq(r, US * US, images.d(ZMod(-1, N)), tol, "U(S)^2 = U(D(-1))", in);
    r.record(is_unitary(US, tol), "U(S) unitary", in, 0.0);
    r.record(is_unitary(UT, tol), "U(T) unitary", in, 0.0);

    std::vector<ZMod> units;
    for (std::int64_t a = 1; a < N; a += 2) units.emplace_back(a, N);
    for (const auto& a : units) {
        const std::string ina = in + " a=" + std::to_string(a.value());
        const auto& UD = images.d(a);
        r.record(is_unitary(UD, tol), "U(D(a)) unitary", ina, 0.0);
        check_eq(r, UD * UT, u_t_pow(f, params, a * a) * UD, tol, "U(D(a))U(T) = U(T)^{a^2}U(D(a))", ina);
        check_eq(r, US * UD, images.d(a.inverse()) * US, tol, "U(S)U(D(a)) = U(D(a^-1))U(S)", ina);
        check_eq(r, UD * images.d(a.inverse()), I, tol, "U(D(a))U(D(a^-1)) = I", ina);
        check_eq(r, UD, u_general(f, params, SL2Element::D(a)), tol, "U(D(a)) word = closed form", ina);
        for (const auto& b : units) {
            check_eq(r, UD * images.d(b), images.d(a * b), tol, "U(D(a))U(D(b)) = U(D(ab))",
                     ina + " b=" + std::to_string(b.value()));
        }
    }
    check_eq(r, images.d(ZMod(1, N)), I, tol, "U(D(1)) = I", in);

    const auto Q = q_matrix(f, params);
    const auto P = p_matrix(f, params);
    const auto In = identity(f, params.dim());
    check_eq(r, US_inv * kron(Q, In) * US, kron(In, P), tol, "U(S)^-1 (Q x I) U(S) = I x P", in);
    check_eq(r, US_inv * kron(In, Q) * US, kron(P, In), tol, "U(S)^-1 (I x Q) U(S) = P x I", in);
    if (params.p == 1) {
        const auto Fr = fourier(f, params);
        check_eq(r, twist_perm(f, params.dim()) * kron(Fr, Fr), US, tol, "tau (F x F) = U(S)", in);
    }
    auto sum = scalar_mul(f.zero(), I);
    const auto norm = f.inv_sqrt(N) * f.inv_sqrt(N);
    for (std::int64_t s1 = 0; s1 < N; ++s1) {
        for (std::int64_t s2 = 0; s2 < N; ++s2) {
            sum = sum + scalar_mul(norm * f.root(N, params.p * (s1 * s2 % N)), kron(pow(Q, s1), pow(Q, s2)));
        }
    }
    check_eq(r, sum, UT, tol, "N^-1 sum w^{p s1 s2} Q^s1 x Q^s2 = U(T)", in);
}

}  // namespace

VerifyReport group_relations_report(int n, std::int64_t p, Backend backend) {
    require_twisted_dim(n);
    const HWParams params = HWParams::power_of_two(n, p);
    VerifyReport r = with_field(backend, params.N, [&](const auto& f) {
        VerifyReport part;
        relations_checks(part, f, params, 1e-9);
        return part;
    });
    r.suite = "group-relations";
    r.params = {{"n", n}, {"p", p}, {"backend", to_string(backend)}};
    return r;
}

VerifyReport backend_agreement_report(int n, double tol) {
    require_twisted_dim(n);
    VerifyReport r;
    r.suite = "backend-agreement";
    r.params = {{"n", n}, {"tol", tol}};
    const FloatField ff;
    const auto agree = [&](const auto& exact, const FloatMatrix& fl, const std::string& family, const std::string& in) {
        check_eq(r, to_float(exact), fl, tol, family + " exact = float", in);
    };
    for (std::int64_t p : HWParams::faithful_labels(n)) {
        const HWParams params = HWParams::power_of_two(n, p);
        const ExactField ef = ExactField::for_modulus(params.N);
        const std::int64_t N = params.N;
        const std::string in = np_str(params);
        for (std::int64_t m = 0; m < N; ++m)
            for (std::int64_t a = 0; a < N; ++a)
                for (std::int64_t b = 0; b < N; ++b) {
                    const ZMod zm(m, N), za(a, N), zb(b, N);
                    agree(gamma_p(ef, params, zm, za, zb), gamma_p(ff, params, zm, za, zb), "gamma",
                          in + " g=" + std::to_string(m) + "," + std::to_string(a) + "," + std::to_string(b));
                }
        agree(q_matrix(ef, params), q_matrix(ff, params), "Q", in);
        agree(p_matrix(ef, params), p_matrix(ff, params), "P", in);
        agree(p_inverse_matrix(ef, params), p_inverse_matrix(ff, params), "P^-1", in);
        agree(fourier(ef, params), fourier(ff, params), "F", in);
        for (std::int64_t a = 0; a < N; ++a)
            for (std::int64_t b = 0; b < N; ++b) {
                const TorusPoint x(a, b, N);
                agree(j_twisted(ef, params, x), j_twisted(ff, params, x), "J", in + " x=" + x.to_string());
                agree(j_twisted_product(ef, params, x), j_twisted_product(ff, params, x), "J product",
                      in + " x=" + x.to_string());
            }
        agree(u_s(ef, params), u_s(ff, params), "U(S)", in);
        agree(u_t(ef, params), u_t(ff, params), "U(T)", in);
        for (std::int64_t a = 1; a < N; a += 2) {
            agree(u_d(ef, params, ZMod(a, N)), u_d(ff, params, ZMod(a, N)), "U(D)", in + " a=" + std::to_string(a));
        }
        for (const auto& A : sample_sl2(N, 7, 50)) {
            agree(u_general(ef, params, A), u_general(ff, params, A), "U(A)", in + " A=" + A.to_string());
            agree(u_word_oracle(ef, params, A), u_word_oracle(ff, params, A), "U(A) word", in + " A=" + A.to_string());
        }
    }
    if (n == 1) {
        for (std::int64_t N : {3, 5, 7}) {
            const ExactField ef = ExactField::for_modulus(N);
            for (std::int64_t a = 0; a < N; ++a)
                for (std::int64_t b = 0; b < N; ++b) {
                    const TorusPoint x(a, b, N);
                    agree(j_odd(ef, N, x), j_odd(ff, N, x), "J odd", "N=" + std::to_string(N) + " x=" + x.to_string());
                }
        }
    }
    return r;
}

}  // namespace fqm
