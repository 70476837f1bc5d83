#include "fqm/weilmod.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fqm/heisenberg.hpp"
#include "fqm/metaplectic.hpp"
#include "fqm/parallel.hpp"

namespace fqm {

namespace {

/// e^{2πi e/M} with e reduced in the integers first.
Complex root(std::int64_t M, std::int64_t e) { return FloatField{}.root(M, e); }

/// e^{πi(N+1) c k^2 / N} = e^{2πi [(N+1) c k^2 mod 2N] / 2N}.
Complex chirp_phase(std::int64_t N, std::int64_t c, std::int64_t k) {
    const std::int64_t M = 2 * N;
    const std::int64_t e = floor_mod(N + 1, M) * floor_mod(c, M) % M * (k * k % M) % M;
    return root(M, e);
}

}  // namespace

QuadraticModule QuadraticModule::case_one(int n) {
    if (n < 1 || n > 15) throw Error(ErrorCode::InvalidParams, "quadratic module needs 1 <= n <= 15");
    const std::int64_t N = std::int64_t{1} << n;
    QuadraticModule qm(N);
    if (n <= 3) {
        for (std::int64_t x1 = 0; x1 < N; ++x1) {
            for (std::int64_t x2 = 0; x2 < N; ++x2) {
                if (qm.q(-x1, -x2) != qm.q(x1, x2)) throw Error(ErrorCode::InvalidParams, "Q(-x) != Q(x)");
            }
        }
    }
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::int64_t> u(0, N - 1);
    for (int i = 0; i < 500; ++i) {
        const std::int64_t x1 = u(rng), x2 = u(rng), y1 = u(rng), y2 = u(rng), z1 = u(rng), z2 = u(rng);
        const bool additive = qm.b(x1 + y1, x2 + y2, z1, z2) == floor_mod(qm.b(x1, x2, z1, z2) + qm.b(y1, y2, z1, z2), N);
        const bool symmetric = qm.b(x1, x2, y1, y2) == qm.b(y1, y2, x1, x2);
        if (!additive || !symmetric) throw Error(ErrorCode::InvalidParams, "B is not bilinear");
    }
    return qm;
}

Complex alpha_q(const QuadraticModule& qm, const ZMod& a) {
    const std::int64_t N = qm.N();
    if (a.modulus() != N) throw Error(ErrorCode::ModulusMismatch, "alpha_q argument modulus");
    if (!a.is_unit()) throw Error(ErrorCode::NotAUnit, "alpha_q needs a unit, got " + std::to_string(a.value()));
    Complex sum{};
    for (std::int64_t x1 = 0; x1 < N; ++x1) {
        for (std::int64_t x2 = 0; x2 < N; ++x2) sum += root(N, a.value() * qm.q(x1, x2) % N);
    }
    return sum / std::sqrt(static_cast<double>(qm.order()));
}

FloatMatrix weil_generator_action(const QuadraticModule& qm, const Token& gen) {
    const std::int64_t N = qm.N();
    const auto d = static_cast<std::size_t>(qm.order());
    const auto at = [N](std::int64_t x1, std::int64_t x2) { return static_cast<std::size_t>(N * x1 + x2); };
    FloatMatrix out(d, Complex{});
    const ZMod minus_one(-1, N);
    switch (gen.kind) {
        case TokenKind::T:
            for (std::int64_t x1 = 0; x1 < N; ++x1) {
                for (std::int64_t x2 = 0; x2 < N; ++x2) out(at(x1, x2), at(x1, x2)) = root(N, qm.q(x1, x2));
            }
            out.set_label("Gamma(T)");
            return out;
        case TokenKind::SInv: {
            const Complex pre = alpha_q(qm, minus_one) / std::sqrt(static_cast<double>(qm.order()));
            for (std::int64_t x1 = 0; x1 < N; ++x1) {
                for (std::int64_t x2 = 0; x2 < N; ++x2) {
                    for (std::int64_t y1 = 0; y1 < N; ++y1) {
                        for (std::int64_t y2 = 0; y2 < N; ++y2) out(at(x1, x2), at(y1, y2)) = pre * root(N, qm.b(x1, x2, y1, y2));
                    }
                }
            }
            out.set_label("Gamma(S^-1)");
            return out;
        }
        case TokenKind::D: {
            const ZMod a = gen.arg;
            const Complex pre = alpha_q(qm, a) * alpha_q(qm, minus_one);
            const ZMod a_inv = a.inverse();
            for (std::int64_t x1 = 0; x1 < N; ++x1) {
                for (std::int64_t x2 = 0; x2 < N; ++x2) {
                    out(at((a_inv * x1).value(), (a_inv * x2).value()), at(x1, x2)) = pre;
                }
            }
            out.set_label("Gamma(D(" + std::to_string(a.value()) + "))");
            return out;
        }
        default:
            throw Error(ErrorCode::InvalidParams, "Weil generator action is defined for T, S^-1 and D(a)");
    }
}

nlohmann::json weil_relation_table(const QuadraticModule& qm, double tol) {
    const std::int64_t N = qm.N();
    int n = 0;
    while ((std::int64_t{1} << n) < N) ++n;
    const HWParams params = HWParams::power_of_two(n, 1);
    const FloatField f;
    const auto scalar = [](const std::optional<Complex>& z) -> nlohmann::json {
        if (!z) return nullptr;
        return {{"re", z->real()}, {"im", z->imag()}};
    };
    nlohmann::json rows = nlohmann::json::array();
    const auto add = [&](const std::string& name, const Token& gen, const FloatMatrix& u, const FloatMatrix& u_inv) {
        const FloatMatrix g = weil_generator_action(qm, gen);
        rows.push_back({{"generator", name},
                        {"lambda_vs_U", scalar(proportionality(g, u, tol))},
                        {"lambda_vs_U_inverse", scalar(proportionality(g, u_inv, tol))}});
    };
    const FloatMatrix us = u_s(f, params);
    const FloatMatrix ut = u_t(f, params);
    add("T", Token::t(ZMod(1, N)), ut, dagger(ut));
    add("S^-1", Token::s_inv(N), pow(us, 3), us);
    WordImages<FloatField> images(f, params);
    for (std::int64_t a = 1; a < N; a += 2) {
        const ZMod z(a, N);
        const FloatMatrix ud = images.d(z);
        add("D(" + std::to_string(a) + ")", Token::dil(z), ud, dagger(ud));
    }
    return rows;
}

FloatMatrix pi_shift(std::int64_t N, std::int64_t r, std::int64_t s) {
    if (N < 2) throw Error(ErrorCode::InvalidModulus, "N must be >= 2");
    FloatMatrix out(static_cast<std::size_t>(N), Complex{});
    for (std::int64_t i = 0; i < N; ++i) {
        const std::int64_t j = floor_mod(i - r, N);
        out(i, j) = root(N, floor_mod(s, N) * j % N);
    }
    return out;
}

FloatMatrix chirp(std::int64_t N, std::int64_t c) {
    if (N < 2) throw Error(ErrorCode::InvalidModulus, "N must be >= 2");
    FloatMatrix out(static_cast<std::size_t>(N), Complex{});
    for (std::int64_t k = 0; k < N; ++k) out(k, k) = chirp_phase(N, c, k);
    return out;
}

std::int64_t chirp_bracket(std::int64_t N, std::int64_t c) noexcept { return floor_mod(c - 1, N) + 1; }

int theta_defect(std::int64_t N, std::int64_t c1, std::int64_t c2) {
    if (N < 2) throw Error(ErrorCode::InvalidModulus, "N must be >= 2");
    const std::int64_t e = floor_mod(c1, N + 1) + floor_mod(c2, N + 1) - floor_mod(c1 + c2, N + 1);
    return e % 2 == 0 ? 1 : -1;
}

double chirp_product_defect(std::int64_t N, std::int64_t c1, std::int64_t c2) {
    const std::int64_t b1 = chirp_bracket(N, c1);
    const std::int64_t b2 = chirp_bracket(N, c2);
    const int theta = theta_defect(N, b1, b2);
    double dev = 0.0;
    for (std::int64_t k = 0; k < N; ++k) {
        const double sign = (theta < 0 && (k * k) % 2 == 1) ? -1.0 : 1.0;
        const Complex lhs = chirp_phase(N, b1, k) * chirp_phase(N, b2, k);
        const Complex rhs = sign * chirp_phase(N, chirp_bracket(N, b1 + b2), k);
        dev = std::max(dev, std::abs(lhs - rhs));
    }
    return dev;
}

FloatMatrix feichtinger_u(std::int64_t N, const SL2Element& A, FeichtingerVariant variant) {
    if (A.modulus() != N) throw Error(ErrorCode::ModulusMismatch, "element modulus");
    if (!A.a().is_unit()) {
        throw Error(ErrorCode::IllFormed, "a = " + std::to_string(A.a().value()) + " has no inverse mod " + std::to_string(N));
    }
    const ZMod a_inv = A.a().inverse();
    const std::int64_t left = (A.c() * a_inv).value();
    const std::int64_t inner = (-(a_inv * A.b())).value();
    const std::int64_t theta = A.a().is_odd() ? 2 : 1;
    const std::int64_t right = floor_mod(-theta, N);
    std::vector<Complex> inner_chirp(static_cast<std::size_t>(N));
    for (std::int64_t l = 0; l < N; ++l) inner_chirp[l] = chirp_phase(N, inner, l);
    FloatMatrix out(static_cast<std::size_t>(N), Complex{});
    for (std::int64_t k = 0; k < N; ++k) {
        const std::int64_t ka = (a_inv * k).value();
        for (std::int64_t m = 0; m < N; ++m) {
            Complex sum{};
            for (std::int64_t l = 0; l < N; ++l) sum += root(N, l * floor_mod(ka - m, N) % N) * inner_chirp[l];
            Complex phase = chirp_phase(N, left, k);
            if (variant == FeichtingerVariant::literal) phase *= chirp_phase(N, right, m);
            out(k, m) = phase * sum / static_cast<double>(N);
        }
    }
    out.set_label(variant == FeichtingerVariant::literal ? "feichtinger literal" : "feichtinger");
    return out;
}

CharacterSample extract_psi(const FloatMatrix& U, const SL2Element& A, double tol) {
    const std::int64_t N = A.modulus();
    if (U.dim() != static_cast<std::size_t>(N)) throw Error(ErrorCode::DimMismatch, "U must have dim N");
    const FloatMatrix U_inv = inverse(U);
    const auto count = static_cast<std::size_t>(N * N);
    std::vector<std::optional<Complex>> slots(count);
    parallel_for(count, [&](std::size_t i) {
        const std::int64_t k = static_cast<std::int64_t>(i) / N;
        const std::int64_t l = static_cast<std::int64_t>(i) % N;
        const FloatMatrix conj = U * pi_shift(N, k, l) * U_inv;
        const ZMod kk(k, N), ll(l, N);
        const FloatMatrix target = pi_shift(N, (A.a() * kk + A.b() * ll).value(), (A.c() * kk + A.d() * ll).value());
        slots[i] = proportionality(conj, target, tol);
    });
    CharacterSample out{A, {}};
    for (std::size_t i = 0; i < count; ++i) {
        const std::int64_t k = static_cast<std::int64_t>(i) / N;
        const std::int64_t l = static_cast<std::int64_t>(i) % N;
        if (!slots[i]) {
            throw Error(ErrorCode::NotMetaplectic, "U pi(" + std::to_string(k) + "," + std::to_string(l) +
                                                       ") U^-1 is not proportional to the image shift for A=" +
                                                       A.to_string());
        }
        out.values[{k, l}] = *slots[i];
    }
    return out;
}

VerifyReport check_second_degree(const CharacterSample& psi, std::size_t samples, std::uint64_t seed, double tol) {
    const SL2Element& A = psi.A;
    const std::int64_t N = A.modulus();
    const std::int64_t a = A.a().value(), b = A.b().value(), c = A.c().value(), d = A.d().value();
    const std::int64_t s11 = a * c % N, s12 = b * c % N, s21 = floor_mod(a * d - 1, N), s22 = b * d % N;
    VerifyReport report;
    report.suite = "second-degree-character";
    report.params = {{"N", N}, {"A", A.to_string()}};
    for (const auto& [kl, v] : psi.values) {
        const double dev = std::abs(std::abs(v) - 1.0);
        report.record(dev <= tol, "|psi| = 1", "k,l=" + std::to_string(kl.first) + "," + std::to_string(kl.second), dev);
    }
    const auto check = [&](std::int64_t k, std::int64_t l, std::int64_t k2, std::int64_t l2) {
        const Complex lhs = psi.values.at({floor_mod(k + k2, N), floor_mod(l + l2, N)});
        const std::int64_t e = (k * ((s11 * k2 + s12 * l2) % N) + l * ((s21 * k2 + s22 * l2) % N)) % N;
        const Complex rhs = psi.values.at({k, l}) * psi.values.at({k2, l2}) * root(N, e);
        const double dev = std::abs(lhs - rhs);
        report.record(dev <= tol, "psi(x+y) = psi(x)psi(y)e(x.sigma.y)",
                      "x=(" + std::to_string(k) + "," + std::to_string(l) + ") y=(" + std::to_string(k2) + "," +
                          std::to_string(l2) + ")",
                      dev);
    };
    if (N <= 4) {
        for (std::int64_t k = 0; k < N; ++k)
            for (std::int64_t l = 0; l < N; ++l)
                for (std::int64_t k2 = 0; k2 < N; ++k2)
                    for (std::int64_t l2 = 0; l2 < N; ++l2) check(k, l, k2, l2);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> u(0, N - 1);
        for (std::size_t i = 0; i < samples; ++i) {
            const std::int64_t k = u(rng), l = u(rng), k2 = u(rng), l2 = u(rng);
            check(k, l, k2, l2);
        }
    }
    return report;
}

std::optional<HomomorphismWitness> find_non_homomorphism(std::int64_t N, double tol) {
    std::vector<SL2Element> group;
    for (const auto& g : enumerate_sl2(N)) {
        if (g.a().is_unit()) group.push_back(g);
    }
    std::vector<FloatMatrix> us;
    us.reserve(group.size());
    for (const auto& g : group) us.push_back(feichtinger_u(N, g));
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = 0; j < group.size(); ++j) {
            const SL2Element AB = group[i] * group[j];
            if (!AB.a().is_unit()) continue;
            const double defect = phase_defect_norm(us[i] * us[j], feichtinger_u(N, AB));
            if (defect > tol) return HomomorphismWitness{group[i], group[j], defect};
        }
    }
    return std::nullopt;
}

nlohmann::json to_json(const HomomorphismWitness& w) {
    const auto entries = [](const SL2Element& g) {
        return nlohmann::json::array({g.a().value(), g.b().value(), g.c().value(), g.d().value()});
    };
    return {{"N", w.A.modulus()}, {"pair", {entries(w.A), entries(w.B)}}, {"defect_norm", w.defect_norm}};
}

}  // namespace fqm
