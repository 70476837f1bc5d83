#include "fqm/metaplectic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fqm/parallel.hpp"

namespace fqm {

MetaplecticRep MetaplecticRep::twisted(const HWParams& params) {
    if (!params.is_power_of_two()) throw Error(ErrorCode::InvalidParams, "twisted_even needs N = 2^n");
    return {params, RepFlavor::twisted_even};
}

MetaplecticRep MetaplecticRep::weil(std::int64_t N) { return {HWParams::odd_prime(N), RepFlavor::weil_odd}; }

std::size_t MetaplecticRep::dim() const noexcept {
    return flavor == RepFlavor::twisted_even ? params.dim() * params.dim() : params.dim();
}

std::string_view to_string(UBranch b) noexcept {
    switch (b) {
        case UBranch::odd_sum: return "d_odd_sum";
        case UBranch::odd_closed: return "d_odd_closed";
        case UBranch::odd_c_zero: return "d_odd_c_zero";
        case UBranch::even: return "d_even";
    }
    return "unknown";
}

UBranch select_branch(const SL2Element& A) {
    if (A.d().is_unit()) {
        if (A.c().is_zero()) return UBranch::odd_c_zero;
        if ((A.c() * A.d().inverse()).is_odd()) return UBranch::odd_closed;
        return UBranch::odd_sum;
    }
    if (A.c().is_unit()) return UBranch::even;
    throw Error(ErrorCode::BadBranch, "neither c nor d is a unit for " + A.to_string());
}

namespace {

void require_twisted(const HWParams& params) {
    if (!params.is_power_of_two()) throw Error(ErrorCode::InvalidParams, "twisted representation needs N = 2^n");
}

void require_modulus(const HWParams& params, std::int64_t N) {
    if (N != params.N) {
        throw Error(ErrorCode::ModulusMismatch,
                    "element mod " + std::to_string(N) + " vs representation mod " + std::to_string(params.N));
    }
}

std::size_t idx(std::int64_t N, std::int64_t k1, std::int64_t k2) { return static_cast<std::size_t>(N * k1 + k2); }

}  // namespace

template <class F>
MatrixOf<F> u_s(const F& field, const HWParams& params) {
    require_twisted(params);
    const std::int64_t N = params.N;
    const auto norm = field.inv_sqrt(N) * field.inv_sqrt(N);
    MatrixOf<F> out(static_cast<std::size_t>(N * N), field.zero());
    for (std::int64_t k1 = 0; k1 < N; ++k1) {
        for (std::int64_t k2 = 0; k2 < N; ++k2) {
            for (std::int64_t j1 = 0; j1 < N; ++j1) {
                for (std::int64_t j2 = 0; j2 < N; ++j2) {
                    const std::int64_t e = params.p * ((k1 * j2 + k2 * j1) % N);
                    out(idx(N, k1, k2), idx(N, j1, j2)) = norm * field.root(N, e);
                }
            }
        }
    }
    out.set_label("U(S)");
    return out;
}

template <class F>
MatrixOf<F> u_t_pow(const F& field, const HWParams& params, const ZMod& k) {
    require_twisted(params);
    require_modulus(params, k.modulus());
    const std::int64_t N = params.N;
    MatrixOf<F> out(static_cast<std::size_t>(N * N), field.zero());
    for (std::int64_t k1 = 0; k1 < N; ++k1) {
        for (std::int64_t k2 = 0; k2 < N; ++k2) {
            const std::int64_t e = -params.p * (k.value() * (k1 * k2 % N) % N);
            out(idx(N, k1, k2), idx(N, k1, k2)) = field.root(N, e);
        }
    }
    return out;
}

template <class F>
MatrixOf<F> u_t(const F& field, const HWParams& params) {
    auto out = u_t_pow(field, params, ZMod(1, params.N));
    out.set_label("U(T)");
    return out;
}

template <class F>
WordImages<F>::WordImages(const F& field, const HWParams& params)
    : field_(field), params_(params), s_(u_s(field, params)), s_inv_(pow(s_, 3)), s2_(s_ * s_) {}

template <class F>
const MatrixOf<F>& WordImages<F>::d(const ZMod& a) {
    require_modulus(params_, a.modulus());
    if (!a.is_unit()) throw Error(ErrorCode::NotAUnit, "D(a) needs a unit, got " + std::to_string(a.value()));
    auto it = d_cache_.find(a.value());
    if (it == d_cache_.end()) it = d_cache_.emplace(a.value(), word(dilatation_word(a))).first;
    return it->second;
}

template <class F>
MatrixOf<F> WordImages<F>::token(const Token& tok) {
    switch (tok.kind) {
        case TokenKind::T: return t(tok.arg);
        case TokenKind::S: return s_;
        case TokenKind::SInv: return s_inv_;
        case TokenKind::S2: return s2_;
        case TokenKind::D: return d(tok.arg);
    }
    throw Error(ErrorCode::Unreachable, "unknown token");
}

template <class F>
MatrixOf<F> WordImages<F>::word(const GeneratorWord& w) {
    MatrixOf<F> acc = identity(field_, params_.dim() * params_.dim());
    for (const Token& tok : w) acc = acc * token(tok);
    return acc;
}

template <class F>
MatrixOf<F> u_d(const F& field, const HWParams& params, const ZMod& a) {
    WordImages<F> images(field, params);
    auto out = images.d(a);
    out.set_label("U(D(" + std::to_string(a.value()) + "))");
    return out;
}

template <class F>
MatrixOf<F> u_word_oracle(const F& field, const HWParams& params, const SL2Element& A) {
    require_twisted(params);
    require_modulus(params, A.modulus());
    WordImages<F> images(field, params);
    auto out = images.word(decompose(A).word);
    out.set_label("word:" + A.to_string());
    return out;
}

namespace {

template <class F>
MatrixOf<F> closed_odd_sum(const F& field, const HWParams& params, const SL2Element& A) {
    const std::int64_t N = params.N;
    const std::int64_t p = params.p;
    const ZMod d_inv = A.d().inverse();
    const std::int64_t bd = (A.b() * d_inv).value();
    const std::int64_t cd = (A.c() * d_inv).value();
    const std::int64_t di = d_inv.value();
    const auto norm = field.inv_sqrt(N) * field.inv_sqrt(N);
    MatrixOf<F> out(static_cast<std::size_t>(N * N), field.zero());
    for (std::int64_t k1 = 0; k1 < N; ++k1) {
        for (std::int64_t j1 = 0; j1 < N; ++j1) {
            // -d^{-1} k1 + c d^{-1} r + j1 == 0
            const auto rs = solve_linear_congruence(cd, floor_mod(di * k1 - j1, N), N);
            if (rs.empty()) continue;
            for (std::int64_t k2 = 0; k2 < N; ++k2) {
                for (std::int64_t j2 = 0; j2 < N; ++j2) {
                    auto sum = field.zero();
                    for (std::int64_t r : rs) {
                        const std::int64_t e = -bd * (k1 * k2 % N) + floor_mod(-di * k2 + j2, N) * r;
                        sum = sum + field.root(N, p * floor_mod(e, N));
                    }
                    out(idx(N, k1, k2), idx(N, j1, j2)) = norm * sum;
                }
            }
        }
    }
    return out;
}

template <class F>
MatrixOf<F> closed_odd_closed(const F& field, const HWParams& params, const SL2Element& A) {
    const std::int64_t N = params.N;
    const ZMod d_inv = A.d().inverse();
    const ZMod cd = A.c() * d_inv;
    const std::int64_t t1 = (A.b() * d_inv + (A.c() * A.d()).inverse()).value();
    const std::int64_t t2 = cd.inverse().value();
    const std::int64_t t3 = A.c().inverse().value();
    const auto norm = field.inv_sqrt(N) * field.inv_sqrt(N);
    MatrixOf<F> out(static_cast<std::size_t>(N * N), field.zero());
    for (std::int64_t k1 = 0; k1 < N; ++k1) {
        for (std::int64_t k2 = 0; k2 < N; ++k2) {
            for (std::int64_t j1 = 0; j1 < N; ++j1) {
                for (std::int64_t j2 = 0; j2 < N; ++j2) {
                    const std::int64_t e =
                        -t1 * (k1 * k2 % N) - t2 * (j1 * j2 % N) + t3 * ((k2 * j1 + j2 * k1) % N);
                    out(idx(N, k1, k2), idx(N, j1, j2)) = norm * field.root(N, params.p * floor_mod(e, N));
                }
            }
        }
    }
    return out;
}

template <class F>
MatrixOf<F> closed_c_zero(const F& field, const HWParams& params, const SL2Element& A) {
    const std::int64_t N = params.N;
    const ZMod d_inv = A.d().inverse();
    const std::int64_t bd = (A.b() * d_inv).value();
    MatrixOf<F> out(static_cast<std::size_t>(N * N), field.zero());
    for (std::int64_t k1 = 0; k1 < N; ++k1) {
        for (std::int64_t k2 = 0; k2 < N; ++k2) {
            const std::int64_t j1 = (d_inv * k1).value();
            const std::int64_t j2 = (d_inv * k2).value();
            out(idx(N, k1, k2), idx(N, j1, j2)) = field.root(N, -params.p * (bd * (k1 * k2 % N) % N));
        }
    }
    return out;
}

template <class F>
MatrixOf<F> closed_even(const F& field, const HWParams& params, const SL2Element& A) {
    const std::int64_t N = params.N;
    const ZMod c_inv = A.c().inverse();
    const std::int64_t ac = (A.a() * c_inv).value();
    const std::int64_t ci = c_inv.value();
    const std::int64_t dc = (A.d() * c_inv).value();
    const auto norm = field.inv_sqrt(N) * field.inv_sqrt(N);
    MatrixOf<F> out(static_cast<std::size_t>(N * N), field.zero());
    for (std::int64_t k1 = 0; k1 < N; ++k1) {
        for (std::int64_t k2 = 0; k2 < N; ++k2) {
            for (std::int64_t j1 = 0; j1 < N; ++j1) {
                for (std::int64_t j2 = 0; j2 < N; ++j2) {
                    const std::int64_t e =
                        -ac * (k1 * k2 % N) + ci * ((k1 * j2 + k2 * j1) % N) - dc * (j1 * j2 % N);
                    out(idx(N, k1, k2), idx(N, j1, j2)) = norm * field.root(N, params.p * floor_mod(e, N));
                }
            }
        }
    }
    return out;
}

}  // namespace

template <class F>
MatrixOf<F> u_a_closed(const F& field, const HWParams& params, const SL2Element& A, UBranch branch) {
    require_twisted(params);
    require_modulus(params, A.modulus());
    const auto bad = [&](const char* why) {
        return Error(ErrorCode::BadBranch, std::string(to_string(branch)) + " " + why + " for " + A.to_string());
    };
    MatrixOf<F> out(1, field.zero());
    switch (branch) {
        case UBranch::odd_sum:
            if (!A.d().is_unit()) throw bad("needs d odd");
            out = closed_odd_sum(field, params, A);
            break;
        case UBranch::odd_closed:
            if (!A.d().is_unit() || !(A.c() * A.d().inverse()).is_odd()) throw bad("needs d odd and c/d odd");
            out = closed_odd_closed(field, params, A);
            break;
        case UBranch::odd_c_zero:
            if (!A.d().is_unit() || !A.c().is_zero()) throw bad("needs d odd and c = 0");
            out = closed_c_zero(field, params, A);
            break;
        case UBranch::even:
            if (A.d().is_unit() || !A.c().is_unit()) throw bad("needs d even and c odd");
            out = closed_even(field, params, A);
            break;
    }
    out.set_label(std::string(to_string(branch)));
    return out;
}

template <class F>
MatrixOf<F> u_general(const F& field, const HWParams& params, const SL2Element& A) {
    return u_a_closed(field, params, A, select_branch(A));
}

template <class F>
VerifyReport verify_metaplectic(const F& field, const MatrixOf<F>& U, const SL2Element& A, const MetaplecticRep& rep,
                                double tol) {
    require_modulus(rep.params, A.modulus());
    if (U.dim() != rep.dim()) {
        throw Error(ErrorCode::DimMismatch,
                    "U has dim " + std::to_string(U.dim()) + ", representation needs " + std::to_string(rep.dim()));
    }
    const std::int64_t N = rep.params.N;
    const auto J = [&](const TorusPoint& x) {
        return rep.flavor == RepFlavor::twisted_even ? j_twisted(field, rep.params, x) : j_odd(field, N, x);
    };
    struct Slot {
        bool ok = false;
        double dev = 0.0;
    };
    const std::size_t d = U.dim();
    std::vector<Slot> slots(static_cast<std::size_t>(N * N));
    parallel_for(slots.size(), [&](std::size_t i) {
        const TorusPoint x(static_cast<std::int64_t>(i) / N, static_cast<std::int64_t>(i) % N, N);
        // Both translations are monomial: (J U)_{kj} = J_{k,c(k)} U_{c(k),j} and
        // (U J')_{kj} = U_{k,c'^{-1}(j)} J'_{c'^{-1}(j),j}.
        const auto lhs_j = J(x);
        const auto rhs_j = J(act_on_point(A, x));
        std::vector<std::size_t> col(d), row_of(d);
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                if (!scalar_is_zero(lhs_j(k, j))) col[k] = j;
                if (!scalar_is_zero(rhs_j(k, j))) row_of[j] = k;
            }
        }
        Slot slot{true, 0.0};
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                const auto lhs = lhs_j(k, col[k]) * U(col[k], j);
                const auto rhs = U(k, row_of[j]) * rhs_j(row_of[j], j);
                if constexpr (F::backend == Backend::exact) {
                    if (!(lhs == rhs)) {
                        slot.ok = false;
                        slot.dev = std::max(slot.dev, std::abs(lhs.to_complex() - rhs.to_complex()));
                    }
                } else {
                    slot.dev = std::max(slot.dev, std::abs(lhs - rhs));
                }
            }
        }
        if constexpr (F::backend == Backend::floating) slot.ok = slot.dev <= tol;
        slots[i] = slot;
    });
    VerifyReport report;
    report.suite = "metaplectic";
    report.params = {{"N", N}, {"p", rep.params.p}, {"A", A.to_string()}};
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const TorusPoint x(static_cast<std::int64_t>(i) / N, static_cast<std::int64_t>(i) % N, N);
        report.record(slots[i].ok, "U^-1 J_x U = J_xA", "A=" + A.to_string() + " x=" + x.to_string(), slots[i].dev);
    }
    return report;
}

#define FQM_INSTANTIATE_METAPLECTIC(F)                                                                  \
    template MatrixOf<F> u_s(const F&, const HWParams&);                                                \
    template MatrixOf<F> u_t(const F&, const HWParams&);                                                \
    template MatrixOf<F> u_t_pow(const F&, const HWParams&, const ZMod&);                               \
    template MatrixOf<F> u_d(const F&, const HWParams&, const ZMod&);                                   \
    template class WordImages<F>;                                                                       \
    template MatrixOf<F> u_word_oracle(const F&, const HWParams&, const SL2Element&);                   \
    template MatrixOf<F> u_a_closed(const F&, const HWParams&, const SL2Element&, UBranch);             \
    template MatrixOf<F> u_general(const F&, const HWParams&, const SL2Element&);                       \
    template VerifyReport verify_metaplectic(const F&, const MatrixOf<F>&, const SL2Element&,           \
                                             const MetaplecticRep&, double);

FQM_INSTANTIATE_METAPLECTIC(ExactField)
FQM_INSTANTIATE_METAPLECTIC(FloatField)

// Odd prime Weil representation.

namespace {

void require_odd_prime(std::int64_t N) {
    if (!is_odd_prime(N)) throw Error(ErrorCode::InvalidParams, std::to_string(N) + " is not an odd prime");
}

Complex brace(std::int64_t N) { return N % 4 == 1 ? Complex{1.0, 0.0} : Complex{0.0, -1.0}; }

Complex omega(std::int64_t N, std::int64_t e) { return FloatField{}.root(N, e); }

}  // namespace

Complex weil_sigma(std::int64_t N, std::int64_t r) {
    require_odd_prime(N);
    return static_cast<double>(jacobi_symbol(r, N)) * brace(N);
}

FloatMatrix weil_odd_s(std::int64_t N) {
    require_odd_prime(N);
    const Complex it = N % 4 == 1 ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
    const Complex pre = (N % 2 == 0 ? 1.0 : -1.0) * it / std::sqrt(static_cast<double>(N));
    FloatMatrix out(static_cast<std::size_t>(N), Complex{});
    for (std::int64_t l = 0; l < N; ++l) {
        for (std::int64_t m = 0; m < N; ++m) out(l, m) = pre * omega(N, l * m);
    }
    out.set_label("weil U(S)");
    return out;
}

namespace {

FloatMatrix weil_d_oriented(std::int64_t N, const ZMod& a, bool inverse_orientation) {
    require_odd_prime(N);
    if (a.modulus() != N) throw Error(ErrorCode::ModulusMismatch, "D(a) modulus");
    if (!a.is_unit()) throw Error(ErrorCode::NotAUnit, "D(a) needs a unit");
    FloatMatrix out(static_cast<std::size_t>(N), Complex{});
    const ZMod one(1, N);
    // σ(0) vanishes; D(1) is pinned to the identity.
    const Complex phase = a == one ? Complex{1.0} : weil_sigma(N, 1) * weil_sigma(N, (ZMod(2, N) - a - a.inverse()).value());
    const ZMod shift = inverse_orientation ? a.inverse() : a;
    for (std::int64_t m = 0; m < N; ++m) out((shift * m).value(), m) = phase;
    return out;
}

}  // namespace

FloatMatrix weil_odd_d(std::int64_t N, const ZMod& a) {
    auto out = weil_d_oriented(N, a, true);
    out.set_label("weil U(D(" + std::to_string(a.value()) + "))");
    return out;
}

FloatMatrix weil_odd_d_printed(std::int64_t N, const ZMod& a) { return weil_d_oriented(N, a, false); }

FloatMatrix weil_odd_generic(std::int64_t N, const SL2Element& A) {
    require_odd_prime(N);
    if (A.modulus() != N) throw Error(ErrorCode::ModulusMismatch, "element modulus");
    if (A.c().is_zero()) throw Error(ErrorCode::NonGeneric, "generic formula needs c != 0, got " + A.to_string());
    const std::int64_t inv2c = (ZMod(2, N) * A.c()).inverse().value();
    const Complex pre =
        static_cast<double>(jacobi_symbol((-2 * A.c()).value(), N)) * brace(N) / std::sqrt(static_cast<double>(N));
    const std::int64_t a = A.a().value();
    const std::int64_t d = A.d().value();
    FloatMatrix out(static_cast<std::size_t>(N), Complex{});
    for (std::int64_t l = 0; l < N; ++l) {
        for (std::int64_t m = 0; m < N; ++m) {
            const std::int64_t q = floor_mod(a * l % N * l + d * m % N * m - 2 * l * m, N);
            out(l, m) = pre * omega(N, -(q * inv2c % N));
        }
    }
    out.set_label("weil generic " + A.to_string());
    return out;
}

FloatMatrix weil_odd_general(std::int64_t N, const SL2Element& A) {
    if (!A.c().is_zero()) return weil_odd_generic(N, A);
    const ZMod a = A.a();
    const ZMod k = a.inverse() * A.b();
    // U(T^k) = U(S)^{-1} U(S T^k); S T^k = [[0, -1], [1, k]] is generic.
    const SL2Element s = SL2Element::S(N);
    const FloatMatrix ut = dagger(weil_odd_generic(N, s)) * weil_odd_generic(N, s * SL2Element::T(N, k.value()));
    auto out = weil_odd_d(N, a) * ut;
    out.set_label("weil D(a)T^k " + A.to_string());
    return out;
}

}  // namespace fqm
