#include "fqm/magnetic.hpp"

#include <string>

namespace fqm {

template <class F>
MatrixOf<F> j_odd(const F& field, std::int64_t N, const TorusPoint& pt) {
    if (N % 2 == 0) {
        throw Error(ErrorCode::EvenModulus, "J_{r,s} needs 2^{-1} mod N; N = " + std::to_string(N) + " is even");
    }
    if (pt.modulus() != N) throw Error(ErrorCode::ModulusMismatch, "torus point modulus");
    const std::int64_t r = pt.r.value();
    const std::int64_t s = pt.s.value();
    const ZMod half = ZMod(2, N).inverse();
    const std::int64_t phase = (ZMod(r * s, N) * half).value();
    MatrixOf<F> out(static_cast<std::size_t>(N), field.zero());
    for (std::int64_t k = 0; k < N; ++k) {
        const std::int64_t j = floor_mod(k - r, N);
        out(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = field.root(N, phase + s * j);
    }
    return out;
}

template <class F>
MatrixOf<F> j_twisted(const F& field, const HWParams& params, const TorusPoint& pt) {
    if (!params.is_power_of_two()) throw Error(ErrorCode::InvalidParams, "twisted translations need N = 2^n");
    if (pt.modulus() != params.N) throw Error(ErrorCode::ModulusMismatch, "torus point modulus");
    const std::int64_t N = params.N;
    const std::int64_t p = params.p;
    const std::int64_t r = pt.r.value();
    const std::int64_t s = pt.s.value();
    MatrixOf<F> out(static_cast<std::size_t>(N * N), field.zero());
    for (std::int64_t k1 = 0; k1 < N; ++k1) {
        for (std::int64_t k2 = 0; k2 < N; ++k2) {
            const std::int64_t j1 = floor_mod(k1 - r, N);
            const std::int64_t j2 = floor_mod(k2 - r, N);
            const std::int64_t e = p * floor_mod(-s * r + (k1 + k2) * s, N);
            out(static_cast<std::size_t>(N * k1 + k2), static_cast<std::size_t>(N * j1 + j2)) = field.root(N, e);
        }
    }
    return out;
}

template <class F>
MatrixOf<F> j_twisted_product(const F& field, const HWParams& params, const TorusPoint& pt) {
    if (!params.is_power_of_two()) throw Error(ErrorCode::InvalidParams, "twisted translations need N = 2^n");
    const std::int64_t r = pt.r.value();
    const std::int64_t s = pt.s.value();
    const auto factor = pow(q_matrix(field, params), s) * pow(p_matrix(field, params), r);
    const auto phase = field.root(params.N, -params.p * (s * r % params.N));
    return scalar_mul(phase, kron(factor, factor));
}

#define FQM_INSTANTIATE_MAGNETIC(F)                                                         \
    template MatrixOf<F> j_odd(const F&, std::int64_t, const TorusPoint&);                  \
    template MatrixOf<F> j_twisted(const F&, const HWParams&, const TorusPoint&);           \
    template MatrixOf<F> j_twisted_product(const F&, const HWParams&, const TorusPoint&);

FQM_INSTANTIATE_MAGNETIC(ExactField)
FQM_INSTANTIATE_MAGNETIC(FloatField)

}  // namespace fqm
