#include "fqm/heisenberg.hpp"

#include <string>

namespace fqm {

HWParams HWParams::power_of_two(int n, std::int64_t p) {
    if (n < 1 || n > 30) throw Error(ErrorCode::InvalidParams, "n must be in [1, 30], got " + std::to_string(n));
    const std::int64_t N = std::int64_t{1} << n;
    if (p < 1 || p >= N || p % 2 == 0) {
        throw Error(ErrorCode::InvalidParams,
                    "p must be odd in [1, " + std::to_string(N) + "), got " + std::to_string(p));
    }
    return {N, n, p};
}

HWParams HWParams::odd_prime(std::int64_t N) {
    if (!is_odd_prime(N)) throw Error(ErrorCode::InvalidParams, std::to_string(N) + " is not an odd prime");
    return {N, 0, 1};
}

std::vector<std::int64_t> HWParams::faithful_labels(int n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 1; p < (std::int64_t{1} << n); p += 2) out.push_back(p);
    return out;
}

namespace {

void require_modulus(const HWParams& params, const ZMod& x) {
    if (x.modulus() != params.N) {
        throw Error(ErrorCode::ModulusMismatch, "expected residues mod " + std::to_string(params.N));
    }
}

}  // namespace

template <class F>
MatrixOf<F> gamma_p(const F& field, const HWParams& params, const ZMod& m, const ZMod& r, const ZMod& s) {
    require_modulus(params, m);
    require_modulus(params, r);
    require_modulus(params, s);
    const std::int64_t N = params.N;
    const std::int64_t p = params.p;
    MatrixOf<F> out(params.dim(), field.zero());
    for (std::int64_t k = 0; k < N; ++k) {
        const std::int64_t j = floor_mod(k + s.value(), N);
        out(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) =
            field.root(N, p * m.value() + p * k % N * r.value());
    }
    return out;
}

template <class F>
MatrixOf<F> q_matrix(const F& field, const HWParams& params) {
    MatrixOf<F> out(params.dim(), field.zero());
    for (std::int64_t k = 0; k < params.N; ++k) {
        out(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = field.root(params.N, params.p * k);
    }
    return out;
}

template <class F>
MatrixOf<F> p_matrix(const F& field, const HWParams& params) {
    MatrixOf<F> out(params.dim(), field.zero());
    for (std::int64_t k = 0; k < params.N; ++k) {
        out(static_cast<std::size_t>(k), static_cast<std::size_t>(floor_mod(k - 1, params.N))) = field.one();
    }
    return out;
}

template <class F>
MatrixOf<F> p_inverse_matrix(const F& field, const HWParams& params) {
    MatrixOf<F> out(params.dim(), field.zero());
    for (std::int64_t k = 0; k < params.N; ++k) {
        out(static_cast<std::size_t>(k), static_cast<std::size_t>(floor_mod(k + 1, params.N))) = field.one();
    }
    return out;
}

template <class F>
typename F::Scalar z_phase(const F& field, const HWParams& params) {
    return field.root(params.N, params.p);
}

template <class F>
MatrixOf<F> fourier(const F& field, const HWParams& params) {
    const std::int64_t N = params.N;
    const auto norm = field.inv_sqrt(N);
    MatrixOf<F> out(params.dim(), field.zero());
    for (std::int64_t k = 0; k < N; ++k) {
        for (std::int64_t j = 0; j < N; ++j) {
            out(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = norm * field.root(N, k * j % N);
        }
    }
    return out;
}

template <class F>
std::vector<EigenPair<typename F::Scalar>> p_eigensystem(const F& field, const HWParams& params) {
    const std::int64_t N = params.N;
    const auto norm = field.inv_sqrt(N);
    std::vector<EigenPair<typename F::Scalar>> out;
    out.reserve(params.dim());
    for (std::int64_t k = 0; k < N; ++k) {
        std::vector<typename F::Scalar> v;
        v.reserve(params.dim());
        for (std::int64_t i = 0; i < N; ++i) v.push_back(norm * field.root(N, i * k % N));
        out.push_back({std::move(v), field.root(N, k)});
    }
    return out;
}

template <class S>
std::vector<S> apply(const Matrix<S>& m, const std::vector<S>& v) {
    if (v.size() != m.dim()) throw Error(ErrorCode::DimMismatch, "vector length");
    std::vector<S> out(m.dim(), m.zero_scalar());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (!scalar_is_zero(m(i, j))) out[i] = out[i] + m(i, j) * v[j];
        }
    }
    return out;
}

#define FQM_INSTANTIATE_HEISENBERG(F)                                                               \
    template MatrixOf<F> gamma_p(const F&, const HWParams&, const ZMod&, const ZMod&, const ZMod&); \
    template MatrixOf<F> q_matrix(const F&, const HWParams&);                                       \
    template MatrixOf<F> p_matrix(const F&, const HWParams&);                                       \
    template MatrixOf<F> p_inverse_matrix(const F&, const HWParams&);                               \
    template F::Scalar z_phase(const F&, const HWParams&);                                          \
    template MatrixOf<F> fourier(const F&, const HWParams&);                                        \
    template std::vector<EigenPair<F::Scalar>> p_eigensystem(const F&, const HWParams&);            \
    template std::vector<F::Scalar> apply(const MatrixOf<F>&, const std::vector<F::Scalar>&);

FQM_INSTANTIATE_HEISENBERG(ExactField)
FQM_INSTANTIATE_HEISENBERG(FloatField)

}  // namespace fqm
