#pragma once

#include <cstdint>
#include <vector>

#include "fqm/matrix.hpp"
#include "fqm/zmod.hpp"

namespace fqm {

/// Label of a faithful irrep Γ^p of HW_N. Either N = 2^n with p odd in [1, N),
/// or N an odd prime with p = 1.
struct HWParams {
    std::int64_t N;
    int n;  // log2 N, or 0 for odd prime N
    std::int64_t p;

    static HWParams power_of_two(int n, std::int64_t p);
    static HWParams odd_prime(std::int64_t N);

    bool is_power_of_two() const noexcept { return n > 0; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(N); }
    /// All odd p in [1, 2^n).
    static std::vector<std::int64_t> faithful_labels(int n);
};

template <class S>
struct EigenPair {
    std::vector<S> vector;
    S value;
};

// Conventions: Q = diag(ω^{pk}), P = δ_{k-1,j} = Γ^p(y^{-1}), and
// P^{-1} = δ_{k+1,j} = Γ^p(0,0,1) is the cyclic shift with ones above the diagonal.

/// Γ^p(z^m x^r y^s)_{kj} = ω^{pm} ω^{pkr} δ_{j, k+s}.
template <class F>
MatrixOf<F> gamma_p(const F& field, const HWParams& params, const ZMod& m, const ZMod& r, const ZMod& s);

template <class F>
MatrixOf<F> q_matrix(const F& field, const HWParams& params);

template <class F>
MatrixOf<F> p_matrix(const F& field, const HWParams& params);

template <class F>
MatrixOf<F> p_inverse_matrix(const F& field, const HWParams& params);

/// z = ω^p, the central element.
template <class F>
typename F::Scalar z_phase(const F& field, const HWParams& params);

/// (F)_{kj} = N^{-1/2} ω^{kj}.
template <class F>
MatrixOf<F> fourier(const F& field, const HWParams& params);

/// ψ_k = N^{-1/2}(1, ω^k, ..., ω^{(N-1)k}) with λ_k = ω^k. These are eigenpairs
/// of P^{-1}; P itself has P ψ_k = ω^{-k} ψ_k.
template <class F>
std::vector<EigenPair<typename F::Scalar>> p_eigensystem(const F& field, const HWParams& params);

template <class S>
std::vector<S> apply(const Matrix<S>& m, const std::vector<S>& v);

#define FQM_DECLARE_HEISENBERG(F)                                                                          \
    extern template MatrixOf<F> gamma_p(const F&, const HWParams&, const ZMod&, const ZMod&, const ZMod&); \
    extern template MatrixOf<F> q_matrix(const F&, const HWParams&);                                       \
    extern template MatrixOf<F> p_matrix(const F&, const HWParams&);                                       \
    extern template MatrixOf<F> p_inverse_matrix(const F&, const HWParams&);                               \
    extern template F::Scalar z_phase(const F&, const HWParams&);                                          \
    extern template MatrixOf<F> fourier(const F&, const HWParams&);                                        \
    extern template std::vector<EigenPair<F::Scalar>> p_eigensystem(const F&, const HWParams&);            \
    extern template std::vector<F::Scalar> apply(const MatrixOf<F>&, const std::vector<F::Scalar>&);

FQM_DECLARE_HEISENBERG(ExactField)
FQM_DECLARE_HEISENBERG(FloatField)
#undef FQM_DECLARE_HEISENBERG

}  // namespace fqm
