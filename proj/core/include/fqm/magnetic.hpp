#pragma once

#include "fqm/heisenberg.hpp"
#include "fqm/torus_point.hpp"

namespace fqm {

/// Odd-N magnetic translation J_{r,s} = ω^{rs/2} P^r Q^s (p = 1), with
/// entries ω^{rs·2^{-1}} ω^{sj} δ_{j, k-r}. Throws EvenModulus for even N,
/// where 2 has no inverse.
template <class F>
MatrixOf<F> j_odd(const F& field, std::int64_t N, const TorusPoint& pt);

/// Twisted magnetic translation on V^p ⊗ V^p, built from the closed form
///   (J^p_{r,s})_{N k1 + k2, N j1 + j2} = ω^{p[-sr + (k1+k2)s]} δ_{k1-r,j1} δ_{k2-r,j2}.
template <class F>
MatrixOf<F> j_twisted(const F& field, const HWParams& params, const TorusPoint& pt);

/// The same operator as the product ω^{-psr} (Q^s P^r ⊗ Q^s P^r).
template <class F>
MatrixOf<F> j_twisted_product(const F& field, const HWParams& params, const TorusPoint& pt);

#define FQM_DECLARE_MAGNETIC(F)                                                                    \
    extern template MatrixOf<F> j_odd(const F&, std::int64_t, const TorusPoint&);                  \
    extern template MatrixOf<F> j_twisted(const F&, const HWParams&, const TorusPoint&);           \
    extern template MatrixOf<F> j_twisted_product(const F&, const HWParams&, const TorusPoint&);

FQM_DECLARE_MAGNETIC(ExactField)
FQM_DECLARE_MAGNETIC(FloatField)
#undef FQM_DECLARE_MAGNETIC

}  // namespace fqm
