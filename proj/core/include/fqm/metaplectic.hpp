#pragma once

#include <map>
#include <string_view>

#include "fqm/heisenberg.hpp"
#include "fqm/magnetic.hpp"
#include "fqm/report.hpp"
#include "fqm/sl2.hpp"

namespace fqm {

enum class RepFlavor { twisted_even, weil_odd };

/// twisted_even acts on C^{2^n} ⊗ C^{2^n}; weil_odd on C^N for an odd prime N.
struct MetaplecticRep {
    HWParams params;
    RepFlavor flavor;

    static MetaplecticRep twisted(const HWParams& params);
    static MetaplecticRep weil(std::int64_t N);
    std::size_t dim() const noexcept;
};

/// Closed-form evaluation route for U(A), N = 2^n.
enum class UBranch {
    odd_sum,     // d odd, general r-sum
    odd_closed,  // d odd and c·d^{-1} odd: sum collapsed to a single phase
    odd_c_zero,  // d odd and c = 0: phase times permutation
    even,        // d even, c odd: triple-phase form
};

std::string_view to_string(UBranch b) noexcept;
UBranch select_branch(const SL2Element& A);

// Twisted generators. Indices are N k1 + k2 on both sides.

/// U(S) = 2^{-n} ω^{p(k1 j2 + k2 j1)}.
template <class F>
MatrixOf<F> u_s(const F& field, const HWParams& params);

/// U(T) = diag ω^{-p k1 k2}.
template <class F>
MatrixOf<F> u_t(const F& field, const HWParams& params);

/// U(T)^k = diag ω^{-p k k1 k2}, for any integer k.
template <class F>
MatrixOf<F> u_t_pow(const F& field, const HWParams& params, const ZMod& k);

/// U(D(a)) as the image of T^{-a} S T^{-a^{-1}} S^{-1} T^{-a} S^{-1}.
template <class F>
MatrixOf<F> u_d(const F& field, const HWParams& params, const ZMod& a);

/// Images of generator words. U(S^{-1}) = U(S)^3 and U(S^2) = U(S)^2; dilatation
/// images are built once per unit and reused.
template <class F>
class WordImages {
public:
    WordImages(const F& field, const HWParams& params);

    const MatrixOf<F>& s() const { return s_; }
    const MatrixOf<F>& s_inv() const { return s_inv_; }
    const MatrixOf<F>& s2() const { return s2_; }
    MatrixOf<F> t(const ZMod& k) const { return u_t_pow(field_, params_, k); }
    const MatrixOf<F>& d(const ZMod& a);

    MatrixOf<F> token(const Token& tok);
    MatrixOf<F> word(const GeneratorWord& w);

private:
    F field_;
    HWParams params_;
    MatrixOf<F> s_;
    MatrixOf<F> s_inv_;
    MatrixOf<F> s2_;
    std::map<std::int64_t, MatrixOf<F>> d_cache_;
};

/// U(A) as the product of the images of decompose(A).
template <class F>
MatrixOf<F> u_word_oracle(const F& field, const HWParams& params, const SL2Element& A);

/// U(A) from the closed form of the given branch; BadBranch if A does not meet
/// the branch's preconditions.
template <class F>
MatrixOf<F> u_a_closed(const F& field, const HWParams& params, const SL2Element& A, UBranch branch);

/// Dispatches to select_branch(A); the label records the branch that fired.
template <class F>
MatrixOf<F> u_general(const F& field, const HWParams& params, const SL2Element& A);

/// Checks U^{-1} J_x U = J_{xA} for every x in Z_N^2, in the multiplied-out form
/// J_x U = U J_{xA} (equivalent for invertible U). One check per x, merged in
/// lexicographic (r, s) order.
template <class F>
VerifyReport verify_metaplectic(const F& field, const MatrixOf<F>& U, const SL2Element& A, const MetaplecticRep& rep,
                                double tol = 0.0);

// Odd prime Weil representation (float backend).

/// σ(r) = (r | N) · {1 if N = 4k+1, -i if N = 4k-1}.
Complex weil_sigma(std::int64_t N, std::int64_t r);

/// U(S)_{lm} = (-1)^N i^t N^{-1/2} ω^{lm}, t = 0 for N = 4k+1 and 1 for N = 4k-1.
FloatMatrix weil_odd_s(std::int64_t N);

/// U(D(a))_{lm} = σ(1) σ(2 - a - a^{-1}) δ_{l, a^{-1} m}; U(D(1)) = I.
FloatMatrix weil_odd_d(std::int64_t N, const ZMod& a);

/// The δ_{l, a m} orientation; conjugates J_x to J_{x D(a^{-1})}.
FloatMatrix weil_odd_d_printed(std::int64_t N, const ZMod& a);

/// U(A)_{lm} = N^{-1/2} (-2c | N) {1, -i} ω^{-(a l^2 + d m^2 - 2 l m)/(2c)}; NonGeneric when c = 0.
FloatMatrix weil_odd_generic(std::int64_t N, const SL2Element& A);

/// Total map: generic formula for c != 0, and D(a) U(T)^{a^{-1} b} for c = 0
/// with U(T) = U(S)^{-1} U(ST) taken from the generic formula.
FloatMatrix weil_odd_general(std::int64_t N, const SL2Element& A);

#define FQM_DECLARE_METAPLECTIC(F)                                                                             \
    extern template MatrixOf<F> u_s(const F&, const HWParams&);                                                \
    extern template MatrixOf<F> u_t(const F&, const HWParams&);                                                \
    extern template MatrixOf<F> u_t_pow(const F&, const HWParams&, const ZMod&);                               \
    extern template MatrixOf<F> u_d(const F&, const HWParams&, const ZMod&);                                   \
    extern template class WordImages<F>;                                                                       \
    extern template MatrixOf<F> u_word_oracle(const F&, const HWParams&, const SL2Element&);                   \
    extern template MatrixOf<F> u_a_closed(const F&, const HWParams&, const SL2Element&, UBranch);             \
    extern template MatrixOf<F> u_general(const F&, const HWParams&, const SL2Element&);                       \
    extern template VerifyReport verify_metaplectic(const F&, const MatrixOf<F>&, const SL2Element&,           \
                                                    const MetaplecticRep&, double);

FQM_DECLARE_METAPLECTIC(ExactField)
FQM_DECLARE_METAPLECTIC(FloatField)
#undef FQM_DECLARE_METAPLECTIC

}  // namespace fqm
