#pragma once

#include <map>
#include <optional>
#include <utility>

#include <nlohmann/json.hpp>

#include "fqm/matrix.hpp"
#include "fqm/report.hpp"
#include "fqm/sl2.hpp"

namespace fqm {

/// M = Z_N x Z_N, N = 2^n, with Q(x) = x1 x2 / N. Basis index of x is N x1 + x2.
class QuadraticModule {
public:
    /// Checks Q(-x) = Q(x) exhaustively (n <= 3) and bilinearity of B on 500
    /// seeded triples; InvalidParams if either fails.
    static QuadraticModule case_one(int n);

    std::int64_t N() const noexcept { return N_; }
    std::int64_t order() const noexcept { return N_ * N_; }
    /// Numerator of Q: x1 x2 mod N.
    std::int64_t q(std::int64_t x1, std::int64_t x2) const noexcept { return floor_mod(x1 * x2, N_); }
    /// Numerator of B(x, y) = Q(x + y) - Q(x) - Q(y).
    std::int64_t b(std::int64_t x1, std::int64_t x2, std::int64_t y1, std::int64_t y2) const noexcept {
        return floor_mod(q(x1 + y1, x2 + y2) - q(x1, x2) - q(y1, y2), N_);
    }

private:
    explicit QuadraticModule(std::int64_t N) : N_(N) {}
    std::int64_t N_;
};

/// α_Q(a) = |M|^{-1/2} Σ_x e^{2πi a Q(x)}.
Complex alpha_q(const QuadraticModule& qm, const ZMod& a);

/// Γ(T) = diag e^{2πiQ(x)}, Γ(S^{-1}) = α(-1)|M|^{-1/2} e^{2πiB(x,y)},
/// Γ(D(a)) = α(a)α(-1) e_x -> e_{a^{-1}x}. Other tokens: InvalidParams.
FloatMatrix weil_generator_action(const QuadraticModule& qm, const Token& gen);

/// For each generator (T, S^{-1}, every D(a)): the scalar λ with Γ(g) = λ U(g)
/// and with Γ(g) = λ U(g)^{-1}, p = 1, or null when not proportional.
nlohmann::json weil_relation_table(const QuadraticModule& qm, double tol = 1e-9);

/// π(r, s) = P^r Q^s with Q = diag e^{2πij/N}, P_{ij} = δ_{i-1,j}.
FloatMatrix pi_shift(std::int64_t N, std::int64_t r, std::int64_t s);

/// R_c = diag e^{πi(N+1)c k^2/N} for any integer c.
FloatMatrix chirp(std::int64_t N, std::int64_t c);

/// Representative of c in {1, ..., N}.
std::int64_t chirp_bracket(std::int64_t N, std::int64_t c) noexcept;

/// (-1)^{c1 mod (N+1) + c2 mod (N+1) - (c1 + c2) mod (N+1)} on raw integers.
int theta_defect(std::int64_t N, std::int64_t c1, std::int64_t c2);

/// max_k |(R_{[c1]} R_{[c2]})_{kk} - θ^{k^2} (R_{[c1+c2]})_{kk}|.
double chirp_product_defect(std::int64_t N, std::int64_t c1, std::int64_t c2);

enum class FeichtingerVariant {
    metaplectic,  // without the [-θ]m^2 factor
    literal,      // with it, as printed
};

/// (U)_{km} = e^{πi(N+1)/N [c a^{-1}] k^2} (1/N) Σ_l ω^{l(k a^{-1} - m)} e^{πi(N+1)/N [-a^{-1} b] l^2},
/// brackets are least nonnegative residues. IllFormed when a is not a unit.
FloatMatrix feichtinger_u(std::int64_t N, const SL2Element& A,
                          FeichtingerVariant variant = FeichtingerVariant::metaplectic);

struct CharacterSample {
    SL2Element A;
    std::map<std::pair<std::int64_t, std::int64_t>, Complex> values;
};

/// ψ_A(k, l) with U π(k,l) U^{-1} = ψ_A(k,l) π(ak + bl, ck + dl); NotMetaplectic
/// when some conjugate is not proportional to the target shift.
CharacterSample extract_psi(const FloatMatrix& U, const SL2Element& A, double tol = 1e-9);

/// Checks ψ(λ+λ') = ψ(λ)ψ(λ') e^{2πi λ^T σ_A λ'/N}, σ_A = [[ac, bc], [ad-1, bd]],
/// and |ψ| = 1. All quadruples when N <= 4, else `samples` seeded ones.
VerifyReport check_second_degree(const CharacterSample& psi, std::size_t samples, std::uint64_t seed,
                                 double tol = 1e-9);

struct HomomorphismWitness {
    SL2Element A;
    SL2Element B;
    double defect_norm;
};

/// First pair (lexicographic over SL2(Z_N) with a unit in A, B and AB) where
/// U(A)U(B) differs from every e^{iφ}U(AB) by more than tol.
std::optional<HomomorphismWitness> find_non_homomorphism(std::int64_t N, double tol = 1e-6);

/// {"N": .., "pair": [[a,b,c,d],[a,b,c,d]], "defect_norm": ..}.
nlohmann::json to_json(const HomomorphismWitness& w);

}  // namespace fqm
