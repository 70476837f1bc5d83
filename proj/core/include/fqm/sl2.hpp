#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fqm/torus_point.hpp"
#include "fqm/zmod.hpp"

namespace fqm {

/// Element [[a, b], [c, d]] of SL2(Z_N). Acts on row vectors: (r, s) -> (r, s)A.
class SL2Element {
public:
    /// Throws BadDeterminant unless ad - bc == 1 (mod N).
    static SL2Element make(const ZMod& a, const ZMod& b, const ZMod& c, const ZMod& d);
    static SL2Element from_ints(std::int64_t N, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
    /// "a,b,c,d" with arbitrary integers, reduced mod N.
    static SL2Element parse(std::string_view literal, std::int64_t N);

    static SL2Element identity(std::int64_t N);
    /// S = [[0, -1], [1, 0]].
    static SL2Element S(std::int64_t N);
    static SL2Element S_inv(std::int64_t N);
    /// T^k = [[1, k], [0, 1]].
    static SL2Element T(std::int64_t N, std::int64_t k = 1);
    /// D(a) = diag(a, a^{-1}); throws NotAUnit.
    static SL2Element D(const ZMod& a);

    const ZMod& a() const noexcept { return a_; }
    const ZMod& b() const noexcept { return b_; }
    const ZMod& c() const noexcept { return c_; }
    const ZMod& d() const noexcept { return d_; }
    std::int64_t modulus() const noexcept { return a_.modulus(); }

    SL2Element inverse() const;
    SL2Element pow(std::int64_t k) const;

    friend SL2Element operator*(const SL2Element& x, const SL2Element& y);
    friend bool operator==(const SL2Element&, const SL2Element&) = default;

    /// "a,b,c,d" with least nonnegative residues.
    std::string to_string() const;

private:
    SL2Element(ZMod a, ZMod b, ZMod c, ZMod d) : a_(a), b_(b), c_(c), d_(d) {}

    ZMod a_, b_, c_, d_;
};

TorusPoint act_on_point(const SL2Element& A, const TorusPoint& x);

/// {x, x'} = x ε x'^T with ε = [[0, -1], [1, 0]], i.e. s·r' - r·s'.
ZMod symplectic_form(const TorusPoint& x, const TorusPoint& y);

/// Letters of a word in the generators. T carries its exponent, D its unit.
enum class TokenKind { T, S, SInv, S2, D };

struct Token {
    TokenKind kind;
    ZMod arg;

    static Token t(const ZMod& k) { return {TokenKind::T, k}; }
    static Token s(std::int64_t N) { return {TokenKind::S, ZMod(0, N)}; }
    static Token s_inv(std::int64_t N) { return {TokenKind::SInv, ZMod(0, N)}; }
    static Token s2(std::int64_t N) { return {TokenKind::S2, ZMod(0, N)}; }
    static Token dil(const ZMod& a);

    friend bool operator==(const Token&, const Token&) = default;
};

using GeneratorWord = std::vector<Token>;

std::string to_string(const GeneratorWord& word);

/// Left-to-right product of the tokens' matrices mod N.
SL2Element multiply_out(const GeneratorWord& word, std::int64_t N);

/// D(a) = T^{-a} S T^{-a^{-1}} S^{-1} T^{-a} S^{-1}, spelled with T/S tokens only.
GeneratorWord dilatation_word(const ZMod& a);

struct Decomposition {
    GeneratorWord word;
    bool d_odd;
    /// Distinct candidate words reproducing A (always 1 for the odd-d branch).
    int matching_candidates;
};

/// d odd:  A = T^{b/d} D(d^{-1}) S^{-1} T^{-c/d} S.
/// d even (c then a unit): A = T^{a/c} D(c^{-1}) S^{-1} T^{±d/c} S^2, where the
/// sign is chosen by multiplying both candidates out; exactly one distinct word
/// must reproduce A, otherwise Unreachable.
Decomposition decompose(const SL2Element& A);

/// A = [[1, 0], [c a^{-1}, 1]] · D(a) · [[1, a^{-1} b], [0, 1]] when a is a unit.
struct TranslationSplit {
    SL2Element left;
    SL2Element dilatation;
    SL2Element right;
};
TranslationSplit translation_dilatation_split(const SL2Element& A);

/// |SL2(Z_N)| = N^3 ∏_{p | N} (1 - p^{-2}).
std::int64_t sl2_order(std::int64_t N);

/// Every element, lexicographic in (a, b, c, d). TooLarge above 10^5 elements.
std::vector<SL2Element> enumerate_sl2(std::int64_t N);

/// count elements drawn uniformly and deterministically from seed: a random
/// primitive first column (a, c) plus a random point of the solution line for (b, d).
std::vector<SL2Element> sample_sl2(std::int64_t N, std::uint64_t seed, std::size_t count);

}  // namespace fqm
