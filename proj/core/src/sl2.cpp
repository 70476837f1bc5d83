#include "fqm/sl2.hpp"

#include <random>
#include <sstream>

namespace fqm {

SL2Element SL2Element::make(const ZMod& a, const ZMod& b, const ZMod& c, const ZMod& d) {
    const std::int64_t N = a.modulus();
    if (b.modulus() != N || c.modulus() != N || d.modulus() != N) {
        throw Error(ErrorCode::ModulusMismatch, "SL2 entries must share a modulus");
    }
    const ZMod det = a * d - b * c;
    if (det.value() != 1) {
        throw Error(ErrorCode::BadDeterminant, "det = " + std::to_string(det.value()) + " mod " + std::to_string(N));
    }
    return SL2Element(a, b, c, d);
}

SL2Element SL2Element::from_ints(std::int64_t N, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return make(ZMod(a, N), ZMod(b, N), ZMod(c, N), ZMod(d, N));
}

SL2Element SL2Element::parse(std::string_view literal, std::int64_t N) {
    std::vector<std::int64_t> v;
    std::string item;
    std::istringstream is{std::string(literal)};
    while (std::getline(is, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad SL2 literal '" + std::string(literal) + "'");
        }
    }
    if (v.size() != 4) throw Error(ErrorCode::ParseError, "SL2 literal needs 4 entries: a,b,c,d");
    return from_ints(N, v[0], v[1], v[2], v[3]);
}

SL2Element SL2Element::identity(std::int64_t N) { return from_ints(N, 1, 0, 0, 1); }
SL2Element SL2Element::S(std::int64_t N) { return from_ints(N, 0, -1, 1, 0); }
SL2Element SL2Element::S_inv(std::int64_t N) { return from_ints(N, 0, 1, -1, 0); }
SL2Element SL2Element::T(std::int64_t N, std::int64_t k) { return from_ints(N, 1, k, 0, 1); }

SL2Element SL2Element::D(const ZMod& a) {
    const std::int64_t N = a.modulus();
    return make(a, ZMod(0, N), ZMod(0, N), a.inverse());
}

SL2Element SL2Element::inverse() const { return SL2Element(d_, -b_, -c_, a_); }

SL2Element SL2Element::pow(std::int64_t k) const {
    SL2Element base = k < 0 ? inverse() : *this;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
    SL2Element acc = identity(modulus());
    while (e != 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

SL2Element operator*(const SL2Element& x, const SL2Element& y) {
    if (x.modulus() != y.modulus()) throw Error(ErrorCode::ModulusMismatch, "SL2 product");
    return SL2Element(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
                      x.c_ * y.b_ + x.d_ * y.d_);
}

std::string SL2Element::to_string() const {
    return std::to_string(a_.value()) + "," + std::to_string(b_.value()) + "," + std::to_string(c_.value()) + "," +
           std::to_string(d_.value());
}

TorusPoint act_on_point(const SL2Element& A, const TorusPoint& x) {
    if (A.modulus() != x.modulus()) throw Error(ErrorCode::ModulusMismatch, "SL2 action on torus point");
    return {A.a() * x.r + A.c() * x.s, A.b() * x.r + A.d() * x.s};
}

ZMod symplectic_form(const TorusPoint& x, const TorusPoint& y) { return x.s * y.r - x.r * y.s; }

Token Token::dil(const ZMod& a) {
    if (!a.is_unit()) throw Error(ErrorCode::NotAUnit, "D(a) needs a unit, got " + std::to_string(a.value()));
    return {TokenKind::D, a};
}

std::string to_string(const GeneratorWord& word) {
    std::ostringstream os;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) os << " ";
        const Token& t = word[i];
        switch (t.kind) {
            case TokenKind::T: os << "T^" << t.arg.value(); break;
            case TokenKind::S: os << "S"; break;
            case TokenKind::SInv: os << "S^-1"; break;
            case TokenKind::S2: os << "S^2"; break;
            case TokenKind::D: os << "D(" << t.arg.value() << ")"; break;
        }
    }
    return os.str();
}

namespace {

SL2Element token_matrix(const Token& t, std::int64_t N) {
    switch (t.kind) {
        case TokenKind::T: return SL2Element::T(N, t.arg.value());
        case TokenKind::S: return SL2Element::S(N);
        case TokenKind::SInv: return SL2Element::S_inv(N);
        case TokenKind::S2: return SL2Element::S(N) * SL2Element::S(N);
        case TokenKind::D: return SL2Element::D(t.arg);
    }
    throw Error(ErrorCode::Unreachable, "unknown token");
}

}  // namespace

SL2Element multiply_out(const GeneratorWord& word, std::int64_t N) {
    SL2Element acc = SL2Element::identity(N);
    for (const Token& t : word) {
        if (t.arg.modulus() != N) throw Error(ErrorCode::ModulusMismatch, "token modulus");
        acc = acc * token_matrix(t, N);
    }
    return acc;
}

GeneratorWord dilatation_word(const ZMod& a) {
    const std::int64_t N = a.modulus();
    const ZMod a_inv = a.inverse();
    return {Token::t(-a), Token::s(N), Token::t(-a_inv), Token::s_inv(N), Token::t(-a), Token::s_inv(N)};
}

Decomposition decompose(const SL2Element& A) {
    const std::int64_t N = A.modulus();
    if (A.d().is_unit()) {
        const ZMod d_inv = A.d().inverse();
        GeneratorWord word{Token::t(A.b() * d_inv), Token::dil(d_inv), Token::s_inv(N), Token::t(-(A.c() * d_inv)),
                           Token::s(N)};
        if (!(multiply_out(word, N) == A)) throw Error(ErrorCode::Unreachable, "odd-d word does not reproduce A");
        return {std::move(word), true, 1};
    }
    if (!A.c().is_unit()) {
        throw Error(ErrorCode::Unreachable, "neither d nor c is a unit for " + A.to_string());
    }
    const ZMod c_inv = A.c().inverse();
    std::vector<GeneratorWord> matches;
    for (const int sign : {+1, -1}) {
        GeneratorWord word{Token::t(A.a() * c_inv), Token::dil(c_inv), Token::s_inv(N),
                           Token::t(ZMod(sign, N) * A.d() * c_inv), Token::s2(N)};
        if (!(multiply_out(word, N) == A)) continue;
        bool duplicate = false;
        for (const auto& m : matches) duplicate = duplicate || m == word;
        if (!duplicate) matches.push_back(std::move(word));
    }
    if (matches.size() != 1) {
        throw Error(ErrorCode::Unreachable, std::to_string(matches.size()) + " even-d candidate words reproduce " +
                                                A.to_string());
    }
    return {std::move(matches.front()), false, 1};
}

TranslationSplit translation_dilatation_split(const SL2Element& A) {
    const std::int64_t N = A.modulus();
    const ZMod a_inv = A.a().inverse();
    const ZMod zero(0, N), one(1, N);
    return {SL2Element::make(one, zero, A.c() * a_inv, one), SL2Element::D(A.a()),
            SL2Element::make(one, a_inv * A.b(), zero, one)};
}

std::int64_t sl2_order(std::int64_t N) {
    if (N < 2) throw Error(ErrorCode::InvalidModulus, "N must be >= 2");
    // N^3 ∏ (1 - 1/p^2) = N^3 ∏ (p^2 - 1)/p^2, evaluated without overflow for desk-scale N.
    __int128 num = static_cast<__int128>(N) * N * N;
    std::int64_t m = N;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        num = num / (p * p) * (p * p - 1);
    }
    if (m > 1) num = num / (static_cast<__int128>(m) * m) * (static_cast<__int128>(m) * m - 1);
    if (num > INT64_MAX) throw Error(ErrorCode::TooLarge, "group order overflows");
    return static_cast<std::int64_t>(num);
}

std::vector<SL2Element> enumerate_sl2(std::int64_t N) {
    const std::int64_t order = sl2_order(N);
    if (order > 100000) {
        throw Error(ErrorCode::TooLarge, "|SL2(Z_" + std::to_string(N) + ")| = " + std::to_string(order) + " > 10^5");
    }
    std::vector<SL2Element> out;
    out.reserve(static_cast<std::size_t>(order));
    for (std::int64_t a = 0; a < N; ++a) {
        for (std::int64_t b = 0; b < N; ++b) {
            for (std::int64_t c = 0; c < N; ++c) {
                // ad == 1 + bc (mod N), solved for d
                for (std::int64_t d : solve_linear_congruence(a, 1 + b * c, N)) {
                    out.push_back(SL2Element::from_ints(N, a, b, c, d));
                }
            }
        }
    }
    return out;
}

std::vector<SL2Element> sample_sl2(std::int64_t N, std::uint64_t seed, std::size_t count) {
    if (N < 2) throw Error(ErrorCode::InvalidModulus, "N must be >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> residue(0, N - 1);
    std::vector<SL2Element> out;
    out.reserve(count);
    while (out.size() < count) {
        const std::int64_t a = residue(rng);
        const std::int64_t c = residue(rng);
        if (gcd(gcd(a, c), N) != 1) continue;
        // One solution (b0, d0) of a d - c b == 1; every solution is (b0, d0) + t (a, c).
        std::int64_t b0 = -1, d0 = -1;
        for (std::int64_t d = 0; d < N && b0 < 0; ++d) {
            const auto bs = solve_linear_congruence(c, a * d - 1, N);
            if (!bs.empty()) {
                b0 = bs.front();
                d0 = d;
            }
        }
        const std::int64_t t = residue(rng);
        out.push_back(SL2Element::from_ints(N, a, b0 + t * a, c, d0 + t * c));
    }
    return out;
}

}  // namespace fqm
