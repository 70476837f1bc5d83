#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "fqm/sl2.hpp"

using namespace fqm;

namespace {

SL2Element el(std::int64_t N, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return SL2Element::from_ints(N, a, b, c, d);
}

std::size_t brute_count(std::int64_t N) {
    std::size_t count = 0;
    for (std::int64_t a = 0; a < N; ++a)
        for (std::int64_t b = 0; b < N; ++b)
            for (std::int64_t c = 0; c < N; ++c)
                for (std::int64_t d = 0; d < N; ++d)
                    if (((a * d - b * c) % N + N) % N == 1 % N) ++count;
    return count;
}

const std::vector<std::int64_t> kModuli{2, 4, 8, 3, 5, 7};

}  // namespace

TEST_CASE("construction examples") {
    CHECK(el(8, 1, 0, 0, 1) == SL2Element::identity(8));
    CHECK(SL2Element::parse("0,-1,1,0", 8) == SL2Element::S(8));
    CHECK(SL2Element::parse("9,-8,16,17", 8) == SL2Element::identity(8));
    CHECK(SL2Element::S(8).to_string() == "0,7,1,0");
    try {
        (void)el(8, 1, 1, 1, 1);
        FAIL("expected BadDeterminant");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadDeterminant);
    }
    CHECK_THROWS_AS((void)SL2Element::parse("1,2,3", 8), Error);
    CHECK_THROWS_AS((void)SL2Element::parse("1,x,0,1", 8), Error);
    CHECK_THROWS_AS((void)SL2Element::D(ZMod(2, 8)), Error);
}

TEST_CASE("product and inverse examples") {
    CHECK(SL2Element::S(8) * SL2Element::S(8) == SL2Element::D(ZMod(-1, 8)));
    CHECK(SL2Element::D(ZMod(-1, 8)) == el(8, -1, 0, 0, -1));
    CHECK((SL2Element::S(8) * SL2Element::T(8)).pow(6) == SL2Element::identity(8));
    CHECK(SL2Element::T(8).inverse() == el(8, 1, -1, 0, 1));
}

TEST_CASE("row-vector action") {
    const TorusPoint e1(1, 0, 8), e2(0, 1, 8);
    CHECK(act_on_point(SL2Element::identity(8), TorusPoint(3, 5, 8)) == TorusPoint(3, 5, 8));
    // (1,0)S is the first row of S and (0,1)S the second
    CHECK(act_on_point(SL2Element::S(8), e1) == TorusPoint(0, -1, 8));
    CHECK(act_on_point(SL2Element::S(8), e2) == TorusPoint(1, 0, 8));
    CHECK(act_on_point(SL2Element::S_inv(8), e1) == TorusPoint(0, 1, 8));
    CHECK(act_on_point(SL2Element::S_inv(8), e2) == TorusPoint(-1, 0, 8));
    // right action: x(AB) = (xA)B
    std::mt19937_64 rng(7);
    const auto els = sample_sl2(8, 3, 50);
    for (std::size_t i = 0; i + 1 < els.size(); ++i) {
        const TorusPoint x(static_cast<std::int64_t>(rng() % 8), static_cast<std::int64_t>(rng() % 8), 8);
        CHECK(act_on_point(els[i] * els[i + 1], x) == act_on_point(els[i + 1], act_on_point(els[i], x)));
    }
}

TEST_CASE("symplectic form") {
    CHECK(symplectic_form(TorusPoint(3, 2, 8), TorusPoint(3, 2, 8)).is_zero());
    CHECK(symplectic_form(TorusPoint(1, 0, 8), TorusPoint(0, 1, 8)) == ZMod(7, 8));
    std::mt19937_64 rng(8);
    const auto els = sample_sl2(16, 9, 500);
    const auto pt = [&] { return TorusPoint(static_cast<std::int64_t>(rng() % 16), static_cast<std::int64_t>(rng() % 16), 16); };
    for (const auto& A : els) {
        const TorusPoint x = pt(), y = pt(), z = pt();
        CHECK(symplectic_form(act_on_point(A, x), act_on_point(A, y)) == symplectic_form(x, y));
        CHECK(symplectic_form(x + y, z) == symplectic_form(x, z) + symplectic_form(y, z));
        CHECK(symplectic_form(x, y) == -symplectic_form(y, x));
    }
}

TEST_CASE("dilatations") {
    CHECK(SL2Element::D(ZMod(1, 8)) == SL2Element::identity(8));
    CHECK(multiply_out(dilatation_word(ZMod(1, 4)), 4) == SL2Element::identity(4));
    for (std::int64_t N : {4, 8, 16, 3, 5, 7}) {
        for (std::int64_t a = 1; a < N; ++a) {
            if (gcd(a, N) != 1) continue;
            CHECK(multiply_out(dilatation_word(ZMod(a, N)), N) == SL2Element::D(ZMod(a, N)));
            for (std::int64_t b = 1; b < N; ++b) {
                if (gcd(b, N) != 1) continue;
                CHECK(SL2Element::D(ZMod(a, N)) * SL2Element::D(ZMod(b, N)) == SL2Element::D(ZMod(a * b, N)));
            }
        }
    }
}

TEST_CASE("generator relations") {
    for (std::int64_t N : {4, 8}) {
        const auto T = SL2Element::T(N), S = SL2Element::S(N);
        CHECK(T.pow(N) == SL2Element::identity(N));
        CHECK(S * S == SL2Element::D(ZMod(-1, N)));
        for (std::int64_t a = 1; a < N; a += 2) {
            const auto D = SL2Element::D(ZMod(a, N));
            CHECK(D * T == T.pow(a * a) * D);
            CHECK(S * D == SL2Element::D(ZMod(a, N).inverse()) * S);
        }
    }
    for (std::int64_t N : kModuli) {
        CHECK(SL2Element::S(N).pow(4) == SL2Element::identity(N));
        CHECK((SL2Element::S(N) * SL2Element::T(N)).pow(6) == SL2Element::identity(N));
    }
}

TEST_CASE("decomposition examples") {
    const auto A = el(8, 1, 0, 1, 1);
    const auto dec = decompose(A);
    CHECK(dec.d_odd);
    const GeneratorWord expect{Token::t(ZMod(0, 8)), Token::dil(ZMod(1, 8)), Token::s_inv(8), Token::t(ZMod(-1, 8)),
                               Token::s(8)};
    CHECK(dec.word == expect);
    CHECK(multiply_out(dec.word, 8) == A);

    const auto ds = decompose(SL2Element::S(8));
    CHECK_FALSE(ds.d_odd);
    const GeneratorWord expect_s{Token::t(ZMod(0, 8)), Token::dil(ZMod(1, 8)), Token::s_inv(8), Token::t(ZMod(0, 8)),
                                 Token::s2(8)};
    CHECK(ds.word == expect_s);
    CHECK(multiply_out(ds.word, 8) == SL2Element::S(8));
    CHECK(ds.matching_candidates == 1);
}

TEST_CASE("decompose then multiply out is the identity map") {
    for (const auto& A : enumerate_sl2(4)) {
        const auto dec = decompose(A);
        REQUIRE(multiply_out(dec.word, 4) == A);
        REQUIRE(dec.matching_candidates == 1);
        REQUIRE(dec.d_odd == A.d().is_odd());
    }
    for (std::int64_t N : {8, 16}) {
        for (const auto& A : sample_sl2(N, 21, 500)) REQUIRE(multiply_out(decompose(A).word, N) == A);
    }
}

TEST_CASE("translation-dilatation split when a is a unit") {
    for (std::int64_t N : {4, 8}) {
        for (const auto& A : enumerate_sl2(N)) {
            if (!A.a().is_unit()) {
                CHECK_THROWS_AS((void)translation_dilatation_split(A), Error);
                continue;
            }
            const auto sp = translation_dilatation_split(A);
            REQUIRE(sp.left * sp.dilatation * sp.right == A);
            CHECK(sp.left.a() == ZMod(1, N));
            CHECK(sp.left.b().is_zero());
            CHECK(sp.left.d() == ZMod(1, N));
            CHECK(sp.right.c().is_zero());
        }
    }
}

TEST_CASE("group orders against brute force") {
    CHECK(brute_count(2) == 6);
    CHECK(brute_count(4) == 48);
    CHECK(brute_count(3) == 24);
    for (std::int64_t N : {2, 3, 4, 5, 6, 7, 8, 9, 12}) {
        const auto all = enumerate_sl2(N);
        CHECK(all.size() == brute_count(N));
        CHECK(static_cast<std::size_t>(sl2_order(N)) == all.size());
        CHECK(std::set<std::string>([&] {
                  std::set<std::string> s;
                  for (const auto& A : all) s.insert(A.to_string());
                  return s;
              }()).size() == all.size());
    }
}

TEST_CASE("sampling is deterministic and covers the group evenly") {
    CHECK(sample_sl2(8, 5, 40) == sample_sl2(8, 5, 40));
    CHECK_FALSE(sample_sl2(8, 5, 40) == sample_sl2(8, 6, 40));
    const std::int64_t N = 4;
    const std::size_t per = 200;
    std::map<std::string, std::size_t> hist;
    for (const auto& A : sample_sl2(N, 99, 48 * per)) hist[A.to_string()]++;
    CHECK(hist.size() == 48);
    // chi-square against uniform, 47 dof; 99.9% quantile is about 82.7
    double chi = 0.0;
    for (const auto& [k, v] : hist) chi += (static_cast<double>(v) - per) * (static_cast<double>(v) - per) / per;
    CHECK(chi < 82.7);
}
