#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "fqm/cycnum.hpp"
#include "fqm/zmod.hpp"
#include "oracles.hpp"

using fqm::CycNum;
using fqm::ErrorCode;
using fqm::ZMod;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const fqm::Error& e) {
        return e.code();
    }
    FAIL("expected fqm::Error");
    return ErrorCode::Unreachable;
}

CycNum random_cyc(std::mt19937_64& rng, std::int64_t order) {
    std::uniform_int_distribution<std::int64_t> coef(-5, 5);
    std::vector<std::int64_t> c(static_cast<std::size_t>(CycNum::basis_length(order)));
    for (auto& x : c) x = coef(rng);
    return CycNum::from_coeffs(order, c, static_cast<int>(rng() % 4));
}

const std::vector<std::int64_t> kOrders{2, 4, 8, 16, 32, 3, 5, 7, 11, 13, 17};

}  // namespace

TEST_CASE("mod_inv examples") {
    CHECK(fqm::mod_inv(ZMod(3, 8)) == ZMod(3, 8));
    CHECK(fqm::mod_inv(ZMod(5, 8)) == ZMod(5, 8));
    CHECK(fqm::mod_inv(ZMod(3, 7)) == ZMod(5, 7));
    CHECK(code_of([] { (void)fqm::mod_inv(ZMod(2, 8)); }) == ErrorCode::NotAUnit);
}

TEST_CASE("mod_inv matches a brute-force scan") {
    for (std::int64_t N = 2; N <= 64; ++N) {
        for (std::int64_t a = 0; a < N; ++a) {
            const std::int64_t expect = oracle::brute_inverse(a, N);
            if (expect < 0) {
                CHECK_FALSE(ZMod(a, N).is_unit());
            } else {
                CHECK(ZMod(a, N).inverse().value() == expect);
            }
        }
    }
}

TEST_CASE("ZMod reduction and moduli") {
    CHECK(ZMod(-1, 8).value() == 7);
    CHECK(ZMod(17, 8).value() == 1);
    CHECK((ZMod(5, 8) * ZMod(7, 8)).value() == 3);
    CHECK(ZMod(3, 8).pow(2) == ZMod(1, 8));
    CHECK(code_of([] { (void)ZMod(1, 1); }) == ErrorCode::InvalidModulus);
    CHECK(code_of([] { (void)(ZMod(1, 4) + ZMod(1, 8)); }) == ErrorCode::ModulusMismatch);
}

TEST_CASE("jacobi symbol examples") {
    CHECK(fqm::jacobi_symbol(2, 7) == 1);
    CHECK(fqm::jacobi_symbol(3, 7) == -1);
    CHECK(fqm::jacobi_symbol(1, 5) == 1);
    CHECK(code_of([] { (void)fqm::jacobi_symbol(1, 8); }) == ErrorCode::InvalidModulus);
}

TEST_CASE("jacobi symbol equals the Legendre symbol from the set of squares") {
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        std::vector<bool> square(static_cast<std::size_t>(p), false);
        for (std::int64_t x = 1; x < p; ++x) square[static_cast<std::size_t>(x * x % p)] = true;
        for (std::int64_t a = -p; a < 2 * p; ++a) {
            const std::int64_t r = fqm::floor_mod(a, p);
            const int expect = r == 0 ? 0 : (square[static_cast<std::size_t>(r)] ? 1 : -1);
            CHECK(fqm::jacobi_symbol(a, p) == expect);
        }
    }
    // composite moduli: multiplicative in the bottom argument
    for (std::int64_t a = 0; a < 45; ++a) {
        CHECK(fqm::jacobi_symbol(a, 15) == fqm::jacobi_symbol(a, 3) * fqm::jacobi_symbol(a, 5));
        CHECK(fqm::jacobi_symbol(a, 45) == fqm::jacobi_symbol(a, 3) * fqm::jacobi_symbol(a, 15));
    }
}

TEST_CASE("solve_linear_congruence matches enumeration") {
    for (std::int64_t m = 1; m <= 24; ++m) {
        for (std::int64_t a = -3; a < m; ++a) {
            for (std::int64_t b = 0; b < m; ++b) {
                std::vector<std::int64_t> expect;
                for (std::int64_t x = 0; x < m; ++x)
                    if (fqm::floor_mod(a * x - b, m) == 0) expect.push_back(x);
                auto got = fqm::solve_linear_congruence(a, b, m);
                std::sort(got.begin(), got.end());
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("cyc_root examples") {
    CHECK(CycNum::root(4, 2) == CycNum::from_int(4, -1));
    CHECK(CycNum::root(8, 5) == -CycNum::root(8, 1));
    CHECK(CycNum::root(8, 0) == CycNum::one(8));
    CHECK(CycNum::root(8, -3) == CycNum::root(8, 5));
}

TEST_CASE("cyc arithmetic examples") {
    const CycNum one = CycNum::one(4), i = CycNum::root(4, 1);
    CHECK((one + i) * (one - i) == CycNum::from_int(4, 2));
    CHECK(CycNum::root(8, 1).conj() == -CycNum::root(8, 3));
    CHECK((CycNum::root(4, 2) + one).is_zero());
}

TEST_CASE("cyc_to_complex examples") {
    CHECK(std::abs(CycNum::root(4, 1).to_complex() - std::complex<double>(0, 1)) < 1e-12);
    CHECK(std::abs(CycNum::root(8, 1).to_complex() - std::sqrt(0.5) * std::complex<double>(1, 1)) < 1e-12);
    const CycNum half_of_two = CycNum::from_int(8, 2).mul_pow2(-1);
    CHECK(std::abs(half_of_two.to_complex() - 1.0) < 1e-12);
    CHECK(half_of_two == CycNum::one(8));
}

TEST_CASE("square roots of powers of two") {
    const CycNum r2 = CycNum::sqrt2(8);
    CHECK(r2 * r2 == CycNum::from_int(8, 2));
    for (int k = 0; k <= 8; ++k) {
        const CycNum x = CycNum::inv_sqrt_pow2(16, k);
        CHECK(std::abs(x.to_complex() - std::pow(2.0, -k / 2.0)) < 1e-12);
        CHECK(x * x * CycNum::from_int(16, std::int64_t{1} << k) == CycNum::one(16));
    }
    CHECK_THROWS_AS((void)CycNum::sqrt2(4), fqm::Error);
}

TEST_CASE("root phases are unitary and multiplicative") {
    std::mt19937_64 rng(11);
    for (std::int64_t M : kOrders) {
        for (std::int64_t e = 0; e < M; ++e) CHECK(CycNum::root(M, e) * CycNum::root(M, M - e) == CycNum::one(M));
        std::uniform_int_distribution<std::int64_t> ex(-1000, 1000);
        for (int t = 0; t < 1000; ++t) {
            const std::int64_t e1 = ex(rng), e2 = ex(rng);
            REQUIRE(CycNum::root(M, e1) * CycNum::root(M, e2) == CycNum::root(M, e1 + e2));
        }
    }
}

TEST_CASE("to_complex is a ring homomorphism") {
    std::mt19937_64 rng(12);
    for (std::int64_t M : kOrders) {
        for (int t = 0; t < 1000; ++t) {
            const CycNum x = random_cyc(rng, M), y = random_cyc(rng, M);
            REQUIRE(std::abs((x + y).to_complex() - (x.to_complex() + y.to_complex())) < 1e-10);
            REQUIRE(std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-10);
            REQUIRE(std::abs(x.conj().to_complex() - std::conj(x.to_complex())) < 1e-10);
        }
    }
}

TEST_CASE("canonical form: x - x is exactly zero and equality is structural") {
    std::mt19937_64 rng(13);
    for (std::int64_t M : kOrders) {
        for (int t = 0; t < 200; ++t) {
            const CycNum x = random_cyc(rng, M);
            CHECK((x - x).is_zero());
            CHECK((x - x) == CycNum::zero(M));
            CHECK((x + x).mul_pow2(-1) == x);
        }
    }
    // 1 + ω + ... + ω^{p-1} = 0 for odd prime orders
    for (std::int64_t p : {3, 5, 7, 11, 13, 17}) {
        CycNum s = CycNum::zero(p);
        for (std::int64_t e = 0; e < p; ++e) s += CycNum::root(p, e);
        CHECK(s.is_zero());
    }
}

TEST_CASE("promotion and order mismatch") {
    const CycNum i4 = CycNum::root(4, 1);
    CHECK(i4.promote(16) == CycNum::root(16, 4));
    CHECK(i4 * CycNum::root(8, 1) == CycNum::root(8, 3));
    CHECK(code_of([&] { (void)(i4 + CycNum::root(3, 1)); }) == ErrorCode::OrderMismatch);
    CHECK(code_of([] { (void)CycNum::root(6, 1); }) == ErrorCode::UnsupportedOrder);
}

TEST_CASE("CycNum json round trip") {
    std::mt19937_64 rng(14);
    for (std::int64_t M : kOrders) {
        const CycNum x = random_cyc(rng, M);
        const nlohmann::json j = x;
        CHECK(j.contains("order"));
        CHECK(j.contains("coeffs"));
        CHECK(j.contains("scale_log2"));
        CHECK(j.get<CycNum>() == x);
    }
}
