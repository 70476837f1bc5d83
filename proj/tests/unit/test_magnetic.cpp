#include <doctest.h>

#include "fqm/heisenberg.hpp"
#include "fqm/magnetic.hpp"
#include "oracles.hpp"

using namespace fqm;

TEST_CASE("odd J examples") {
    const auto f = ExactField::for_modulus(3);
    CHECK(mat_eq(j_odd(f, 3, TorusPoint(0, 0, 3)), identity(f, 3)).equal);
    const auto params = HWParams::odd_prime(3);
    const auto PQ = p_matrix(f, params) * q_matrix(f, params);
    CHECK(mat_eq(j_odd(f, 3, TorusPoint(1, 1, 3)), scalar_mul(f.root(3, 2), PQ)).equal);
    const auto f5 = ExactField::for_modulus(5);
    CHECK(mat_eq(dagger(j_odd(f5, 5, TorusPoint(1, 2, 5))), j_odd(f5, 5, TorusPoint(-1, -2, 5))).equal);
    CHECK_THROWS_AS((void)j_odd(ExactField::for_modulus(4), 4, TorusPoint(1, 0, 4)), Error);
}

TEST_CASE("odd J entry formula") {
    for (std::int64_t N : {3, 5, 7}) {
        const std::int64_t half = oracle::brute_inverse(2, N);
        for (std::int64_t r = 0; r < N; ++r)
            for (std::int64_t s = 0; s < N; ++s) {
                oracle::Dense expect(N, std::vector<oracle::C>(N));
                for (std::int64_t k = 0; k < N; ++k) {
                    const std::int64_t j = ((k - r) % N + N) % N;
                    expect[k][j] = oracle::w(N, r * s * half + s * j);
                }
                REQUIRE(oracle::dist(oracle::dense(j_odd(FloatField{}, N, TorusPoint(r, s, N))), expect) < 1e-12);
            }
    }
}

TEST_CASE("odd J cocycle, powers and commutation") {
    for (std::int64_t N : {3, 5, 7}) {
        const auto f = ExactField::for_modulus(N);
        const std::int64_t half = oracle::brute_inverse(2, N);
        std::vector<ExactMatrix> J;
        for (std::int64_t r = 0; r < N; ++r)
            for (std::int64_t s = 0; s < N; ++s) J.push_back(j_odd(f, N, TorusPoint(r, s, N)));
        const auto at = [&](std::int64_t r, std::int64_t s) -> const ExactMatrix& {
            return J[static_cast<std::size_t>(((r % N + N) % N) * N + (s % N + N) % N)];
        };
        for (std::int64_t r = 0; r < N; ++r)
            for (std::int64_t s = 0; s < N; ++s) {
                for (std::int64_t r2 = 0; r2 < N; ++r2)
                    for (std::int64_t s2 = 0; s2 < N; ++s2) {
                        const auto phase = f.root(N, (r2 * s - r * s2) * half);
                        REQUIRE(mat_eq(at(r, s) * at(r2, s2), scalar_mul(phase, at(r + r2, s + s2))).equal);
                        if (N == 5) {
                            REQUIRE(mat_eq(at(r, s) * at(r2, s2),
                                           scalar_mul(f.root(N, s * r2 - s2 * r), at(r2, s2) * at(r, s)))
                                        .equal);
                        }
                    }
                if (N <= 5) {
                    for (std::int64_t k = 0; k <= N; ++k) REQUIRE(mat_eq(pow(at(r, s), k), at(k * r, k * s)).equal);
                    REQUIRE(mat_eq(pow(at(r, s), N), identity(f, N)).equal);
                }
            }
    }
}

TEST_CASE("twisted J examples") {
    const auto p1 = HWParams::power_of_two(1, 1);
    const auto f2 = ExactField::for_modulus(2);
    CHECK(mat_eq(j_twisted(f2, p1, TorusPoint(0, 0, 2)), identity(f2, 4)).equal);
    const auto QP = q_matrix(f2, p1) * p_matrix(f2, p1);
    CHECK(mat_eq(j_twisted(f2, p1, TorusPoint(1, 1, 2)), scalar_mul(f2.from_int(-1), kron(QP, QP))).equal);

    const auto p2 = HWParams::power_of_two(2, 1);
    const auto f4 = ExactField::for_modulus(4);
    const auto J = j_twisted(f4, p2, TorusPoint(1, 1, 4));
    CHECK(J(4 * 1 + 1, 0) == f4.imag_unit());

    const auto prod = j_twisted(f4, p2, TorusPoint(1, 0, 4)) * j_twisted(f4, p2, TorusPoint(0, 1, 4));
    CHECK(mat_eq(prod, scalar_mul(-f4.imag_unit(), j_twisted(f4, p2, TorusPoint(1, 1, 4)))).equal);
}

TEST_CASE("twisted J closed form against a kron oracle") {
    for (int n = 1; n <= 2; ++n) {
        for (std::int64_t p : HWParams::faithful_labels(n)) {
            const auto params = HWParams::power_of_two(n, p);
            const std::int64_t N = params.N;
            for (std::int64_t r = 0; r < N; ++r)
                for (std::int64_t s = 0; s < N; ++s) {
                    oracle::Dense one(N, std::vector<oracle::C>(N));
                    for (std::int64_t k = 0; k < N; ++k) one[k][((k - r) % N + N) % N] = oracle::w(N, p * k * s);
                    oracle::Dense expect = oracle::kron(one, one);
                    for (auto& row : expect)
                        for (auto& x : row) x *= oracle::w(N, ((-p * s * r) % N + N) % N);
                    REQUIRE(oracle::dist(oracle::dense(j_twisted(FloatField{}, params, TorusPoint(r, s, N))), expect) <
                            1e-12);
                }
        }
    }
}

TEST_CASE("twisted J: closed form, cocycle, unitarity, periodicity; exhaustive n <= 2") {
    for (int n = 1; n <= 2; ++n) {
        for (std::int64_t p : HWParams::faithful_labels(n)) {
            const auto params = HWParams::power_of_two(n, p);
            const std::int64_t N = params.N;
            const auto f = ExactField::for_modulus(N);
            for (std::int64_t r = 0; r < N; ++r)
                for (std::int64_t s = 0; s < N; ++s) {
                    const auto J = j_twisted(f, params, TorusPoint(r, s, N));
                    REQUIRE(mat_eq(J, j_twisted_product(f, params, TorusPoint(r, s, N))).equal);
                    REQUIRE(mat_eq(dagger(J), j_twisted(f, params, TorusPoint(-r, -s, N))).equal);
                    REQUIRE(mat_eq(J, j_twisted(f, params, TorusPoint(r + N, s + N, N))).equal);
                    for (std::int64_t r2 = 0; r2 < N; ++r2)
                        for (std::int64_t s2 = 0; s2 < N; ++s2) {
                            const auto J2 = j_twisted(f, params, TorusPoint(r2, s2, N));
                            const auto rhs = scalar_mul(f.root(N, p * (r2 * s - s2 * r)),
                                                        j_twisted(f, params, TorusPoint(r + r2, s + s2, N)));
                            REQUIRE(mat_eq(J * J2, rhs).equal);
                        }
                }
        }
    }
}
