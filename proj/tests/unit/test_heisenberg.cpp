#include <doctest.h>

#include <random>

#include "fqm/heisenberg.hpp"
#include "oracles.hpp"

using namespace fqm;

namespace {

ExactMatrix gamma(const HWParams& params, std::int64_t m, std::int64_t r, std::int64_t s) {
    const std::int64_t N = params.N;
    return gamma_p(ExactField::for_modulus(N), params, ZMod(m, N), ZMod(r, N), ZMod(s, N));
}

ExactMatrix diag(const ExactField& f, const std::vector<CycNum>& d) {
    ExactMatrix m(d.size(), f.zero());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

}  // namespace

TEST_CASE("gamma examples") {
    const auto p1 = HWParams::power_of_two(1, 1);
    const auto f2 = ExactField::for_modulus(2);
    CHECK(mat_eq(gamma(p1, 0, 0, 0), identity(f2, 2)).equal);
    CHECK(mat_eq(gamma(p1, 0, 1, 0), diag(f2, {f2.one(), f2.from_int(-1)})).equal);
    const auto p2 = HWParams::power_of_two(2, 1);
    const auto f4 = ExactField::for_modulus(4);
    CHECK(mat_eq(gamma(p2, 1, 0, 0), scalar_mul(f4.imag_unit(), identity(f4, 4))).equal);
}

TEST_CASE("gamma matches its entry formula") {
    for (int n = 1; n <= 3; ++n) {
        for (std::int64_t p : HWParams::faithful_labels(n)) {
            const auto params = HWParams::power_of_two(n, p);
            const std::int64_t N = params.N;
            for (std::int64_t m = 0; m < N; m += 3)
                for (std::int64_t r = 0; r < N; ++r)
                    for (std::int64_t s = 0; s < N; ++s) {
                        const auto g = oracle::dense(gamma(params, m, r, s));
                        oracle::Dense expect(N, std::vector<oracle::C>(N));
                        for (std::int64_t k = 0; k < N; ++k) expect[k][(k + s) % N] = oracle::w(N, p * m + p * k * r);
                        REQUIRE(oracle::dist(g, expect) < 1e-12);
                    }
        }
    }
}

TEST_CASE("Q, P and z examples") {
    const auto p1 = HWParams::power_of_two(1, 1);
    const auto f2 = ExactField::for_modulus(2);
    ExactMatrix P(2, f2.zero());
    P(0, 1) = P(1, 0) = f2.one();
    CHECK(mat_eq(p_matrix(f2, p1), P).equal);

    const auto p2 = HWParams::power_of_two(2, 1);
    const auto f4 = ExactField::for_modulus(4);
    const auto i = f4.imag_unit();
    CHECK(mat_eq(q_matrix(f4, p2), diag(f4, {f4.one(), i, -f4.one(), -i})).equal);
    CHECK(z_phase(f4, HWParams::power_of_two(2, 3)) == -i);
}

TEST_CASE("P is the downward shift and P^-1 is gamma(0,0,1)") {
    for (int n = 1; n <= 3; ++n) {
        const auto params = HWParams::power_of_two(n, 1);
        const auto f = ExactField::for_modulus(params.N);
        const auto P = p_matrix(f, params);
        for (std::size_t k = 0; k < params.dim(); ++k)
            for (std::size_t j = 0; j < params.dim(); ++j)
                CHECK((P(k, j) == ((k + params.dim() - 1) % params.dim() == j ? f.one() : f.zero())));
        CHECK(mat_eq(p_inverse_matrix(f, params), gamma(params, 0, 0, 1)).equal);
        CHECK(mat_eq(P * p_inverse_matrix(f, params), identity(f, params.dim())).equal);
    }
}

TEST_CASE("Fourier matrix") {
    const auto p1 = HWParams::power_of_two(1, 1);
    const auto F1 = oracle::dense(fourier(ExactField::for_modulus(2), p1));
    const double h = std::sqrt(0.5);
    CHECK(oracle::dist(F1, {{h, h}, {h, -h}}) < 1e-12);
    for (int n = 1; n <= 3; ++n) {
        const auto params = HWParams::power_of_two(n, 1);
        const auto f = ExactField::for_modulus(params.N);
        const auto F = fourier(f, params);
        CHECK(oracle::dist(oracle::dense(F), oracle::dft(params.N)) < 1e-12);
        CHECK(mat_eq(pow(F, 4), identity(f, params.dim())).equal);
        for (std::size_t j = 0; j < params.dim(); ++j) CHECK(F(0, j) == f.inv_sqrt(params.N));
    }
}

TEST_CASE("eigensystem of P^-1, with P carrying the conjugate eigenvalues") {
    const auto p1 = HWParams::power_of_two(1, 1);
    const auto es1 = p_eigensystem(ExactField::for_modulus(2), p1);
    const double h = std::sqrt(0.5);
    REQUIRE(es1.size() == 2);
    CHECK(std::abs(es1[1].vector[0].to_complex() - h) < 1e-12);
    CHECK(std::abs(es1[1].vector[1].to_complex() + h) < 1e-12);
    CHECK(std::abs(es1[1].value.to_complex() + 1.0) < 1e-12);

    for (int n = 1; n <= 3; ++n) {
        for (std::int64_t p : HWParams::faithful_labels(n)) {
            const auto params = HWParams::power_of_two(n, p);
            const auto f = ExactField::for_modulus(params.N);
            const auto es = p_eigensystem(f, params);
            const auto Pinv = p_inverse_matrix(f, params);
            const auto P = p_matrix(f, params);
            CHECK(es[0].value == f.one());
            for (const auto& x : es[0].vector) CHECK(x == f.inv_sqrt(params.N));
            ExactMatrix proj(params.dim(), f.zero());
            for (const auto& e : es) {
                const auto lhs = apply(Pinv, e.vector);
                const auto lhs2 = apply(P, e.vector);
                for (std::size_t k = 0; k < params.dim(); ++k) {
                    CHECK(lhs[k] == e.value * e.vector[k]);
                    CHECK(lhs2[k] == e.value.conj() * e.vector[k]);
                }
                for (std::size_t i = 0; i < params.dim(); ++i)
                    for (std::size_t j = 0; j < params.dim(); ++j) proj(i, j) += e.vector[i] * e.vector[j].conj();
            }
            CHECK(mat_eq(proj, identity(f, params.dim())).equal);
        }
    }
}

TEST_CASE("defining relations, all n <= 3 and all odd p") {
    for (int n = 1; n <= 3; ++n) {
        for (std::int64_t p : HWParams::faithful_labels(n)) {
            const auto params = HWParams::power_of_two(n, p);
            const auto f = ExactField::for_modulus(params.N);
            const auto Q = q_matrix(f, params), Pinv = p_inverse_matrix(f, params), P = p_matrix(f, params);
            const auto I = identity(f, params.dim());
            CHECK(mat_eq(Pinv * Q, scalar_mul(z_phase(f, params), Q * Pinv)).equal);
            CHECK(mat_eq(pow(Q, params.N), I).equal);
            CHECK(mat_eq(pow(P, params.N), I).equal);
            const auto F = fourier(f, params);
            CHECK(mat_eq(F * pow(P, p) * dagger(F), Q).equal);
        }
    }
}

TEST_CASE("commutator relation, exhaustive at n = 1 and 2") {
    for (int n = 1; n <= 2; ++n) {
        for (std::int64_t p : HWParams::faithful_labels(n)) {
            const auto params = HWParams::power_of_two(n, p);
            const std::int64_t N = params.N;
            const auto f = ExactField::for_modulus(N);
            std::vector<ExactMatrix> g;
            for (std::int64_t m = 0; m < N; ++m)
                for (std::int64_t r = 0; r < N; ++r)
                    for (std::int64_t s = 0; s < N; ++s) g.push_back(gamma(params, m, r, s));
            const auto idx = [N](std::int64_t m, std::int64_t r, std::int64_t s) {
                return static_cast<std::size_t>((m % N) * N * N + (r % N) * N + s % N);
            };
            for (std::int64_t m = 0; m < N; ++m)
                for (std::int64_t r = 0; r < N; ++r)
                    for (std::int64_t s = 0; s < N; ++s)
                        for (std::int64_t m2 = 0; m2 < N; ++m2)
                            for (std::int64_t r2 = 0; r2 < N; ++r2)
                                for (std::int64_t s2 = 0; s2 < N; ++s2) {
                                    const auto& a = g[idx(m, r, s)];
                                    const auto& b = g[idx(m2, r2, s2)];
                                    const auto c = f.root(N, p * r2 * s) - f.root(N, p * r * s2);
                                    REQUIRE(mat_eq(a * b - b * a, scalar_mul(c, g[idx(m + m2, r + r2, s + s2)])).equal);
                                }
        }
    }
}

TEST_CASE("gamma is unitary on random group elements") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const auto labels = HWParams::faithful_labels(n);
        const auto params = HWParams::power_of_two(n, labels[rng() % labels.size()]);
        const auto m = gamma(params, static_cast<std::int64_t>(rng() % 97), static_cast<std::int64_t>(rng() % 97),
                             static_cast<std::int64_t>(rng() % 97));
        CHECK(is_unitary(m));
    }
}

TEST_CASE("invalid labels") {
    CHECK_THROWS_AS((void)HWParams::power_of_two(2, 2), Error);
    CHECK_THROWS_AS((void)HWParams::power_of_two(2, 5), Error);
    CHECK_THROWS_AS((void)HWParams::power_of_two(0, 1), Error);
    CHECK_THROWS_AS((void)HWParams::odd_prime(9), Error);
    CHECK(HWParams::faithful_labels(3) == std::vector<std::int64_t>{1, 3, 5, 7});
}
