#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "fqm/error.hpp"

namespace fqm {

/// Least nonnegative residue of a modulo m (m > 0).
constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t m) noexcept {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;

bool is_power_of_two(std::int64_t x) noexcept;
bool is_odd_prime(std::int64_t x) noexcept;

/// Jacobi symbol (a | n) for odd n >= 3. Equals the Legendre symbol when n is prime.
int jacobi_symbol(std::int64_t a, std::int64_t n);

/// All x in [0, m) with a*x == b (mod m). Empty when gcd(a, m) does not divide b.
std::vector<std::int64_t> solve_linear_congruence(std::int64_t a, std::int64_t b, std::int64_t m);

/// Residue class modulo N >= 2.
class ZMod {
public:
    ZMod(std::int64_t value, std::int64_t modulus);

    std::int64_t value() const noexcept { return value_; }
    std::int64_t modulus() const noexcept { return modulus_; }

    bool is_unit() const noexcept { return gcd(value_, modulus_) == 1; }
    bool is_zero() const noexcept { return value_ == 0; }
    bool is_odd() const noexcept { return (value_ & 1) != 0; }

    /// Throws NotAUnit when gcd(value, modulus) != 1.
    ZMod inverse() const;

    ZMod pow(std::int64_t e) const;

    ZMod operator-() const noexcept { return ZMod(modulus_ - value_, modulus_, Raw{}); }
    ZMod& operator+=(const ZMod& o);
    ZMod& operator-=(const ZMod& o);
    ZMod& operator*=(const ZMod& o);

    friend ZMod operator+(ZMod a, const ZMod& b) { return a += b; }
    friend ZMod operator-(ZMod a, const ZMod& b) { return a -= b; }
    friend ZMod operator*(ZMod a, const ZMod& b) { return a *= b; }
    friend ZMod operator*(ZMod a, std::int64_t k) { return a *= ZMod(k, a.modulus_); }
    friend ZMod operator*(std::int64_t k, ZMod a) { return a *= ZMod(k, a.modulus_); }

    friend bool operator==(const ZMod&, const ZMod&) = default;

    friend std::ostream& operator<<(std::ostream& os, const ZMod& z) {
        return os << z.value_ << " mod " << z.modulus_;
    }

private:
    struct Raw {};
    ZMod(std::int64_t value, std::int64_t modulus, Raw) noexcept
        : value_(value == modulus ? 0 : value), modulus_(modulus) {}

    void require_same_modulus(const ZMod& o) const;

    std::int64_t value_;
    std::int64_t modulus_;
};

/// Free-function spelling of ZMod::inverse.
inline ZMod mod_inv(const ZMod& a) { return a.inverse(); }

}  // namespace fqm
