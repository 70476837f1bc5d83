#include "fqm/zmod.hpp"

#include <numeric>
#include <string>

namespace fqm {

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

bool is_power_of_two(std::int64_t x) noexcept { return x > 0 && (x & (x - 1)) == 0; }

bool is_odd_prime(std::int64_t x) noexcept {
    if (x < 3 || x % 2 == 0) return false;
    for (std::int64_t f = 3; f * f <= x; f += 2) {
        if (x % f == 0) return false;
    }
    return true;
}

int jacobi_symbol(std::int64_t a, std::int64_t n) {
    if (n < 3 || n % 2 == 0) {
        throw Error(ErrorCode::InvalidModulus, "jacobi symbol needs odd n >= 3, got " + std::to_string(n));
    }
    a = floor_mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

namespace {

// Returns (g, x) with a*x == g (mod m), g = gcd(a, m).
std::pair<std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    return {old_r, old_s};
}

}  // namespace

std::vector<std::int64_t> solve_linear_congruence(std::int64_t a, std::int64_t b, std::int64_t m) {
    if (m < 1) throw Error(ErrorCode::InvalidModulus, "congruence modulus must be positive");
    a = floor_mod(a, m);
    b = floor_mod(b, m);
    if (a == 0) {
        std::vector<std::int64_t> all;
        if (b == 0) {
            all.resize(static_cast<std::size_t>(m));
            std::iota(all.begin(), all.end(), 0);
        }
        return all;
    }
    const auto [g, x] = ext_gcd(a, m);
    if (b % g != 0) return {};
    const std::int64_t step = m / g;
    const std::int64_t x0 = floor_mod(static_cast<std::int64_t>(
                                          static_cast<__int128>(floor_mod(x, step)) * (b / g) % step),
                                      step);
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(g));
    for (std::int64_t k = 0; k < g; ++k) out.push_back(x0 + k * step);
    return out;
}

ZMod::ZMod(std::int64_t value, std::int64_t modulus) : value_(0), modulus_(modulus) {
    if (modulus < 2) {
        throw Error(ErrorCode::InvalidModulus, "modulus must be >= 2, got " + std::to_string(modulus));
    }
    value_ = floor_mod(value, modulus);
}

void ZMod::require_same_modulus(const ZMod& o) const {
    if (o.modulus_ != modulus_) {
        throw Error(ErrorCode::ModulusMismatch,
                    "mod " + std::to_string(modulus_) + " vs mod " + std::to_string(o.modulus_));
    }
}

ZMod& ZMod::operator+=(const ZMod& o) {
    require_same_modulus(o);
    value_ += o.value_;
    if (value_ >= modulus_) value_ -= modulus_;
    return *this;
}

ZMod& ZMod::operator-=(const ZMod& o) {
    require_same_modulus(o);
    value_ -= o.value_;
    if (value_ < 0) value_ += modulus_;
    return *this;
}

ZMod& ZMod::operator*=(const ZMod& o) {
    require_same_modulus(o);
    value_ = static_cast<std::int64_t>(static_cast<__int128>(value_) * o.value_ % modulus_);
    return *this;
}

ZMod ZMod::inverse() const {
    const auto [g, x] = ext_gcd(value_, modulus_);
    if (g != 1) {
        throw Error(ErrorCode::NotAUnit, std::to_string(value_) + " is not a unit mod " +
                                             std::to_string(modulus_));
    }
    return ZMod(x, modulus_);
}

ZMod ZMod::pow(std::int64_t e) const {
    ZMod base = e < 0 ? inverse() : *this;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    ZMod acc(1, modulus_);
    while (k != 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

}  // namespace fqm
