#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "fqm/error.hpp"

namespace fqm {

/// Exact element of Q(ω_M) of the form 2^(-scale_log2) · Σ_k coeffs[k] · ω_M^k,
/// where ω_M = exp(2πi/M) and the sum runs over the power basis of Z[ω_M].
///
/// Supported orders: M = 2^m with 2 <= M <= 32 (basis 1..ω^(M/2-1), reduced by
/// ω^(M/2) = -1) and odd primes M <= 17 (basis 1..ω^(M-2), reduced by
/// 1 + ω + ... + ω^(M-1) = 0). The representation is canonical: coefficients
/// are never all even unless the value is zero, and zero has scale 0, so
/// equality and the zero test are exact.
class CycNum {
public:
    static constexpr int kMaxCoeffs = 16;
    using Coeffs = std::array<std::int64_t, kMaxCoeffs>;

    static bool is_supported_order(std::int64_t order) noexcept;
    /// φ(order); throws UnsupportedOrder.
    static int basis_length(std::int64_t order);

    CycNum() : CycNum(zero(8)) {}

    static CycNum zero(std::int64_t order);
    static CycNum one(std::int64_t order) { return from_int(order, 1); }
    static CycNum from_int(std::int64_t order, std::int64_t v);
    /// ω_order^e; e is reduced mod order first.
    static CycNum root(std::int64_t order, std::int64_t e);
    /// √2 = ω_8 + ω_8^(-1); needs 8 | order.
    static CycNum sqrt2(std::int64_t order);
    /// 2^(-k/2) for k >= 0; odd k needs 8 | order.
    static CycNum inv_sqrt_pow2(std::int64_t order, int k);
    static CycNum from_coeffs(std::int64_t order, std::span<const std::int64_t> coeffs, int scale_log2);

    std::int64_t order() const noexcept { return order_; }
    int scale_log2() const noexcept { return scale_; }
    std::span<const std::int64_t> coeffs() const noexcept {
        return {c_.data(), static_cast<std::size_t>(len_)};
    }

    bool is_zero() const noexcept;
    /// ω^k -> ω^(-k).
    CycNum conj() const;
    /// Multiply by 2^k (k may be negative).
    CycNum mul_pow2(int k) const;
    /// Re-express in a larger power-of-two order; throws OrderMismatch.
    CycNum promote(std::int64_t order) const;
    std::complex<double> to_complex() const;
    std::string to_string() const;

    CycNum operator-() const;
    friend CycNum operator+(const CycNum& a, const CycNum& b);
    friend CycNum operator-(const CycNum& a, const CycNum& b);
    friend CycNum operator*(const CycNum& a, const CycNum& b);
    CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
    CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
    CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
    friend bool operator==(const CycNum& a, const CycNum& b);

private:
    friend class CycAccumulator;

    CycNum(std::int64_t order, int len) : order_(order), len_(len), scale_(0), c_{} {}
    void normalize();

    std::int64_t order_;
    int len_;
    int scale_;
    Coeffs c_;
};

/// Order both operands can live in, or OrderMismatch.
std::int64_t common_order(std::int64_t a, std::int64_t b);

inline CycNum cyc_root(std::int64_t order, std::int64_t e) { return CycNum::root(order, e); }
inline CycNum cyc_conj(const CycNum& x) { return x.conj(); }
inline bool cyc_is_zero(const CycNum& x) { return x.is_zero(); }
inline std::complex<double> cyc_to_complex(const CycNum& x) { return x.to_complex(); }

/// Running sum of products in a fixed order with a deferred common scale.
/// Normalization happens once in result(); used by the exact matrix product.
class CycAccumulator {
public:
    explicit CycAccumulator(std::int64_t order);

    void add_product(const CycNum& a, const CycNum& b);
    void add(const CycNum& a);
    CycNum result() const;

private:
    void add_raw(const std::int64_t* raw, int scale);

    std::int64_t order_;
    int len_;
    bool pow2_;
    bool empty_ = true;
    int scale_ = 0;
    CycNum::Coeffs acc_{};
};

void to_json(nlohmann::json& j, const CycNum& x);
void from_json(const nlohmann::json& j, CycNum& x);

}  // namespace fqm
