#include "fqm/cycnum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fqm/zmod.hpp"

namespace fqm {

namespace {

constexpr std::int64_t kMaxPow2Order = 2 * CycNum::kMaxCoeffs;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "cyclotomic coefficient addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "cyclotomic coefficient product");
    return r;
}

std::int64_t checked_shl(std::int64_t a, int k) {
    if (k == 0 || a == 0) return a;
    if (k >= 62) throw Error(ErrorCode::Overflow, "cyclotomic scale shift");
    const std::int64_t r = a * (std::int64_t{1} << k);
    if (r / (std::int64_t{1} << k) != a) throw Error(ErrorCode::Overflow, "cyclotomic scale shift");
    return r;
}

// Product of two coefficient vectors in the same order, written to out[0..len).
void multiply_into(std::int64_t order, int len, const std::int64_t* a, const std::int64_t* b,
                   std::int64_t* out) {
    if (is_power_of_two(order)) {
        std::fill(out, out + len, 0);
        for (int i = 0; i < len; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < len; ++j) {
                if (b[j] == 0) continue;
                const std::int64_t prod = checked_mul(a[i], b[j]);
                const int k = i + j;
                if (k < len) {
                    out[k] = checked_add(out[k], prod);
                } else {
                    out[k - len] = checked_add(out[k - len], -prod);
                }
            }
        }
        return;
    }
    // Odd prime p: reduce exponents mod p, then eliminate ω^(p-1).
    const int p = static_cast<int>(order);
    std::array<std::int64_t, CycNum::kMaxCoeffs + 1> buf{};
    for (int i = 0; i < len; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < len; ++j) {
            if (b[j] == 0) continue;
            const int k = (i + j) % p;
            buf[k] = checked_add(buf[k], checked_mul(a[i], b[j]));
        }
    }
    for (int k = 0; k < len; ++k) out[k] = checked_add(buf[k], -buf[p - 1]);
}

}  // namespace

bool CycNum::is_supported_order(std::int64_t order) noexcept {
    if (is_power_of_two(order)) return order >= 2 && order <= kMaxPow2Order;
    return is_odd_prime(order) && order - 1 <= kMaxCoeffs;
}

int CycNum::basis_length(std::int64_t order) {
    if (!is_supported_order(order)) {
        throw Error(ErrorCode::UnsupportedOrder, "cyclotomic order " + std::to_string(order));
    }
    return static_cast<int>(is_power_of_two(order) ? order / 2 : order - 1);
}

std::int64_t common_order(std::int64_t a, std::int64_t b) {
    if (a == b) return a;
    if (is_power_of_two(a) && is_power_of_two(b)) return std::max(a, b);
    throw Error(ErrorCode::OrderMismatch,
                "orders " + std::to_string(a) + " and " + std::to_string(b) + " do not embed");
}

CycNum CycNum::zero(std::int64_t order) { return CycNum(order, basis_length(order)); }

CycNum CycNum::from_int(std::int64_t order, std::int64_t v) {
    CycNum x(order, basis_length(order));
    x.c_[0] = v;
    x.normalize();
    return x;
}

CycNum CycNum::root(std::int64_t order, std::int64_t e) {
    CycNum x(order, basis_length(order));
    const std::int64_t k = floor_mod(e, order);
    if (is_power_of_two(order)) {
        if (k < x.len_) {
            x.c_[static_cast<std::size_t>(k)] = 1;
        } else {
            x.c_[static_cast<std::size_t>(k - x.len_)] = -1;
        }
    } else if (k < x.len_) {
        x.c_[static_cast<std::size_t>(k)] = 1;
    } else {
        for (int i = 0; i < x.len_; ++i) x.c_[static_cast<std::size_t>(i)] = -1;
    }
    return x;
}

CycNum CycNum::sqrt2(std::int64_t order) {
    if (!is_power_of_two(order) || order < 8) {
        throw Error(ErrorCode::UnsupportedOrder, "sqrt(2) needs an order divisible by 8");
    }
    const std::int64_t eighth = order / 8;
    return root(order, eighth) + root(order, -eighth);
}

CycNum CycNum::inv_sqrt_pow2(std::int64_t order, int k) {
    if (k < 0) throw Error(ErrorCode::InvalidParams, "inv_sqrt_pow2 needs k >= 0");
    if (k % 2 == 0) return one(order).mul_pow2(-k / 2);
    // 2^(-k/2) = sqrt(2) * 2^(-(k+1)/2)
    return sqrt2(order).mul_pow2(-(k + 1) / 2);
}

CycNum CycNum::from_coeffs(std::int64_t order, std::span<const std::int64_t> coeffs, int scale_log2) {
    CycNum x(order, basis_length(order));
    if (coeffs.size() != static_cast<std::size_t>(x.len_)) {
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(x.len_) + " coefficients for order " +
                                               std::to_string(order));
    }
    std::copy(coeffs.begin(), coeffs.end(), x.c_.begin());
    x.scale_ = scale_log2;
    x.normalize();
    return x;
}

void CycNum::normalize() {
    bool all_zero = true;
    bool all_even = true;
    for (int i = 0; i < len_; ++i) {
        if (c_[static_cast<std::size_t>(i)] != 0) all_zero = false;
        if (c_[static_cast<std::size_t>(i)] & 1) all_even = false;
    }
    if (all_zero) {
        scale_ = 0;
        return;
    }
    while (all_even) {
        for (int i = 0; i < len_; ++i) {
            auto& c = c_[static_cast<std::size_t>(i)];
            c /= 2;
            if (c & 1) all_even = false;
        }
        --scale_;
    }
}

bool CycNum::is_zero() const noexcept {
    for (int i = 0; i < len_; ++i) {
        if (c_[static_cast<std::size_t>(i)] != 0) return false;
    }
    return true;
}

CycNum CycNum::conj() const {
    CycNum out = zero(order_);
    for (int k = 0; k < len_; ++k) {
        const std::int64_t c = c_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        out = out + from_int(order_, c) * root(order_, -k);
    }
    out.scale_ = out.is_zero() ? 0 : out.scale_ + scale_;
    return out;
}

CycNum CycNum::mul_pow2(int k) const {
    CycNum out = *this;
    if (!out.is_zero()) out.scale_ -= k;
    return out;
}

CycNum CycNum::promote(std::int64_t order) const {
    if (order == order_) return *this;
    if (!is_power_of_two(order_) || !is_power_of_two(order) || order < order_) {
        throw Error(ErrorCode::OrderMismatch,
                    "cannot promote order " + std::to_string(order_) + " into " + std::to_string(order));
    }
    CycNum out(order, basis_length(order));
    const std::int64_t f = order / order_;
    for (int k = 0; k < len_; ++k) {
        out.c_[static_cast<std::size_t>(k * f)] = c_[static_cast<std::size_t>(k)];
    }
    out.scale_ = scale_;
    return out;
}

std::complex<double> CycNum::to_complex() const {
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < len_; ++k) {
        const std::int64_t c = c_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order_);
        acc += static_cast<double>(c) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return std::ldexp(1.0, -scale_) * acc;
}

std::string CycNum::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream body;
    bool first = true;
    int terms = 0;
    for (int k = 0; k < len_; ++k) {
        std::int64_t c = c_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        ++terms;
        if (!first) body << (c < 0 ? " - " : " + ");
        else if (c < 0) body << "-";
        if (c < 0) c = -c;
        first = false;
        if (k == 0) {
            body << c;
        } else {
            if (c != 1) body << c << "*";
            body << "w^" << k;
        }
    }
    std::ostringstream out;
    const bool wrap = terms > 1 && scale_ != 0;
    if (scale_ < 0) out << (std::int64_t{1} << -scale_) << "*";
    out << (wrap ? "(" : "") << body.str() << (wrap ? ")" : "");
    if (scale_ > 0) out << "/" << (std::int64_t{1} << scale_);
    return out.str();
}

CycNum CycNum::operator-() const {
    CycNum out = *this;
    for (int i = 0; i < len_; ++i) out.c_[static_cast<std::size_t>(i)] = -out.c_[static_cast<std::size_t>(i)];
    return out;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
    const std::int64_t order = common_order(a.order_, b.order_);
    if (a.order_ != order || b.order_ != order) return a.promote(order) + b.promote(order);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    CycNum out(order, a.len_);
    const int scale = std::max(a.scale_, b.scale_);
    for (int i = 0; i < a.len_; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out.c_[idx] = checked_add(checked_shl(a.c_[idx], scale - a.scale_), checked_shl(b.c_[idx], scale - b.scale_));
    }
    out.scale_ = scale;
    out.normalize();
    return out;
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
    const std::int64_t order = common_order(a.order_, b.order_);
    if (a.order_ != order || b.order_ != order) return a.promote(order) * b.promote(order);
    CycNum out(order, a.len_);
    if (a.is_zero() || b.is_zero()) return out;
    multiply_into(order, a.len_, a.c_.data(), b.c_.data(), out.c_.data());
    out.scale_ = a.scale_ + b.scale_;
    out.normalize();
    return out;
}

bool operator==(const CycNum& a, const CycNum& b) {
    if (a.order_ != b.order_) {
        const std::int64_t order = common_order(a.order_, b.order_);
        return a.promote(order) == b.promote(order);
    }
    if (a.scale_ != b.scale_) return false;
    for (int i = 0; i < a.len_; ++i) {
        if (a.c_[static_cast<std::size_t>(i)] != b.c_[static_cast<std::size_t>(i)]) return false;
    }
    return true;
}

CycAccumulator::CycAccumulator(std::int64_t order)
    : order_(order), len_(CycNum::basis_length(order)), pow2_(is_power_of_two(order)) {}

void CycAccumulator::add_raw(const std::int64_t* raw, int scale) {
    if (empty_) {
        std::copy(raw, raw + len_, acc_.begin());
        scale_ = scale;
        empty_ = false;
        return;
    }
    if (scale > scale_) {
        for (int i = 0; i < len_; ++i) acc_[static_cast<std::size_t>(i)] = checked_shl(acc_[static_cast<std::size_t>(i)], scale - scale_);
        scale_ = scale;
    }
    const int shift = scale_ - scale;
    for (int i = 0; i < len_; ++i) {
        auto& slot = acc_[static_cast<std::size_t>(i)];
        slot = checked_add(slot, checked_shl(raw[i], shift));
    }
}

void CycAccumulator::add_product(const CycNum& a, const CycNum& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (a.order_ != order_ || b.order_ != order_) {
        add(a * b);
        return;
    }
    CycNum::Coeffs tmp;
    multiply_into(order_, len_, a.c_.data(), b.c_.data(), tmp.data());
    add_raw(tmp.data(), a.scale_ + b.scale_);
}

void CycAccumulator::add(const CycNum& a) {
    if (a.is_zero()) return;
    const CycNum x = a.promote(order_);
    add_raw(x.c_.data(), x.scale_);
}

CycNum CycAccumulator::result() const {
    CycNum out(order_, len_);
    if (empty_) return out;
    out.c_ = acc_;
    out.scale_ = scale_;
    out.normalize();
    return out;
}

void to_json(nlohmann::json& j, const CycNum& x) {
    j = nlohmann::json{{"order", x.order()},
                       {"coeffs", std::vector<std::int64_t>(x.coeffs().begin(), x.coeffs().end())},
                       {"scale_log2", x.scale_log2()}};
}

void from_json(const nlohmann::json& j, CycNum& x) {
    try {
        const auto coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
        x = CycNum::from_coeffs(j.at("order").get<std::int64_t>(), coeffs, j.at("scale_log2").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

}  // namespace fqm
