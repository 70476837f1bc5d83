#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fqm/cycnum.hpp"
#include "fqm/error.hpp"

namespace fqm {

using Complex = std::complex<double>;

enum class Backend { exact, floating };

std::string_view to_string(Backend b) noexcept;
Backend parse_backend(std::string_view s);

// Scalar helpers shared by both backends.
inline bool scalar_is_zero(const CycNum& x) noexcept { return x.is_zero(); }
inline bool scalar_is_zero(const Complex& x) noexcept { return x == Complex{}; }
inline CycNum scalar_conj(const CycNum& x) { return x.conj(); }
inline Complex scalar_conj(const Complex& x) { return std::conj(x); }
inline Complex scalar_to_complex(const CycNum& x) { return x.to_complex(); }
inline Complex scalar_to_complex(const Complex& x) { return x; }

/// Exact scalars: every value lives in Q(ω_order) with order = max(N, 8) for
/// N = 2^n, so √2 and hence 2^(-n/2) are representable. Odd prime N uses order N
/// (no square roots available).
struct ExactField {
    using Scalar = CycNum;
    static constexpr Backend backend = Backend::exact;

    std::int64_t order;

    /// Field able to hold the N-th roots of unity and, for N = 2^n, N^(-1/2).
    static ExactField for_modulus(std::int64_t N);

    Scalar zero() const { return CycNum::zero(order); }
    Scalar one() const { return CycNum::one(order); }
    Scalar from_int(std::int64_t v) const { return CycNum::from_int(order, v); }
    /// ω_N^e, N must divide the field order.
    Scalar root(std::int64_t N, std::int64_t e) const;
    /// N^(-1/2) for N a power of two.
    Scalar inv_sqrt(std::int64_t N) const;
    Scalar imag_unit() const;
};

struct FloatField {
    using Scalar = Complex;
    static constexpr Backend backend = Backend::floating;

    static FloatField for_modulus(std::int64_t) { return {}; }

    Scalar zero() const { return {}; }
    Scalar one() const { return {1.0, 0.0}; }
    Scalar from_int(std::int64_t v) const { return {static_cast<double>(v), 0.0}; }
    Scalar root(std::int64_t N, std::int64_t e) const;
    Scalar inv_sqrt(std::int64_t N) const;
    Scalar imag_unit() const { return {0.0, 1.0}; }
};

/// Dense square matrix, row-major. Composite indices of tensor products follow
/// row = d2*k1 + k2 (first factor major).
template <class S>
class Matrix {
public:
    using Scalar = S;

    Matrix(std::size_t dim, const S& fill) : dim_(dim), data_(dim * dim, fill) {
        if (dim == 0) throw Error(ErrorCode::DimMismatch, "matrix dimension must be >= 1");
    }

    std::size_t dim() const noexcept { return dim_; }
    S& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    const std::vector<S>& data() const noexcept { return data_; }

    const std::string& label() const noexcept { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    /// Zero scalar of this matrix's field (order-preserving for exact entries).
    S zero_scalar() const {
        if constexpr (std::is_same_v<S, CycNum>) {
            return CycNum::zero(data_.front().order());
        } else {
            return S{};
        }
    }

private:
    std::size_t dim_;
    std::vector<S> data_;
    std::string label_;
};

using ExactMatrix = Matrix<CycNum>;
using FloatMatrix = Matrix<Complex>;

template <class F>
using MatrixOf = Matrix<typename F::Scalar>;

template <class F>
MatrixOf<F> identity(const F& field, std::size_t dim) {
    MatrixOf<F> m(dim, field.zero());
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = field.one();
    return m;
}

/// Permutation sending basis index d*a + b to d*b + a.
template <class F>
MatrixOf<F> twist_perm(const F& field, std::size_t d) {
    MatrixOf<F> m(d * d, field.zero());
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) m(d * b + a, d * a + b) = field.one();
    }
    return m;
}

template <class S>
void require_same_dim(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::DimMismatch, std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

/// Product that skips structural zeros on both sides, so monomial and diagonal
/// operands cost O(dim^2).
template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
    require_same_dim(a, b);
    const std::size_t d = a.dim();
    std::vector<std::vector<std::size_t>> b_rows(d);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < d; ++j) {
            if (!scalar_is_zero(b(k, j))) b_rows[k].push_back(j);
        }
    }
    Matrix<S> out(d, a.zero_scalar());
    if constexpr (std::is_same_v<S, CycNum>) {
        const std::int64_t order = common_order(a(0, 0).order(), b(0, 0).order());
        std::vector<CycAccumulator> row(d, CycAccumulator(order));
        for (std::size_t i = 0; i < d; ++i) {
            std::fill(row.begin(), row.end(), CycAccumulator(order));
            for (std::size_t k = 0; k < d; ++k) {
                const CycNum& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j : b_rows[k]) row[j].add_product(x, b(k, j));
            }
            for (std::size_t j = 0; j < d; ++j) out(i, j) = row[j].result();
        }
    } else {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                const S& x = a(i, k);
                if (scalar_is_zero(x)) continue;
                for (std::size_t j : b_rows[k]) out(i, j) += x * b(k, j);
            }
        }
    }
    return out;
}

template <class S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b) {
    require_same_dim(a, b);
    Matrix<S> out = a;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a(i, j) + b(i, j);
    }
    out.set_label({});
    return out;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& a, const Matrix<S>& b) {
    require_same_dim(a, b);
    Matrix<S> out = a;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a(i, j) - b(i, j);
    }
    out.set_label({});
    return out;
}

template <class S>
Matrix<S> scalar_mul(const S& s, const Matrix<S>& a) {
    Matrix<S> out = a;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = s * a(i, j);
    }
    out.set_label({});
    return out;
}

template <class S>
Matrix<S> dagger(const Matrix<S>& a) {
    Matrix<S> out(a.dim(), a.zero_scalar());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(j, i) = scalar_conj(a(i, j));
    }
    return out;
}

template <class S>
Matrix<S> identity_like(const Matrix<S>& a) {
    Matrix<S> out(a.dim(), a.zero_scalar());
    S one;
    if constexpr (std::is_same_v<S, CycNum>) {
        one = CycNum::one(a(0, 0).order());
    } else {
        one = S{1.0};
    }
    for (std::size_t i = 0; i < a.dim(); ++i) out(i, i) = one;
    return out;
}

/// a^k for k >= 0 by repeated squaring.
template <class S>
Matrix<S> pow(const Matrix<S>& a, std::int64_t k) {
    if (k < 0) throw Error(ErrorCode::InvalidParams, "matrix pow needs k >= 0");
    Matrix<S> acc = identity_like(a);
    Matrix<S> base = a;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

/// (kron(a,b))[d2*k1 + k2, d2*j1 + j2] = a[k1,j1] * b[k2,j2].
template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
    const std::size_t d1 = a.dim();
    const std::size_t d2 = b.dim();
    Matrix<S> out(d1 * d2, a.zero_scalar());
    for (std::size_t k1 = 0; k1 < d1; ++k1) {
        for (std::size_t j1 = 0; j1 < d1; ++j1) {
            const S& x = a(k1, j1);
            if (scalar_is_zero(x)) continue;
            for (std::size_t k2 = 0; k2 < d2; ++k2) {
                for (std::size_t j2 = 0; j2 < d2; ++j2) out(d2 * k1 + k2, d2 * j1 + j2) = x * b(k2, j2);
            }
        }
    }
    return out;
}

struct MatEq {
    bool equal;
    double max_deviation;
};

/// Exact matrices compare canonical forms and ignore tol; the deviation is still
/// reported in floating point. Float matrices compare max |a_ij - b_ij| <= tol.
template <class S>
MatEq mat_eq(const Matrix<S>& a, const Matrix<S>& b, double tol = 0.0) {
    require_same_dim(a, b);
    bool exact_equal = true;
    double dev = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        const S& x = a.data()[i];
        const S& y = b.data()[i];
        if constexpr (std::is_same_v<S, CycNum>) {
            if (!(x == y)) {
                exact_equal = false;
                dev = std::max(dev, std::abs(x.to_complex() - y.to_complex()));
            }
        } else {
            dev = std::max(dev, std::abs(x - y));
        }
    }
    if constexpr (std::is_same_v<S, CycNum>) {
        return {exact_equal, dev};
    } else {
        return {dev <= tol, dev};
    }
}

template <class S>
bool is_unitary(const Matrix<S>& a, double tol = 0.0) {
    return mat_eq(a * dagger(a), identity_like(a), tol).equal;
}

/// Entrywise floating image of a matrix.
template <class S>
FloatMatrix to_float(const Matrix<S>& a) {
    FloatMatrix out(a.dim(), Complex{});
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = scalar_to_complex(a(i, j));
    }
    out.set_label(a.label());
    return out;
}

/// Gauss-Jordan inverse with partial pivoting; NotInvertible below pivot_tol.
FloatMatrix inverse(const FloatMatrix& a, double pivot_tol = 1e-12);

/// Scalar λ with a = λ·b within tol, if one exists.
std::optional<Complex> proportionality(const FloatMatrix& a, const FloatMatrix& b, double tol);

/// min over φ of the Frobenius norm ||a - e^{iφ} b||.
double phase_defect_norm(const FloatMatrix& a, const FloatMatrix& b);

/// Backend-tagged matrix, used at the CLI / serialization boundary.
class OpMatrix {
public:
    OpMatrix(ExactMatrix m) : m_(std::move(m)) {}
    OpMatrix(FloatMatrix m) : m_(std::move(m)) {}

    Backend backend() const noexcept {
        return std::holds_alternative<ExactMatrix>(m_) ? Backend::exact : Backend::floating;
    }
    std::size_t dim() const;
    const ExactMatrix& exact() const;
    const FloatMatrix& floating() const;
    FloatMatrix as_float() const;

    friend OpMatrix operator*(const OpMatrix& a, const OpMatrix& b);
    friend OpMatrix operator+(const OpMatrix& a, const OpMatrix& b);

private:
    std::variant<ExactMatrix, FloatMatrix> m_;
};

OpMatrix dagger(const OpMatrix& a);
OpMatrix pow(const OpMatrix& a, std::int64_t k);
OpMatrix kron(const OpMatrix& a, const OpMatrix& b);
MatEq mat_eq(const OpMatrix& a, const OpMatrix& b, double tol);

/// {"dim": d, "backend": "...", "entries": row-major [[{re, im}]] or CycNum objects}.
nlohmann::json to_json(const OpMatrix& m);
OpMatrix op_matrix_from_json(const nlohmann::json& j);
/// First line "dim,<d>,backend,<b>", then one row per line as re,im pairs.
std::string to_csv(const OpMatrix& m);
/// Human-readable listing, one row per line.
std::string to_text(const OpMatrix& m);

}  // namespace fqm
