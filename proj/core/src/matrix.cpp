#include "fqm/matrix.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fqm/zmod.hpp"

namespace fqm {

std::string_view to_string(Backend b) noexcept { return b == Backend::exact ? "exact" : "float"; }

Backend parse_backend(std::string_view s) {
    if (s == "exact") return Backend::exact;
    if (s == "float") return Backend::floating;
    throw Error(ErrorCode::ParseError, "unknown backend '" + std::string(s) + "'");
}

ExactField ExactField::for_modulus(std::int64_t N) {
    if (is_power_of_two(N)) {
        const std::int64_t order = std::max<std::int64_t>(N, 8);
        if (!CycNum::is_supported_order(order)) {
            throw Error(ErrorCode::UnsupportedOrder, "exact backend covers N = 2^n up to 32, got " + std::to_string(N));
        }
        return {order};
    }
    if (CycNum::is_supported_order(N)) return {N};
    throw Error(ErrorCode::UnsupportedOrder, "no exact field for N = " + std::to_string(N));
}

CycNum ExactField::root(std::int64_t N, std::int64_t e) const {
    if (order % N != 0) {
        throw Error(ErrorCode::UnsupportedOrder,
                    "ω_" + std::to_string(N) + " does not live in order " + std::to_string(order));
    }
    return CycNum::root(order, floor_mod(e, N) * (order / N));
}

CycNum ExactField::inv_sqrt(std::int64_t N) const {
    if (!is_power_of_two(N)) {
        throw Error(ErrorCode::UnsupportedOrder, "exact 1/sqrt(N) only for N = 2^n");
    }
    int k = 0;
    while ((std::int64_t{1} << k) < N) ++k;
    return CycNum::inv_sqrt_pow2(order, k);
}

CycNum ExactField::imag_unit() const { return root(4, 1); }

Complex FloatField::root(std::int64_t N, std::int64_t e) const {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(floor_mod(e, N)) / static_cast<double>(N);
    return {std::cos(angle), std::sin(angle)};
}

Complex FloatField::inv_sqrt(std::int64_t N) const { return {1.0 / std::sqrt(static_cast<double>(N)), 0.0}; }

FloatMatrix inverse(const FloatMatrix& a, double pivot_tol) {
    const std::size_t d = a.dim();
    FloatMatrix work = a;
    FloatMatrix inv = identity_like(a);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
        }
        if (std::abs(work(pivot, col)) < pivot_tol) throw Error(ErrorCode::NotInvertible, "singular matrix");
        if (pivot != col) {
            for (std::size_t j = 0; j < d; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const Complex scale = 1.0 / work(col, col);
        for (std::size_t j = 0; j < d; ++j) {
            work(col, j) *= scale;
            inv(col, j) *= scale;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const Complex f = work(r, col);
            if (f == Complex{}) continue;
            for (std::size_t j = 0; j < d; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::optional<Complex> proportionality(const FloatMatrix& a, const FloatMatrix& b, double tol) {
    require_same_dim(a, b);
    std::size_t best = 0;
    for (std::size_t i = 1; i < b.data().size(); ++i) {
        if (std::abs(b.data()[i]) > std::abs(b.data()[best])) best = i;
    }
    if (std::abs(b.data()[best]) < tol) {
        return mat_eq(a, b, tol).equal ? std::optional<Complex>(Complex{1.0}) : std::nullopt;
    }
    const Complex lambda = a.data()[best] / b.data()[best];
    if (mat_eq(a, scalar_mul(lambda, b), tol).equal) return lambda;
    return std::nullopt;
}

double phase_defect_norm(const FloatMatrix& a, const FloatMatrix& b) {
    require_same_dim(a, b);
    Complex overlap{};
    for (std::size_t i = 0; i < a.data().size(); ++i) overlap += std::conj(b.data()[i]) * a.data()[i];
    const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0};
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) sum += std::norm(a.data()[i] - phase * b.data()[i]);
    return std::sqrt(sum);
}

std::size_t OpMatrix::dim() const {
    return std::visit([](const auto& m) { return m.dim(); }, m_);
}

const ExactMatrix& OpMatrix::exact() const {
    if (const auto* m = std::get_if<ExactMatrix>(&m_)) return *m;
    throw Error(ErrorCode::BackendMismatch, "matrix is not exact");
}

const FloatMatrix& OpMatrix::floating() const {
    if (const auto* m = std::get_if<FloatMatrix>(&m_)) return *m;
    throw Error(ErrorCode::BackendMismatch, "matrix is not float");
}

FloatMatrix OpMatrix::as_float() const {
    return std::visit([](const auto& m) { return to_float(m); }, m_);
}

namespace {

void require_same_backend(const OpMatrix& a, const OpMatrix& b) {
    if (a.backend() != b.backend()) {
        throw Error(ErrorCode::BackendMismatch,
                    std::string(to_string(a.backend())) + " vs " + std::string(to_string(b.backend())));
    }
}

}  // namespace

OpMatrix operator*(const OpMatrix& a, const OpMatrix& b) {
    require_same_backend(a, b);
    if (a.backend() == Backend::exact) return OpMatrix(a.exact() * b.exact());
    return OpMatrix(a.floating() * b.floating());
}

OpMatrix operator+(const OpMatrix& a, const OpMatrix& b) {
    require_same_backend(a, b);
    if (a.backend() == Backend::exact) return OpMatrix(a.exact() + b.exact());
    return OpMatrix(a.floating() + b.floating());
}

OpMatrix dagger(const OpMatrix& a) {
    if (a.backend() == Backend::exact) return OpMatrix(dagger(a.exact()));
    return OpMatrix(dagger(a.floating()));
}

OpMatrix pow(const OpMatrix& a, std::int64_t k) {
    if (a.backend() == Backend::exact) return OpMatrix(pow(a.exact(), k));
    return OpMatrix(pow(a.floating(), k));
}

OpMatrix kron(const OpMatrix& a, const OpMatrix& b) {
    require_same_backend(a, b);
    if (a.backend() == Backend::exact) return OpMatrix(kron(a.exact(), b.exact()));
    return OpMatrix(kron(a.floating(), b.floating()));
}

MatEq mat_eq(const OpMatrix& a, const OpMatrix& b, double tol) {
    require_same_backend(a, b);
    if (a.backend() == Backend::exact) return mat_eq(a.exact(), b.exact(), tol);
    return mat_eq(a.floating(), b.floating(), tol);
}

nlohmann::json to_json(const OpMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    const std::size_t d = m.dim();
    for (std::size_t i = 0; i < d; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < d; ++j) {
            if (m.backend() == Backend::exact) {
                row.push_back(m.exact()(i, j));
            } else {
                const Complex z = m.floating()(i, j);
                row.push_back({{"re", z.real()}, {"im", z.imag()}});
            }
        }
        rows.push_back(std::move(row));
    }
    return {{"dim", d}, {"backend", to_string(m.backend())}, {"entries", std::move(rows)}};
}

OpMatrix op_matrix_from_json(const nlohmann::json& j) {
    try {
        const auto d = j.at("dim").get<std::size_t>();
        const Backend backend = parse_backend(j.at("backend").get<std::string>());
        const auto& rows = j.at("entries");
        if (rows.size() != d) throw Error(ErrorCode::DimMismatch, "row count differs from dim");
        if (backend == Backend::exact) {
            ExactMatrix m(d, CycNum::zero(8));
            for (std::size_t r = 0; r < d; ++r) {
                if (rows[r].size() != d) throw Error(ErrorCode::DimMismatch, "ragged row");
                for (std::size_t c = 0; c < d; ++c) m(r, c) = rows[r][c].get<CycNum>();
            }
            return OpMatrix(std::move(m));
        }
        FloatMatrix m(d, Complex{});
        for (std::size_t r = 0; r < d; ++r) {
            if (rows[r].size() != d) throw Error(ErrorCode::DimMismatch, "ragged row");
            for (std::size_t c = 0; c < d; ++c) {
                m(r, c) = {rows[r][c].at("re").get<double>(), rows[r][c].at("im").get<double>()};
            }
        }
        return OpMatrix(std::move(m));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::string to_csv(const OpMatrix& m) {
    const FloatMatrix f = m.as_float();
    std::ostringstream os;
    os << std::setprecision(17);
    os << "dim," << f.dim() << ",backend," << to_string(m.backend()) << "\n";
    for (std::size_t i = 0; i < f.dim(); ++i) {
        for (std::size_t j = 0; j < f.dim(); ++j) {
            if (j) os << ",";
            os << f(i, j).real() << "," << f(i, j).imag();
        }
        os << "\n";
    }
    return os.str();
}

std::string to_text(const OpMatrix& m) {
    std::ostringstream os;
    const std::size_t d = m.dim();
    if (m.backend() == Backend::exact) {
        os << "# dim " << d << ", exact, w = exp(2 pi i/" << m.exact()(0, 0).order() << ")\n";
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) os << (j ? "\t" : "") << m.exact()(i, j).to_string();
            os << "\n";
        }
        return os.str();
    }
    os << "# dim " << d << ", float\n";
    const auto clean = [](double x) { return std::abs(x) < 5e-13 ? 0.0 : x; };
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const Complex z = m.floating()(i, j);
            os << (j ? "\t" : "") << std::setprecision(6) << clean(z.real()) << std::showpos << clean(z.imag())
               << "i" << std::noshowpos;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace fqm
