#pragma once

// Dense matrices over K = F_q((t)) and the linear algebra the model and
// descent computations need: division-free characteristic polynomials,
// exact ranks of Laurent-polynomial matrices, linear solves over K and a
// Smith normal form over the truncated DVR R = F_q[[t]].

#include <optional>
#include <string>
#include <vector>

#include "maxmodel/algebra.hpp"

namespace maxmodel {

class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)),
          rows_(rows),
          cols_(cols),
          a_(rows * cols, LaurentSeries::zero(field_)) {}

    static Matrix identity(FieldPtr field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentSeries::one(field);
        return m;
    }

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    LaurentSeries& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const LaurentSeries& operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw DomainError("matrix dimension mismatch");
        Matrix r(x.field_, x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const auto& xik = x(i, k);
                if (xik.is_exact_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    const auto& ykj = y(k, j);
                    if (ykj.is_exact_zero()) continue;
                    r(i, j) += xik * ykj;
                }
            }
        return r;
    }

    Matrix truncated(int cap) const {
        Matrix m = *this;
        for (auto& e : m.a_) e = e.truncated(cap);
        return m;
    }

    bool all_exact() const {
        for (const auto& e : a_)
            if (!e.is_exact()) return false;
        return true;
    }

    /// Smallest entry precision.
    int precision() const {
        int p = kExact;
        for (const auto& e : a_) p = std::min(p, e.precision());
        return p;
    }

    /// True when every entry is known to be integral.
    bool is_integral() const {
        for (const auto& e : a_)
            if (e.known_nonzero() && e.valuation() < 0) return false;
        return true;
    }

    friend bool agree_on_window(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (!agree_on_window(x.a_[i], y.a_[i])) return false;
        return true;
    }

    std::string to_string(const std::string& base = "t") const {
        std::string out = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            out += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) out += ", ";
                out += (*this)(i, j).to_string(base);
            }
            out += "]";
        }
        return out + "]";
    }

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<LaurentSeries> a_;
};

/// Coordinates of x * x_0^j (columns j) in the monomial basis of a
/// one-relation ring: the matrix of multiplication by x.
inline Matrix multiplication_matrix(const QElement& x) {
    const auto& ring = x.ring();
    if (ring->arity() != 1) throw DomainError("multiplication_matrix needs a monogenic ring");
    const auto n = static_cast<std::size_t>(ring->dim(0));
    Matrix m(ring->field(), n, n);
    QElement col = x;
    const QElement gen = QElement::variable(ring, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col.coeff_at(i);
        if (j + 1 < n) col = col * gen;
    }
    return m;
}

/// det(Z*I - M) by Berkowitz' division-free recursion; monic of degree n.
inline Poly characteristic_polynomial(const Matrix& m, int cap = kExact) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw DomainError("characteristic polynomial of a non-square matrix");
    const auto& f = m.field();
    auto trunc = [cap](LaurentSeries s) { return s.truncated(cap); };
    if (n == 0) return Poly::monic(f, {});
    // Highest-degree-first coefficient vector for the trailing 1x1 block.
    std::vector<LaurentSeries> poly = {LaurentSeries::one(f), -m(n - 1, n - 1)};
    for (std::size_t start = n - 1; start-- > 0;) {
        // Block is rows/cols [start, n). a = top-left, R = top row rest,
        // C = left column rest, A = trailing block.
        const std::size_t k = n - start;
        const LaurentSeries& a = m(start, start);
        std::vector<LaurentSeries> q;
        q.push_back(LaurentSeries::one(f));
        q.push_back(-a);
        std::vector<LaurentSeries> vec(k - 1);
        for (std::size_t i = 0; i < k - 1; ++i) vec[i] = m(start + 1 + i, start);
        for (std::size_t step = 0; step + 1 < k; ++step) {
            LaurentSeries rc = LaurentSeries::zero(f);
            for (std::size_t i = 0; i < k - 1; ++i)
                if (!vec[i].is_exact_zero()) rc += m(start, start + 1 + i) * vec[i];
            q.push_back(-trunc(rc));
            if (step + 2 < k) {
                std::vector<LaurentSeries> next(k - 1, LaurentSeries::zero(f));
                for (std::size_t i = 0; i < k - 1; ++i)
                    for (std::size_t j = 0; j < k - 1; ++j)
                        if (!vec[j].is_exact_zero())
                            next[i] += m(start + 1 + i, start + 1 + j) * vec[j];
                for (auto& e : next) e = trunc(e);
                vec = std::move(next);
            }
        }
        std::vector<LaurentSeries> next_poly(k + 1, LaurentSeries::zero(f));
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = 0; j < k && j <= i; ++j)
                if (i - j < q.size()) next_poly[i] += q[i - j] * poly[j];
        for (auto& e : next_poly) e = trunc(e);
        poly = std::move(next_poly);
    }
    std::vector<LaurentSeries> low_first(poly.rbegin(), poly.rend());
    return Poly(f, std::move(low_first));
}

/// Rank over K of a matrix of exact Laurent polynomials (fraction-free
/// Bareiss elimination; every division is exact).
inline std::size_t exact_rank(const Matrix& input) {
    if (!input.all_exact()) throw DomainError("exact_rank needs exact entries");
    Matrix m = input;
    const auto& f = m.field();
    std::size_t rank = 0;
    LaurentSeries prev = LaurentSeries::one(f);
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t piv = m.rows();
        for (std::size_t i = rank; i < m.rows(); ++i)
            if (!m(i, col).is_exact_zero()) {
                piv = i;
                break;
            }
        if (piv == m.rows()) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(rank, j));
        const LaurentSeries pivot = m(rank, col);
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            for (std::size_t j = col + 1; j < m.cols(); ++j) {
                LaurentSeries num = pivot * m(i, j) - m(i, col) * m(rank, j);
                auto q = LaurentSeries::exact_quotient(num, prev);
                if (!q) throw VerificationError("Bareiss division was not exact");
                m(i, j) = *q;
            }
            m(i, col) = LaurentSeries::zero(f);
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

/// Solves M x = b over K by Gaussian elimination with minimal-valuation
/// pivots; quotients are expanded to absolute precision cap.
inline std::vector<LaurentSeries> solve(const Matrix& m, std::vector<LaurentSeries> b, int cap) {
    const std::size_t n = m.rows();
    if (n != m.cols() || b.size() != n) throw DomainError("solve needs a square system");
    Matrix a = m;
    const auto& f = m.field();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        int best = kExact;
        for (std::size_t i = col; i < n; ++i)
            if (a(i, col).known_nonzero() && a(i, col).valuation() < best) {
                best = a(i, col).valuation();
                piv = i;
            }
        if (piv == n) throw PrecisionError("singular system at precision");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            std::swap(b[piv], b[col]);
        }
        const LaurentSeries inv = a(col, col).invert(cap);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col).is_exact_zero()) continue;
            const LaurentSeries factor = (a(i, col) * inv).truncated(cap);
            for (std::size_t j = col; j < n; ++j) a(i, j) = (a(i, j) - factor * a(col, j)).truncated(cap);
            b[i] = (b[i] - factor * b[col]).truncated(cap);
        }
    }
    std::vector<LaurentSeries> x(n, LaurentSeries::zero(f));
    for (std::size_t i = n; i-- > 0;) {
        LaurentSeries acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
        x[i] = LaurentSeries::divide(acc, a(i, i), cap).truncated(cap);
    }
    return x;
}

struct SmithForm {
    Matrix u, u_inv, d, v, v_inv;
    /// Valuations of the diagonal entries; kExact for zero entries.
    std::vector<int> exponents;
    std::size_t rank = 0;
};

struct SmithOptions {
    int cap = 40;      // absolute precision for unit inverses
    int margin = 0;    // required gap between a pivot valuation and the precision
    std::optional<std::size_t> known_rank;  // exact K-rank, if computed separately
};

/// U * M * V = D over R with D diagonal, entries t^{a_1}, t^{a_2}, ... with
/// a_1 <= a_2 <= ..., U and V invertible over R.
inline SmithForm smith_normal_form(const Matrix& m, const SmithOptions& opts = {}) {
    const auto& f = m.field();
    if (!m.is_integral()) throw DomainError("smith_normal_form needs integral entries");
    SmithForm s{Matrix::identity(f, m.rows()), Matrix::identity(f, m.rows()), m,
                Matrix::identity(f, m.cols()), Matrix::identity(f, m.cols()), {}, 0};
    Matrix& d = s.d;
    const std::size_t steps = std::min(m.rows(), m.cols());
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pi = m.rows(), pj = m.cols();
        int best = kExact;
        int min_unknown = kExact;
        bool all_exact_zero = true;
        for (std::size_t i = k; i < m.rows(); ++i)
            for (std::size_t j = k; j < m.cols(); ++j) {
                const auto& e = d(i, j);
                if (!e.is_exact_zero()) all_exact_zero = false;
                if (e.known_nonzero()) {
                    if (e.valuation() < best) {
                        best = e.valuation();
                        pi = i;
                        pj = j;
                    }
                }
                min_unknown = std::min(min_unknown, e.precision());
            }
        const bool rank_reached = opts.known_rank && k >= *opts.known_rank;
        if (rank_reached) {
            if (pi != m.rows())
                throw VerificationError("Smith form found a pivot beyond the exact rank");
            for (std::size_t i = k; i < m.rows(); ++i)
                for (std::size_t j = k; j < m.cols(); ++j) d(i, j) = LaurentSeries::zero(f);
            break;
        }
        if (all_exact_zero) break;
        if (pi == m.rows() || best > detail::sat_add(min_unknown, -opts.margin))
            throw PrecisionError("pivot valuation undecidable at precision " +
                                 std::to_string(min_unknown));
        if (pi != k) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(d(pi, j), d(k, j));
            for (std::size_t j = 0; j < m.rows(); ++j) std::swap(s.u(pi, j), s.u(k, j));
            for (std::size_t i = 0; i < m.rows(); ++i) std::swap(s.u_inv(i, pi), s.u_inv(i, k));
        }
        if (pj != k) {
            for (std::size_t i = 0; i < m.rows(); ++i) std::swap(d(i, pj), d(i, k));
            for (std::size_t i = 0; i < m.cols(); ++i) std::swap(s.v(i, pj), s.v(i, k));
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(s.v_inv(pj, j), s.v_inv(k, j));
        }
        // Normalize the pivot to t^best by scaling row k with the inverse unit.
        const LaurentSeries unit = d(k, k).shifted(-best);
        const LaurentSeries unit_inv = unit.invert(opts.cap);
        for (std::size_t j = 0; j < m.cols(); ++j) d(k, j) = (d(k, j) * unit_inv).truncated(opts.cap);
        for (std::size_t j = 0; j < m.rows(); ++j) s.u(k, j) = (s.u(k, j) * unit_inv).truncated(opts.cap);
        for (std::size_t i = 0; i < m.rows(); ++i) s.u_inv(i, k) = (s.u_inv(i, k) * unit).truncated(opts.cap);
        for (std::size_t i = k + 1; i < m.rows(); ++i) {
            if (d(i, k).is_exact_zero()) continue;
            const LaurentSeries c = d(i, k).shifted(-best);
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!d(k, j).is_exact_zero()) d(i, j) = (d(i, j) - c * d(k, j)).truncated(opts.cap);
            d(i, k) = LaurentSeries::zero(f);
            for (std::size_t j = 0; j < m.rows(); ++j)
                if (!s.u(k, j).is_exact_zero()) s.u(i, j) = (s.u(i, j) - c * s.u(k, j)).truncated(opts.cap);
            for (std::size_t r = 0; r < m.rows(); ++r)
                if (!s.u_inv(r, i).is_exact_zero())
                    s.u_inv(r, k) = (s.u_inv(r, k) + c * s.u_inv(r, i)).truncated(opts.cap);
        }
        for (std::size_t j = k + 1; j < m.cols(); ++j) {
            if (d(k, j).is_exact_zero()) continue;
            const LaurentSeries c = d(k, j).shifted(-best);
            d(k, j) = LaurentSeries::zero(f);
            for (std::size_t i = 0; i < m.cols(); ++i)
                if (!s.v(i, k).is_exact_zero()) s.v(i, j) = (s.v(i, j) - c * s.v(i, k)).truncated(opts.cap);
            for (std::size_t r = 0; r < m.cols(); ++r)
                if (!s.v_inv(j, r).is_exact_zero())
                    s.v_inv(k, r) = (s.v_inv(k, r) + c * s.v_inv(j, r)).truncated(opts.cap);
        }
        d(k, k) = LaurentSeries::t_power(f, best);
        s.exponents.push_back(best);
        ++s.rank;
    }
    while (s.exponents.size() < steps) s.exponents.push_back(kExact);
    return s;
}

}  // namespace maxmodel
