#pragma once

// Truncated Laurent series over F_q: elements of K = F_q((t)).
//
// A series stores its nonzero terms below an absolute precision N: terms
// with exponent < N are exact and everything from t^N on is unknown. The
// sentinel kExact means "no truncation" and is used for Laurent
// polynomials read from text; any operation whose exact result would be an
// infinite expansion (inversion, division) takes an explicit cap.

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxmodel/errors.hpp"
#include "maxmodel/field.hpp"

namespace maxmodel {

inline constexpr int kExact = std::numeric_limits<int>::max();

namespace detail {

inline int sat_add(int a, int b) {
    if (a == kExact || b == kExact) return kExact;
    const long long r = static_cast<long long>(a) + b;
    if (r >= kExact) return kExact - 1;
    if (r <= INT_MIN / 2) return INT_MIN / 2;
    return static_cast<int>(r);
}

inline int sat_mul(int a, int k) {
    if (a == kExact) return kExact;
    const long long r = static_cast<long long>(a) * k;
    if (r >= kExact) return kExact - 1;
    if (r <= INT_MIN / 2) return INT_MIN / 2;
    return static_cast<int>(r);
}

inline int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

class LaurentSeries {
public:
    using Term = std::pair<int, FieldElement>;

    LaurentSeries() = default;

    static LaurentSeries zero(FieldPtr field, int precision = kExact) {
        LaurentSeries s;
        s.field_ = std::move(field);
        s.prec_ = precision;
        return s;
    }

    static LaurentSeries constant(FieldPtr field, FieldElement c, int precision = kExact) {
        return monomial(std::move(field), c, 0, precision);
    }

    static LaurentSeries one(FieldPtr field) { return constant(field, field->one()); }

    static LaurentSeries monomial(FieldPtr field, FieldElement c, int exponent,
                                  int precision = kExact) {
        LaurentSeries s = zero(std::move(field), precision);
        if (c.code != 0 && exponent < precision) s.terms_.push_back({exponent, c});
        return s;
    }

    /// t^k with coefficient 1.
    static LaurentSeries t_power(FieldPtr field, int k) {
        auto one = field->one();
        return monomial(std::move(field), one, k);
    }

    static LaurentSeries from_terms(FieldPtr field, std::vector<Term> terms,
                                    int precision = kExact) {
        LaurentSeries s = zero(std::move(field), precision);
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        for (const auto& [k, c] : terms) {
            if (k >= precision) break;
            if (!s.terms_.empty() && s.terms_.back().first == k)
                s.terms_.back().second = s.field_->add(s.terms_.back().second, c);
            else
                s.terms_.push_back({k, c});
        }
        s.drop_zeros();
        return s;
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }
    int precision() const { return prec_; }
    bool is_exact() const { return prec_ == kExact; }

    /// Minimal stored exponent, or the precision (a lower bound) if no term is known.
    int valuation() const { return terms_.empty() ? prec_ : terms_.front().first; }

    /// True when some nonzero term is known, i.e. the valuation is determined.
    bool known_nonzero() const { return !terms_.empty(); }
    bool is_exact_zero() const { return terms_.empty() && prec_ == kExact; }
    bool is_monomial() const { return terms_.size() == 1 && is_exact(); }
    int max_exponent() const { return terms_.empty() ? INT_MIN / 2 : terms_.back().first; }

    FieldElement leading_coefficient() const {
        if (terms_.empty()) throw PrecisionError("leading coefficient of an unknown series");
        return terms_.front().second;
    }

    FieldElement coeff(int k) const {
        if (k >= prec_) throw PrecisionError("coefficient of t^" + std::to_string(k) +
                                             " lies beyond precision " + std::to_string(prec_));
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term& a, int e) { return a.first < e; });
        if (it != terms_.end() && it->first == k) return it->second;
        return field_->zero();
    }

    /// A unit of R: valuation exactly 0.
    bool is_unit() const { return known_nonzero() && valuation() == 0; }
    bool is_integral() const { return valuation() >= 0; }

    /// Drops terms from t^n on. An exact series with nothing to drop stays exact.
    LaurentSeries truncated(int n) const {
        if (n >= prec_) return *this;
        if (is_exact() && (terms_.empty() || terms_.back().first < n)) return *this;
        LaurentSeries s = zero(field_, n);
        for (const auto& t : terms_)
            if (t.first < n) s.terms_.push_back(t);
        return s;
    }

    /// Multiplication by t^k.
    LaurentSeries shifted(int k) const {
        LaurentSeries s = *this;
        for (auto& t : s.terms_) t.first += k;
        s.prec_ = detail::sat_add(prec_, k);
        return s;
    }

    LaurentSeries scaled(FieldElement c) const {
        if (c.code == 0) return zero(field_, kExact);
        LaurentSeries s = *this;
        for (auto& t : s.terms_) t.second = field_->mul(t.second, c);
        return s;
    }

    LaurentSeries operator-() const {
        LaurentSeries s = *this;
        for (auto& t : s.terms_) t.second = field_->neg(t.second);
        return s;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        a.check_same_field(b);
        LaurentSeries s = zero(a.field_, std::min(a.prec_, b.prec_));
        std::size_t i = 0, j = 0;
        const auto& f = *a.field_;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            Term t;
            if (j == b.terms_.size() ||
                (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                t = a.terms_[i++];
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                t = b.terms_[j++];
            } else {
                t = {a.terms_[i].first, f.add(a.terms_[i].second, b.terms_[j].second)};
                ++i;
                ++j;
            }
            if (t.first >= s.prec_) break;
            if (t.second.code != 0) s.terms_.push_back(t);
        }
        return s;
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return a + (-b);
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        a.check_same_field(b);
        if (a.is_exact_zero() || b.is_exact_zero()) return zero(a.field_);
        const int prec = std::min(detail::sat_add(a.prec_, b.valuation()),
                                  detail::sat_add(b.prec_, a.valuation()));
        LaurentSeries s = zero(a.field_, prec);
        if (a.terms_.empty() || b.terms_.empty()) return s;
        const int lo = a.terms_.front().first + b.terms_.front().first;
        const long long hi_raw =
            static_cast<long long>(a.terms_.back().first) + b.terms_.back().first + 1;
        const int hi = static_cast<int>(std::min<long long>(hi_raw, prec));
        if (hi <= lo) return s;
        const auto& f = *a.field_;
        std::vector<FieldElement> acc(static_cast<std::size_t>(hi - lo), f.zero());
        if (f.e() == 1) {
            const std::uint64_t p = f.p();
            std::vector<std::uint64_t> wide(acc.size(), 0);
            for (const auto& [ka, ca] : a.terms_) {
                if (ka + b.terms_.front().first >= hi) break;
                for (const auto& [kb, cb] : b.terms_) {
                    const int k = ka + kb;
                    if (k >= hi) break;
                    auto& slot = wide[static_cast<std::size_t>(k - lo)];
                    slot = (slot + std::uint64_t{ca.code} * cb.code) % p;
                }
            }
            for (std::size_t i = 0; i < wide.size(); ++i)
                if (wide[i]) s.terms_.push_back({lo + static_cast<int>(i),
                                                 FieldElement{static_cast<std::uint32_t>(wide[i])}});
            return s;
        }
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                const int k = ka + kb;
                if (k >= hi) break;
                auto& slot = acc[static_cast<std::size_t>(k - lo)];
                slot = f.add(slot, f.mul(ca, cb));
            }
        }
        for (std::size_t i = 0; i < acc.size(); ++i)
            if (acc[i].code) s.terms_.push_back({lo + static_cast<int>(i), acc[i]});
        return s;
    }

    LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
    LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    /// Structural identity: same terms and same precision.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.prec_ == b.prec_ && a.terms_ == b.terms_ &&
               (a.field_ == b.field_ || (a.field_ && b.field_ && a.field_->same_as(*b.field_)));
    }

    /// Agreement on every exponent below both precisions.
    friend bool agree_on_window(const LaurentSeries& a, const LaurentSeries& b) {
        const int w = std::min(a.prec_, b.prec_);
        return a.truncated(w).terms_ == b.truncated(w).terms_;
    }

    /// True when the series is zero on its whole known window.
    bool vanishes_to_precision() const { return terms_.empty(); }

    /// 1/x. Exact monomials invert exactly; anything else is expanded up to
    /// absolute precision min(N - 2v, cap).
    LaurentSeries invert(int cap) const {
        if (terms_.empty()) throw PrecisionError("insufficient precision: series is zero to O(t^" +
                                                 std::to_string(prec_) + ")");
        const int v = terms_.front().first;
        const auto& f = *field_;
        const FieldElement c_inv = f.inv(terms_.front().second);
        if (is_monomial()) return monomial(field_, c_inv, -v);
        const int bound = prec_ == kExact ? kExact : prec_ - 2 * v;
        const int prec = std::min(bound, cap);
        if (prec == kExact) throw DomainError("inverting a non-monomial needs a finite cap");
        LaurentSeries s = zero(field_, prec);
        const int len = prec + v;  // number of unit coefficients needed
        if (len <= 0) return s;
        std::vector<FieldElement> w(static_cast<std::size_t>(len), f.zero());
        for (const auto& [k, c] : terms_) {
            const int idx = k - v;
            if (idx >= len) break;
            w[static_cast<std::size_t>(idx)] = f.mul(c, c_inv);
        }
        std::vector<FieldElement> y(static_cast<std::size_t>(len), f.zero());
        y[0] = f.one();
        for (int k = 1; k < len; ++k) {
            FieldElement acc = f.zero();
            for (int j = 1; j <= k; ++j) {
                if (w[static_cast<std::size_t>(j)].code == 0) continue;
                acc = f.add(acc, f.mul(w[static_cast<std::size_t>(j)],
                                       y[static_cast<std::size_t>(k - j)]));
            }
            y[static_cast<std::size_t>(k)] = f.neg(acc);
        }
        for (int k = 0; k < len; ++k)
            if (y[static_cast<std::size_t>(k)].code)
                s.terms_.push_back({k - v, f.mul(y[static_cast<std::size_t>(k)], c_inv)});
        return s;
    }

    /// a / b. Exact Laurent polynomials dividing exactly give an exact result;
    /// otherwise the quotient is expanded to absolute precision <= cap.
    static LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, int cap) {
        a.check_same_field(b);
        if (a.is_exact_zero()) return zero(a.field_);
        if (b.is_monomial()) return a * b.invert(cap);
        if (a.is_exact() && b.is_exact() && b.known_nonzero()) {
            if (auto q = exact_quotient(a, b)) return *q;
        }
        const int va = a.valuation();
        const int inv_cap = cap == kExact ? kExact : cap - va + 1;
        return (a * b.invert(inv_cap)).truncated(cap);
    }

    /// Exact quotient of Laurent polynomials if b divides a, else nullopt.
    static std::optional<LaurentSeries> exact_quotient(const LaurentSeries& a,
                                                       const LaurentSeries& b) {
        if (!a.is_exact() || !b.is_exact() || b.terms_.empty()) return std::nullopt;
        if (a.terms_.empty()) return zero(a.field_);
        const int hi = a.max_exponent() - b.max_exponent();
        const int lo = a.valuation() - b.valuation();
        if (hi < lo) return std::nullopt;
        LaurentSeries inv = b.invert(hi - a.valuation() + 1);
        LaurentSeries q = (a * inv).truncated(hi + 1);
        q.prec_ = kExact;
        if (q * b == a) return q;
        return std::nullopt;
    }

    /// x^n, truncated at cap. Negative n goes through invert.
    LaurentSeries pow(long long n, int cap) const {
        if (n < 0) {
            const int v = std::max(0, valuation());
            const int inv_cap = detail::sat_add(cap, detail::sat_mul(v, static_cast<int>(-n - 1)));
            return invert(inv_cap).pow(-n, cap);
        }
        LaurentSeries result = one(field_);
        LaurentSeries base = *this;
        while (n) {
            if (n & 1) result = (result * base).truncated(cap);
            n >>= 1;
            if (n) base = (base * base).truncated(cap);
        }
        return result;
    }

    /// x^p, which is additive in characteristic p: exact up to O(t^{pN}).
    LaurentSeries frobenius() const {
        const auto p = static_cast<int>(field_->p());
        LaurentSeries s = zero(field_, detail::sat_mul(prec_, p));
        for (const auto& [k, c] : terms_) s.terms_.push_back({k * p, field_->frobenius(c)});
        return s;
    }

    /// Membership in K^p: every exponent in the support is divisible by p.
    bool is_pth_power() const {
        const auto p = static_cast<int>(field_->p());
        return std::all_of(terms_.begin(), terms_.end(),
                           [p](const Term& t) { return t.first % p == 0; });
    }

    /// g with g^p = x; precision floor(N/p).
    LaurentSeries pth_root() const {
        if (!is_pth_power()) throw DomainError("series is not a p-th power");
        const auto p = static_cast<int>(field_->p());
        LaurentSeries s = zero(field_, prec_ == kExact ? kExact : detail::floor_div(prec_, p));
        for (const auto& [k, c] : terms_)
            if (k / p < s.prec_) s.terms_.push_back({k / p, field_->pth_root(c)});
        return s;
    }

    /// Composition x(target) where target is a series of positive valuation
    /// in a new uniformizer. Expanded to absolute precision <= cap.
    LaurentSeries substitute(const LaurentSeries& target, int cap) const {
        check_same_field(target);
        const int w = target.valuation();
        if (w <= 0) throw DomainError("substitution target must have positive valuation");
        LaurentSeries result = zero(field_, cap);
        if (prec_ != kExact) result = zero(field_, std::min(cap, detail::sat_mul(prec_, w)));
        if (terms_.empty()) return result;
        const int kmin = terms_.front().first;
        const int work = kmin < 0 ? detail::sat_add(cap, detail::sat_mul(w, -kmin)) : cap;
        const LaurentSeries inv = kmin < 0 ? target.invert(work) : one(field_);
        LaurentSeries pos_power = one(field_);
        int pos_exp = 0;
        LaurentSeries neg_power = one(field_);
        int neg_exp = 0;
        // Negative exponents are visited first, most negative first.
        if (kmin < 0) {
            neg_power = inv.pow(-kmin, work);
            neg_exp = kmin;
        }
        for (const auto& [k, c] : terms_) {
            if (static_cast<long long>(k) * w >= result.prec_) break;
            LaurentSeries term;
            if (k >= 0) {
                while (pos_exp < k) {
                    pos_power = (pos_power * target).truncated(cap);
                    ++pos_exp;
                }
                term = pos_power;
            } else {
                while (neg_exp < k) {
                    neg_power = (neg_power * target).truncated(work);
                    ++neg_exp;
                }
                term = neg_power;
            }
            result = result + term.scaled(c);
        }
        return result.truncated(cap);
    }

    /// Renders with the given variable name, e.g. "t^-1 + 1 + 2*t^3 + O(t^10)".
    std::string to_string(std::string_view var = "t") const {
        std::string out;
        auto append = [&out](const std::string& piece) {
            if (!out.empty()) out += " + ";
            out += piece;
        };
        for (const auto& [k, c] : terms_) {
            const std::string coef = field_->to_string(c);
            if (k == 0) {
                append(coef);
                continue;
            }
            std::string mono(var);
            if (k != 1) mono += "^" + std::to_string(k);
            append(c == field_->one() ? mono : coef + "*" + mono);
        }
        if (prec_ != kExact) append("O(" + std::string(var) + "^" + std::to_string(prec_) + ")");
        if (out.empty()) out = "0";
        return out;
    }

    /// Parses the series grammar: sums of `c*t^k`, `c`, `t^k` with integer or
    /// `[c0,c1,...]` coefficients, plus an optional `O(t^N)` term. Without
    /// an O-term the result has the given precision (default exact).
    static LaurentSeries parse(std::string_view text, FieldPtr field, int precision = kExact,
                               std::string_view var = "t") {
        Parser parser{text, field, var};
        return parser.run(precision);
    }

private:
    struct Parser {
        std::string_view text;
        FieldPtr field;
        std::string_view var;
        std::size_t pos = 0;

        [[noreturn]] void fail(const std::string& what) const {
            throw ParseError("cannot parse series \"" + std::string(text) + "\" at position " +
                             std::to_string(pos) + ": " + what);
        }
        void skip() {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        bool peek(char c) {
            skip();
            return pos < text.size() && text[pos] == c;
        }
        bool accept(char c) {
            if (peek(c)) {
                ++pos;
                return true;
            }
            return false;
        }
        bool peek_var() {
            skip();
            return text.substr(pos, var.size()) == var &&
                   (pos + var.size() >= text.size() ||
                    !std::isalnum(static_cast<unsigned char>(text[pos + var.size()])));
        }
        long long integer() {
            skip();
            bool neg = false;
            if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
                neg = text[pos] == '-';
                ++pos;
            }
            skip();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                fail("expected integer");
            long long v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + (text[pos] - '0');
                if (v > (1LL << 40)) fail("integer too large");
                ++pos;
            }
            return neg ? -v : v;
        }
        int exponent_after_var() {
            pos += var.size();
            if (!accept('^')) return 1;
            if (accept('(')) {
                const auto e = integer();
                if (!accept(')')) fail("expected ')'");
                return static_cast<int>(e);
            }
            return static_cast<int>(integer());
        }
        FieldElement coefficient() {
            if (accept('[')) {
                std::vector<std::int64_t> digits;
                do {
                    digits.push_back(integer());
                } while (accept(','));
                if (!accept(']')) fail("expected ']'");
                return field->from_digits(digits);
            }
            return field->from_int(integer());
        }
        LaurentSeries run(int precision) {
            std::vector<Term> terms;
            int prec = precision;
            bool first = true;
            skip();
            if (pos >= text.size()) fail("empty series");
            while (true) {
                skip();
                if (pos >= text.size()) break;
                bool negate = false;
                if (!first) {
                    if (accept('+')) {
                    } else if (accept('-')) {
                        negate = true;
                    } else {
                        fail("expected '+' or '-'");
                    }
                } else if (accept('-')) {
                    negate = true;
                } else {
                    accept('+');
                }
                first = false;
                skip();
                if (pos < text.size() && text[pos] == 'O') {
                    ++pos;
                    if (!accept('(')) fail("expected '(' after O");
                    if (!peek_var()) fail("expected variable in O-term");
                    const int n = exponent_after_var();
                    if (!accept(')')) fail("expected ')'");
                    prec = std::min(prec, n);
                    continue;
                }
                FieldElement c = field->one();
                int k = 0;
                if (peek_var()) {
                    k = exponent_after_var();
                } else {
                    c = coefficient();
                    skip();
                    if (accept('*')) {
                        if (!peek_var()) fail("expected variable after '*'");
                        k = exponent_after_var();
                    } else if (peek_var()) {
                        k = exponent_after_var();
                    }
                }
                if (negate) c = field->neg(c);
                terms.push_back({k, c});
            }
            return from_terms(field, std::move(terms), prec);
        }
    };

    void drop_zeros() {
        std::erase_if(terms_, [](const Term& t) { return t.second.code == 0; });
    }

    void check_same_field(const LaurentSeries& o) const {
        if (field_ != o.field_ && !(field_ && o.field_ && field_->same_as(*o.field_)))
            throw DomainError("mismatched field specs");
    }

    FieldPtr field_;
    std::vector<Term> terms_;
    int prec_ = kExact;
};

}  // namespace maxmodel
