#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qh22 {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline std::string to_string(const Rational& r)
{
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(const std::string& s)
{
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

// a + b*i
struct GaussianRational {
    Rational re, im;

    GaussianRational() = default;
    GaussianRational(long v) : re(v) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit() { return {Rational(0), Rational(1)}; }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }
    GaussianRational inverse() const
    {
        Rational d = norm();
        if (sgn(d) == 0) throw std::domain_error("division by zero");
        return {re / d, -im / d};
    }

    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline bool is_zero(const GaussianRational& g) { return sgn(g.re) == 0 && sgn(g.im) == 0; }

inline std::string to_string(const GaussianRational& g)
{
    if (is_zero(g.im)) return to_string(g.re);
    std::string im = to_string(g.im) + "*i";
    if (is_zero(g.re)) return im;
    return to_string(g.re) + (sgn(g.im) > 0 ? "+" : "") + im;
}

// i^k
inline GaussianRational i_pow(int k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
    }
}

// a + b*eps, eps^2 = 0
struct DualNumber {
    Rational a, b;

    DualNumber() = default;
    DualNumber(long v) : a(v) {}
    DualNumber(Rational x) : a(std::move(x)) {}
    DualNumber(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

    static DualNumber eps() { return {Rational(0), Rational(1)}; }

    bool is_unit() const { return sgn(a) != 0; }
    DualNumber inverse() const
    {
        if (!is_unit()) throw std::domain_error("dual number is not a unit");
        return {1 / a, -b / (a * a)};
    }

    DualNumber& operator+=(const DualNumber& o) { a += o.a; b += o.b; return *this; }
    DualNumber& operator-=(const DualNumber& o) { a -= o.a; b -= o.b; return *this; }
    DualNumber& operator*=(const DualNumber& o)
    {
        b = a * o.b + b * o.a;
        a *= o.a;
        return *this;
    }
    DualNumber& operator/=(const DualNumber& o) { return *this *= o.inverse(); }

    friend DualNumber operator+(DualNumber x, const DualNumber& y) { return x += y; }
    friend DualNumber operator-(DualNumber x, const DualNumber& y) { return x -= y; }
    friend DualNumber operator*(DualNumber x, const DualNumber& y) { return x *= y; }
    friend DualNumber operator/(DualNumber x, const DualNumber& y) { return x /= y; }
    friend DualNumber operator-(const DualNumber& x) { return {-x.a, -x.b}; }
    friend bool operator==(const DualNumber& x, const DualNumber& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const DualNumber& x, const DualNumber& y) { return !(x == y); }
};

inline bool is_zero(const DualNumber& d) { return sgn(d.a) == 0 && sgn(d.b) == 0; }

inline std::string to_string(const DualNumber& d)
{
    if (is_zero(d.b)) return to_string(d.a);
    std::string s = to_string(d.a);
    if (sgn(d.b) >= 0) s += "+";
    return s + to_string(d.b) + "*eps";
}

// ---------------------------------------------------------------------------
// univariate polynomials

template <class S>
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(S c) : c_{std::move(c)} { trim(); }
    explicit UniPoly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly monomial(std::size_t k, S c = S(1))
    {
        std::vector<S> v(k + 1, S(0));
        v[k] = std::move(c);
        return UniPoly(std::move(v));
    }
    static UniPoly x() { return monomial(1); }

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }
    const S& lead() const { return c_.back(); }

    UniPoly& operator+=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    UniPoly& operator*=(const S& s)
    {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }
    UniPoly& operator*=(const UniPoly& o)
    {
        *this = *this * o;
        return *this;
    }

    // this += s * o, without temporaries
    void add_scaled(const S& s, const UniPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += s * o.c_[k];
        trim();
    }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(UniPoly a)
    {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend UniPoly operator*(UniPoly a, const S& s) { return a *= s; }
    friend UniPoly operator*(const S& s, UniPoly a) { return a *= s; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (qh22::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    S operator()(const S& z) const
    {
        S r(0);
        for (std::size_t k = c_.size(); k-- > 0;) r = r * z + c_[k];
        return r;
    }

    UniPoly derivative() const
    {
        if (c_.size() <= 1) return {};
        std::vector<S> r(c_.size() - 1, S(0));
        for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * S(static_cast<long>(k));
        return UniPoly(std::move(r));
    }

    UniPoly pow(unsigned e) const
    {
        UniPoly r(S(1)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    // p(s*x)
    UniPoly rescale(const S& s) const
    {
        UniPoly r = *this;
        S f(1);
        for (auto& v : r.c_) {
            v *= f;
            f *= s;
        }
        r.trim();
        return r;
    }

    // field coefficients only
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const
    {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        UniPoly q, r = *this;
        S inv = S(1) / d.lead();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
            S f = r.lead() * inv;
            q += monomial(shift, f);
            r -= monomial(shift, f) * d;
        }
        return {q, r};
    }

    UniPoly monic() const
    {
        if (is_zero()) return {};
        return *this * (S(1) / lead());
    }

    std::string str(const std::string& var = "x") const;

private:
    void trim()
    {
        while (!c_.empty() && qh22::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<S> c_;
};

template <class S>
UniPoly<S> poly_gcd(UniPoly<S> a, UniPoly<S> b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace detail {
inline bool negative_lead(const Rational& r, std::string& body)
{
    if (sgn(r) < 0) { body = to_string(Rational(-r)); return true; }
    body = to_string(r);
    return false;
}
inline bool negative_lead(const GaussianRational& g, std::string& body)
{
    if (is_zero(g.im) && sgn(g.re) < 0) { body = to_string(Rational(-g.re)); return true; }
    if (is_zero(g.re) && sgn(g.im) < 0) { body = to_string(Rational(-g.im)) + "*i"; return true; }
    body = to_string(g);
    if (!is_zero(g.im) && !is_zero(g.re)) body = "(" + body + ")";
    return false;
}
inline bool negative_lead(const DualNumber& d, std::string& body)
{
    if (is_zero(d.b) && sgn(d.a) < 0) { body = to_string(Rational(-d.a)); return true; }
    body = to_string(d);
    if (!is_zero(d.b) && !is_zero(d.a)) body = "(" + body + ")";
    return false;
}
} // namespace detail

template <class S>
std::string UniPoly<S>::str(const std::string& var) const
{
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    // descending powers ("8*x^2-2"), except that linear polynomials lead with the constant
    // ("11/16+5/8*x")
    std::vector<std::size_t> order;
    if (c_.size() == 2) order = {0, 1};
    else
        for (std::size_t k = c_.size(); k-- > 0;) order.push_back(k);
    for (std::size_t k : order) {
        if (qh22::is_zero(c_[k])) continue;
        std::string body;
        bool neg = detail::negative_lead(c_[k], body);
        if (neg) out += "-";
        else if (!first) out += "+";
        first = false;
        if (k == 0) { out += body; continue; }
        if (body != "1") out += body + "*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// dense matrices

template <class S>
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, S(0)) {}
    ExactMatrix(std::size_t r, std::size_t c, std::vector<S> entries)
        : rows_(r), cols_(c), a_(std::move(entries))
    {
        if (a_.size() != r * c) throw std::invalid_argument("matrix entry count");
    }

    static ExactMatrix identity(std::size_t n)
    {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y)
    {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
        ExactMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (is_zero(x(i, k))) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    friend ExactMatrix operator+(ExactMatrix x, const ExactMatrix& y)
    {
        for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] += y.a_[k];
        return x;
    }
    friend ExactMatrix operator*(const S& s, ExactMatrix x)
    {
        for (auto& v : x.a_) v *= s;
        return x;
    }
    friend bool operator==(const ExactMatrix& x, const ExactMatrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    std::vector<S> apply(const std::vector<S>& v) const
    {
        std::vector<S> r(rows_, S(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool is_zero_matrix() const
    {
        return std::all_of(a_.begin(), a_.end(), [](const S& v) { return is_zero(v); });
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> a_;
};

using QMatrix = ExactMatrix<Rational>;

namespace detail {
// integer rows: each row of a rational matrix scaled by the lcm of its denominators
inline std::vector<std::vector<Integer>> integer_rows(const QMatrix& A)
{
    std::vector<std::vector<Integer>> m(A.rows(), std::vector<Integer>(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < A.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < A.cols(); ++j) m[i][j] = A(i, j).get_num() * (l / A(i, j).get_den());
    }
    return m;
}

// Bareiss elimination in place; returns rank, sets det sign/value for square input
inline std::size_t bareiss(std::vector<std::vector<Integer>>& m, std::size_t cols, Integer* det)
{
    std::size_t rows = m.size(), r = 0;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        if (p != r) { std::swap(m[p], m[r]); sign = -sign; }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = m[i][j] * m[r][c] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    if (det) *det = (r == rows && rows == cols) ? Integer(sign * prev) : Integer(0);
    return r;
}
} // namespace detail

inline std::size_t mat_rank(const QMatrix& A)
{
    auto m = detail::integer_rows(A);
    return detail::bareiss(m, A.cols(), nullptr);
}

inline Rational mat_det(const QMatrix& A)
{
    if (A.rows() != A.cols()) throw std::invalid_argument("det of non-square matrix");
    if (A.rows() == 0) return 1;
    auto m = detail::integer_rows(A);
    Rational scale = 1;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < A.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A(i, j).get_den_mpz_t());
        scale /= l;
    }
    Integer d;
    detail::bareiss(m, A.cols(), &d);
    return Rational(d) * scale;
}

// reduced row echelon form over a field; returns pivot columns
template <class S>
std::vector<std::size_t> rref(ExactMatrix<S>& M)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
        std::size_t p = r;
        while (p < M.rows() && is_zero(M(p, c))) ++p;
        if (p == M.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(p, j), M(r, j));
        S inv = S(1) / M(r, c);
        for (std::size_t j = c; j < M.cols(); ++j) M(r, j) *= inv;
        for (std::size_t i = 0; i < M.rows(); ++i) {
            if (i == r || is_zero(M(i, c))) continue;
            S f = M(i, c);
            for (std::size_t j = c; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class S>
std::vector<std::vector<S>> mat_nullspace(const ExactMatrix<S>& A)
{
    ExactMatrix<S> M = A;
    auto piv = rref(M);
    std::vector<bool> is_piv(A.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<S>> basis;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<S> v(A.cols(), S(0));
        v[f] = S(1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -M(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// solve A x = b over a field; nullopt when inconsistent
template <class S>
std::optional<std::vector<S>> mat_solve(const ExactMatrix<S>& A, const std::vector<S>& b)
{
    ExactMatrix<S> M(A.rows(), A.cols() + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) M(i, j) = A(i, j);
        M(i, A.cols()) = b[i];
    }
    auto piv = rref(M);
    if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
    std::vector<S> x(A.cols(), S(0));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = M(i, A.cols());
    return x;
}

// det(zI - A) via reduction to upper Hessenberg form
inline UniPoly<Rational> mat_charpoly(const QMatrix& A)
{
    if (A.rows() != A.cols()) throw std::invalid_argument("charpoly of non-square matrix");
    const std::size_t n = A.rows();
    QMatrix H = A;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t p = m;
        while (p < n && is_zero(H(p, m - 1))) ++p;
        if (p == n) continue;
        if (p != m) {
            for (std::size_t j = 0; j < n; ++j) std::swap(H(p, j), H(m, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(H(i, p), H(i, m));
        }
        for (std::size_t i = m + 1; i < n; ++i) {
            if (is_zero(H(i, m - 1))) continue;
            Rational f = H(i, m - 1) / H(m, m - 1);
            for (std::size_t j = 0; j < n; ++j) H(i, j) -= f * H(m, j);
            for (std::size_t k = 0; k < n; ++k) H(k, m) += f * H(k, i);
        }
    }
    using P = UniPoly<Rational>;
    std::vector<P> p(n + 1);
    p[0] = P(Rational(1));
    const P z = P::x();
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = (z - P(H(k - 1, k - 1))) * p[k - 1];
        Rational t = 1;
        for (std::size_t i = 1; i < k; ++i) {
            t *= H(k - i, k - i - 1);
            if (is_zero(t)) break;
            p[k] -= P(t * H(k - i - 1, k - 1)) * p[k - i - 1];
        }
    }
    return p[n];
}

inline bool squarefree(const UniPoly<Rational>& p)
{
    if (p.is_zero()) throw std::invalid_argument("squarefree of zero polynomial");
    return poly_gcd(p, p.derivative()).degree() == 0;
}

// ---------------------------------------------------------------------------
// elimination over Q[eps]/(eps^2) with unit pivots only

struct DualSolveResult {
    enum class Status { Solved, Inconsistent, Obstructed } status;
    std::vector<DualNumber> particular;           // valid when Solved
    std::vector<std::vector<DualNumber>> kernel;  // unit-pivot kernel generators
    std::vector<std::size_t> free_columns;
    std::string obstruction;
};

inline DualSolveResult dual_solve(const ExactMatrix<DualNumber>& A, const std::vector<DualNumber>& b)
{
    const std::size_t R = A.rows(), C = A.cols();
    ExactMatrix<DualNumber> M(R, C + 1);
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < C; ++j) M(i, j) = A(i, j);
        M(i, C) = b[i];
    }
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && !M(p, c).is_unit()) ++p;
        if (p == R) continue;
        if (p != r)
            for (std::size_t j = 0; j <= C; ++j) std::swap(M(p, j), M(r, j));
        DualNumber inv = M(r, c).inverse();
        for (std::size_t j = 0; j <= C; ++j) M(r, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || is_zero(M(i, c))) continue;
            DualNumber f = M(i, c);
            for (std::size_t j = 0; j <= C; ++j) M(i, j) -= f * M(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    DualSolveResult res{DualSolveResult::Status::Solved, {}, {}, {}, {}};
    std::vector<bool> is_piv(C, false);
    for (auto c : piv) is_piv[c] = true;
    // remaining rows hold only non-units (multiples of eps)
    for (std::size_t i = r; i < R; ++i) {
        bool coeffs_zero = true;
        for (std::size_t j = 0; j < C; ++j)
            if (!is_zero(M(i, j))) { coeffs_zero = false; break; }
        if (coeffs_zero) {
            if (!is_zero(M(i, C))) {
                res.status = DualSolveResult::Status::Inconsistent;
                return res;
            }
            continue;
        }
        // a row eps*(c.x) = rhs: if rhs is a unit no solution exists
        if (M(i, C).is_unit()) {
            res.status = DualSolveResult::Status::Inconsistent;
            return res;
        }
        res.status = DualSolveResult::Status::Obstructed;
        std::ostringstream os;
        os << "row " << i << " has only non-unit entries";
        res.obstruction = os.str();
        return res;
    }
    res.particular.assign(C, DualNumber(0));
    for (std::size_t i = 0; i < piv.size(); ++i) res.particular[piv[i]] = M(i, C);
    for (std::size_t f = 0; f < C; ++f) {
        if (is_piv[f]) continue;
        res.free_columns.push_back(f);
        std::vector<DualNumber> v(C, DualNumber(0));
        v[f] = DualNumber(1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -M(i, f);
        res.kernel.push_back(std::move(v));
    }
    return res;
}

// binomial coefficient as a machine integer (small arguments only)
inline long binom(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace qh22
