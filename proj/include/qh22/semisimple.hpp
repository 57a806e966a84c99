#pragma once

#include "exact_algebra.hpp"
#include "model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qh22 {

using ZPoly = UniPoly<Rational>;

struct CutoffPoint {
    int n;
    std::vector<Rational> tau;  // tau^{n+1}, ..., tau^{2n+3}

    Rational s() const
    {
        Rational r = 0;
        for (const auto& t : tau) r += t * t;
        return r;
    }
};

// M(j, k) = E^k_j: the Euler multiplication truncated at order 2 in the primitive
// coordinates, ambient coordinates set to zero
inline QMatrix cutoff_matrix(const CutoffPoint& pt)
{
    const int n = pt.n;
    ModelParams m(n);
    if (int(pt.tau.size()) != m.prim_count()) throw std::invalid_argument("cutoff point needs n+3 coordinates");
    const Rational s = pt.s();
    const auto tau = [&](int j) -> const Rational& { return pt.tau[j - m.prim_begin()]; };
    QMatrix M(m.size(), m.size());

    M(n - 1, 0) = -2 * (n - 1) * s;
    for (int k = 1; k <= n; ++k) M(k - 1, k) = n - 1;
    for (int k = 1; k <= n - 1; ++k) M(k, k) = -s / 2;
    M(n, 1) = (-2 * n - 6) * s;
    M(n, 2) = 16 * (n - 1);
    for (int j = m.prim_begin(); j < m.size(); ++j) {
        M(j, 1) = (n - 3) * tau(j);
        M(j, n) = make_rational(2 - n, 8) * tau(j);
    }
    for (int k = m.prim_begin(); k < m.size(); ++k) {
        M(0, k) = make_rational(2 - n, 2) * tau(k);
        M(n - 1, k) = -4 * (n - 1) * tau(k);
        for (int j = m.prim_begin(); j < m.size(); ++j) M(j, k) = j == k ? Rational(s / 2) : Rational(tau(j) * tau(k));
    }
    return M;
}

// the closed form, with the rational sum cleared against the product of linear factors
inline ZPoly closed_form_P(const CutoffPoint& pt)
{
    const int n = pt.n;
    const Rational s = pt.s();
    const ZPoly z = ZPoly::x();
    std::vector<ZPoly> lin;
    for (const auto& t : pt.tau) lin.push_back(z - ZPoly(Rational(s / 2 - t * t)));
    ZPoly prod(Rational(1));
    for (const auto& l : lin) prod *= l;
    // S * prod = sum_i tau_i^2 prod_{j != i} lin_j
    ZPoly Sprod;
    for (std::size_t i = 0; i < lin.size(); ++i) {
        ZPoly p(Rational(pt.tau[i] * pt.tau[i]));
        for (std::size_t j = 0; j < lin.size(); ++j)
            if (j != i) p *= lin[j];
        Sprod += p;
    }
    Rational nm1_pow = 1;
    for (int k = 0; k < n - 1; ++k) nm1_pow *= n - 1;
    const Rational nm1 = n - 1;
    ZPoly A(std::vector<Rational>{-nm1 * (n - 2) * (n - 2) * s * s / 4, 2 * nm1 * (n - 4) * s, Rational(-4 * (n - 5))});
    ZPoly z2 = z * z;
    ZPoly zs = (z + ZPoly(Rational(s / 2))).pow(n - 1);
    ZPoly r = A * nm1_pow * Sprod;
    r += (ZPoly::monomial(1, 4 * nm1_pow * nm1 * s) - ZPoly::monomial(2, 16 * nm1_pow) + z2 * zs) * prod;
    r -= z2 * zs * Sprod;
    return r;
}

// z^{n+5} (z^{n-1} - 16 (n-1)^{n-1})
inline ZPoly P_at_origin(int n)
{
    Rational c = 16;
    for (int k = 0; k < n - 1; ++k) c *= n - 1;
    return ZPoly::monomial(n + 5) * (ZPoly::monomial(n - 1) - ZPoly(c));
}

struct CharPolyReport {
    std::vector<Rational> point;
    ZPoly computed, closed_form;
    bool agree = false;
    bool squarefree = false;
    int degree = 0;
    int distinct_roots = 0;  // degree of the squarefree part
    bool rejected = false;   // accidental degeneracy, resampled
};

inline CharPolyReport charpoly_report(const CutoffPoint& pt)
{
    CharPolyReport r;
    r.point = pt.tau;
    r.computed = mat_charpoly(cutoff_matrix(pt));
    r.closed_form = closed_form_P(pt);
    r.agree = r.computed == r.closed_form;
    r.degree = r.computed.degree();
    r.squarefree = squarefree(r.computed);
    r.distinct_roots = r.degree - poly_gcd(r.computed, r.computed.derivative()).degree();
    return r;
}

// points with a zero coordinate or two equal squares make linear factors collide
inline bool degenerate_point(const CutoffPoint& pt)
{
    for (std::size_t i = 0; i < pt.tau.size(); ++i) {
        if (is_zero(pt.tau[i])) return true;
        for (std::size_t j = 0; j < i; ++j)
            if (pt.tau[i] * pt.tau[i] == pt.tau[j] * pt.tau[j]) return true;
    }
    return false;
}

inline CutoffPoint random_point(int n, std::mt19937_64& rng)
{
    CutoffPoint pt{n, {}};
    for (int k = 0; k < n + 3; ++k) {
        long num = long(rng() % 41) - 20;
        long den = long(rng() % 9) + 1;
        pt.tau.push_back(make_rational(num, den));
    }
    return pt;
}

// samples count points; degenerate draws are reported with rejected = true and redrawn
inline std::vector<CharPolyReport> semisimple_scan(int n, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<CharPolyReport> out;
    int accepted = 0;
    while (accepted < count) {
        CutoffPoint pt = random_point(n, rng);
        if (degenerate_point(pt)) {
            CharPolyReport r;
            r.point = pt.tau;
            r.rejected = true;
            out.push_back(std::move(r));
            continue;
        }
        out.push_back(charpoly_report(pt));
        ++accepted;
    }
    return out;
}

inline Rational branch_discriminant(int n)
{
    Rational d = 64 * (n - 1) * (n + 2) * (n + 3) * (n + 3);
    if (sgn(d) <= 0) throw std::logic_error("branch discriminant must be positive");
    return d;
}

inline bool zn_minus_az_plus_1_squarefree(int n, const Rational& a)
{
    if (n < 3) throw std::invalid_argument("need n >= 3");
    ZPoly p = ZPoly::monomial(n) - ZPoly::monomial(1, a) + ZPoly(Rational(1));
    return squarefree(p);
}

} // namespace qh22
