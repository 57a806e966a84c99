#pragma once

#include "engine.hpp"

#include <unordered_map>

namespace qh22 {

// coefficients over 1, h_1..h_n, eps_1..eps_{n+3} (t basis)
using CohClass = std::vector<GaussianRational>;

// <c_1, ..., c_k> by expanding prod_i (sum_j c_ij y_j); the coefficient of y^I
// already counts every ordered choice of basis insertions.
inline CorrelatorPoly correlator_classes(Engine& E, const std::vector<CohClass>& classes,
                                         std::optional<int> beta = std::nullopt)
{
    const int N = E.params().size();
    if (classes.size() < 3) throw std::invalid_argument("correlator_classes needs at least three classes");
    std::unordered_map<std::string, GaussianRational> terms{{std::string(N, '\0'), GaussianRational(1)}};
    for (const auto& c : classes) {
        if (int(c.size()) != N) throw std::invalid_argument("class length mismatch");
        std::unordered_map<std::string, GaussianRational> next;
        next.reserve(terms.size() * 4);
        for (const auto& [key, coef] : terms)
            for (int j = 0; j < N; ++j) {
                if (is_zero(c[j])) continue;
                std::string k2 = key;
                k2[j] = char(k2[j] + 1);
                auto [it, fresh] = next.try_emplace(std::move(k2), GaussianRational());
                it->second += coef * c[j];
            }
        terms = std::move(next);
    }
    // group by canonical index first; many monomials share a correlator
    std::map<Index, GaussianRational> grouped;
    for (const auto& [key, coef] : terms) {
        if (is_zero(coef)) continue;
        Index I(key.begin(), key.end());
        if (beta && E.degree(I) != beta) continue;
        if (!E.degree(I)) continue;
        grouped[I] += coef;
    }
    CorrelatorPoly sum;
    for (const auto& [I, coef] : grouped) {
        if (is_zero(coef)) continue;
        QPoly v = E.t_q(I);
        if (v.is_zero()) continue;
        sum += lift(v) * coef;
    }
    return sum;
}

// eps_i = -sqrt(-1) * epsilon_i when n = 2 mod 4, else eps_i = epsilon_i
// (epsilon: the unnormalized basis with self-pairing (-1)^{n/2})
inline GaussianRational epsilon_to_orthonormal(int n)
{
    return (n / 2) % 2 == 1 ? GaussianRational(Rational(0), Rational(-1)) : GaussianRational(1);
}

// Class of the window plane for [i, i+n/2-1] (0-based i, indices mod n+3) as
// (1/4) h_{n/2} + (-1)^{n/2} ((1/2) sum_k epsilon_k - sum_{j<n/2} epsilon_{i+1+j}),
// rewritten over the orthonormal eps basis.
inline CohClass window_class(int n, int i)
{
    ModelParams m(n);
    CohClass c(m.size(), GaussianRational());
    c[n / 2] = GaussianRational(make_rational(1, 4));
    const Rational sign = (n / 2) % 2 == 0 ? 1 : -1;
    const GaussianRational conv = epsilon_to_orthonormal(n);
    std::vector<Rational> eps(m.prim_count(), make_rational(1, 2));
    for (int j = 0; j < n / 2; ++j) eps[(i + j) % m.prim_count()] -= 1;
    for (int k = 0; k < m.prim_count(); ++k) c[m.prim_begin() + k] = conv * GaussianRational(sign * eps[k]);
    return c;
}

// f(n) = < window_0, ..., window_{n+2} >, a polynomial in x = <eps_1..eps_{n+3}>
inline CorrelatorPoly f_value(Engine& E)
{
    const int n = E.n();
    std::vector<CohClass> cl;
    for (int i = 0; i < n + 3; ++i) cl.push_back(window_class(n, i));
    return correlator_classes(E, cl);
}

// Rewrites p(x), x = <eps_1..eps_{n+3}>, in terms of y = <epsilon_1..epsilon_{n+3}>,
// using eps_i = sqrt(-1) epsilon_i for n = 2 mod 4, hence x = sqrt(-1)^{n+3} y.
inline CorrelatorPoly in_epsilon_special(int n, const CorrelatorPoly& p)
{
    if ((n / 2) % 2 == 0) return p;
    return p.rescale(i_pow(n + 3));
}

// <eps_1, eps_1, ..., eps_{n+1}, eps_{n+1}>
inline Index quadratic_lhs_index(int n)
{
    ModelParams m(n);
    Index I(m.size(), 0);
    for (int k = 0; k < n + 1; ++k) I[m.prim_begin() + k] = 2;
    return I;
}

inline QPoly quadratic_rhs(int n)
{
    Rational s = 1;
    for (int k = 0; k < n - 3; ++k) s *= 2;
    return QPoly(std::vector<Rational>{-s / 4, Rational(0), s});
}

inline QPoly conjecture_quadratic(Engine& E)
{
    return E.tau_q(quadratic_lhs_index(E.n())) - quadratic_rhs(E.n());
}

} // namespace qh22
