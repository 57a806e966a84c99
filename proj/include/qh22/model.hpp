#pragma once

#include "exact_algebra.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qh22 {

// Basis 1, h~_1..h~_n (TAU) or 1, h_1..h_n (T), then eps_1..eps_{n+3}.
enum class Basis { T, TAU };

inline const char* basis_name(Basis b) { return b == Basis::T ? "t" : "tau"; }

struct ModelParams {
    int n;

    explicit ModelParams(int dim) : n(dim)
    {
        if (n < 4 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 4, got " + std::to_string(n));
    }

    int size() const { return 2 * n + 4; }
    int prim_begin() const { return n + 1; }
    int prim_count() const { return n + 3; }
    bool is_ambient(int k) const { return k <= n; }
    bool is_primitive(int k) const { return k > n; }
    int fano_index() const { return n - 1; }
    // cohomological degree (complex) of a basis slot
    int slot_degree(int k) const { return k <= n ? k : n / 2; }
};

struct EtaEntry {
    int e, f;
    Rational v;
};

// eta^{ef} in the tau basis
inline QMatrix eta_inverse(int n)
{
    ModelParams m(n);
    QMatrix E(m.size(), m.size());
    for (int e = 0; e <= n; ++e)
        for (int f = 0; f <= n; ++f) {
            if (e + f == 1) E(e, f) = -4;
            else if (e + f == n) E(e, f) = make_rational(1, 4);
        }
    for (int k = m.prim_begin(); k < m.size(); ++k) E(k, k) = 1;
    return E;
}

inline std::vector<EtaEntry> eta_inverse_sparse(int n)
{
    QMatrix E = eta_inverse(n);
    std::vector<EtaEntry> out;
    for (std::size_t e = 0; e < E.rows(); ++e)
        for (std::size_t f = 0; f < E.cols(); ++f)
            if (!is_zero(E(e, f))) out.push_back({int(e), int(f), E(e, f)});
    return out;
}

// Poincare pairing (h~_e, h~_f) in the tau basis
inline QMatrix eta_pairing(int n)
{
    ModelParams m(n);
    QMatrix G(m.size(), m.size());
    for (int e = 0; e <= n; ++e) G(e, n - e) = 4;
    G(n - 1, n) = 64;
    G(n, n - 1) = 64;
    for (int k = m.prim_begin(); k < m.size(); ++k) G(k, k) = 1;
    return G;
}

// Poincare pairing (h_e, h_f) in the t basis: deg X = 4
inline QMatrix t_pairing(int n)
{
    ModelParams m(n);
    QMatrix G(m.size(), m.size());
    for (int e = 0; e <= n; ++e) G(e, n - e) = 4;
    for (int k = m.prim_begin(); k < m.size(); ++k) G(k, k) = 1;
    return G;
}

enum class Direction { TToTau, TauToT };

// coordinate change; tau^0 = t^0 - 4 t^{n-1}, tau^1 = t^1 - 12 t^n
template <class S>
std::vector<S> t_tau_transition(int n, const std::vector<S>& v, Direction d)
{
    ModelParams m(n);
    if (int(v.size()) != m.size()) throw std::invalid_argument("coordinate vector length");
    std::vector<S> r = v;
    const S s = d == Direction::TToTau ? S(-1) : S(1);
    r[0] += s * S(4) * v[n - 1];
    r[1] += s * S(12) * v[n];
    return r;
}

// the same change as a matrix acting on coordinate columns
inline QMatrix t_tau_matrix(int n, Direction d)
{
    ModelParams m(n);
    QMatrix W = QMatrix::identity(m.size());
    const long s = d == Direction::TToTau ? -1 : 1;
    W(0, n - 1) = 4 * s;
    W(1, n) = 12 * s;
    return W;
}

// <h~_a, h~_b, h~_c> at tau = 0
inline Rational ambient_3pt_tau(int n, int a, int b, int c)
{
    int num = a + b + c - n;
    if (num < 0 || num % (n - 1) != 0) return 0;
    Rational r = 4;
    for (int k = 0; k < num / (n - 1); ++k) r *= 16;
    return r;
}

// Order-2 jet of d^2F/d(tau^a)^2 restricted to ambient tau, for any primitive a:
// linear[i] = <eps_a, eps_a, h~_i>, hessian(i,j) = <eps_a, eps_a, h~_i, h~_j>.
struct F1Jet {
    std::vector<Rational> linear;
    QMatrix hessian;
};

inline F1Jet f1_jet(int n)
{
    ModelParams m(n);
    F1Jet j{std::vector<Rational>(n + 1), QMatrix(n + 1, n + 1)};
    j.linear[0] = 1;
    for (int i = 1; i <= n - 1; ++i) j.hessian(i, n - i) = -4;
    j.hessian(n - 1, n) = -64;
    j.hessian(n, n - 1) = -64;
    return j;
}

// E = sum_k (sum_j lin(k,j) tau^j + constant[k]) d/dtau^k
struct EulerField {
    QMatrix lin;
    std::vector<Rational> constant;
};

inline EulerField euler_coeffs_tau(int n)
{
    ModelParams m(n);
    EulerField E{QMatrix(m.size(), m.size()), std::vector<Rational>(m.size())};
    for (int i = 0; i <= n; ++i) E.lin(i, i) = 1 - i;
    for (int i = m.prim_begin(); i < m.size(); ++i) E.lin(i, i) = make_rational(2 - n, 2);
    E.lin(0, n - 1) = 4 * n - 4;
    E.lin(1, n) = 12 * n - 12;
    E.constant[1] = n - 1;
    return E;
}

} // namespace qh22
