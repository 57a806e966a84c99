#pragma once

#include "exact_algebra.hpp"
#include "model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qh22 {

// Polynomials in the special correlator x. The recursion only ever produces rational
// coefficients, so values are stored in Q[x] and lifted at the API boundary.
using QPoly = UniPoly<Rational>;
using CorrelatorPoly = UniPoly<GaussianRational>;
using Index = std::vector<int>;

inline CorrelatorPoly lift(const QPoly& p)
{
    std::vector<GaussianRational> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return CorrelatorPoly(std::move(c));
}

// Q[x] part of a Gaussian polynomial; nullopt if some coefficient is not real
inline std::optional<QPoly> real_part_if_real(const CorrelatorPoly& p)
{
    std::vector<Rational> c;
    for (const auto& v : p.coeffs()) {
        if (!is_zero(v.im)) return std::nullopt;
        c.push_back(v.re);
    }
    return QPoly(std::move(c));
}

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int index_length(const Index& I) { return std::accumulate(I.begin(), I.end(), 0); }

inline std::string index_str(const Index& I)
{
    std::string s;
    for (std::size_t k = 0; k < I.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(I[k]);
    }
    return s;
}

// (a, b, c) of the generic primitive step: a, b carry the two largest exponents,
// c the smallest; ties go to the lowest slot. Slots are 0-based primitive positions.
struct IndexTriple {
    int a, b, c;
};

inline IndexTriple index_triple(const std::vector<int>& prim)
{
    const int m = int(prim.size());
    int nonzero = 0;
    bool all_one = true;
    for (int v : prim) {
        nonzero += v > 0;
        all_one = all_one && v == 1;
    }
    if (nonzero <= 1 || all_one || m < 3) throw std::invalid_argument("index_triple: single-slot or all-ones input");
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return prim[x] > prim[y]; });
    int a = order[0], b = order[1], c = -1;
    for (int k = 0; k < m; ++k) {
        if (k == a || k == b) continue;
        if (c < 0 || prim[k] < prim[c]) c = k;
    }
    return {a, b, c};
}

class Engine {
public:
    explicit Engine(int n) : m_(n), eta_(eta_inverse_sparse(n)) {}

    const ModelParams& params() const { return m_; }
    int n() const { return m_.n; }

    Index zero_index() const { return Index(m_.size(), 0); }
    Index unit(int k) const
    {
        Index I = zero_index();
        I[k] = 1;
        return I;
    }

    // beta, if the dimension constraint leaves an integral non-negative degree
    std::optional<int> degree(const Index& I) const
    {
        const int n = m_.n;
        long num = 0;
        int len = 0;
        for (int k = 0; k < m_.size(); ++k) {
            num += long(m_.slot_degree(k)) * I[k];
            len += I[k];
        }
        num -= n - 3 + len;
        if (num < 0 || num % (n - 1) != 0) return std::nullopt;
        return int(num / (n - 1));
    }

    QPoly tau_q(const Index& I)
    {
        check(I);
        std::lock_guard<std::recursive_mutex> lk(mu_);
        return eval(I);
    }
    CorrelatorPoly tau(const Index& I) { return lift(tau_q(I)); }

    // t-basis correlator through d/dt^{n-1} = d/dtau^{n-1} - 4 d/dtau^0 and
    // d/dt^n = d/dtau^n - 12 d/dtau^1
    QPoly t_q(const Index& I)
    {
        check(I);
        std::lock_guard<std::recursive_mutex> lk(mu_);
        const int n = m_.n;
        const int p_max = I[n - 1], q_max = I[n];
        QPoly sum;
        for (int p = 0; p <= p_max; ++p)
            for (int q = 0; q <= q_max; ++q) {
                Index J = I;
                J[n - 1] -= p;
                J[0] += p;
                J[n] -= q;
                J[1] += q;
                QPoly v = eval(J);
                if (v.is_zero()) continue;
                Rational c = Rational(binom(p_max, p) * binom(q_max, q));
                for (int k = 0; k < p; ++k) c *= -4;
                for (int k = 0; k < q; ++k) c *= -12;
                sum.add_scaled(c, v);
            }
        return sum;
    }
    CorrelatorPoly t(const Index& I) { return lift(t_q(I)); }

    QPoly correlator_q(const Index& I, Basis b) { return b == Basis::TAU ? tau_q(I) : t_q(I); }

    // memo access for persistence
    std::size_t cache_size() const
    {
        std::lock_guard<std::recursive_mutex> lk(mu_);
        return memo_.size();
    }
    std::map<Index, QPoly> cache_entries() const
    {
        std::lock_guard<std::recursive_mutex> lk(mu_);
        std::map<Index, QPoly> out;
        for (const auto& [k, v] : memo_) out.emplace(decode(k), v);
        return out;
    }
    // first writer wins; returns false when an existing value disagrees
    bool cache_insert(const Index& canonical, const QPoly& v)
    {
        std::lock_guard<std::recursive_mutex> lk(mu_);
        auto [it, fresh] = memo_.emplace(encode(canonical), v);
        return fresh || it->second == v;
    }

    Index canonical(const Index& I) const
    {
        Index c = I;
        std::sort(c.begin() + m_.prim_begin(), c.end(), std::greater<int>());
        return c;
    }

private:
    void check(const Index& I) const
    {
        if (int(I.size()) != m_.size())
            throw std::invalid_argument("index length " + std::to_string(I.size()) + ", expected " +
                                        std::to_string(m_.size()));
        for (int v : I)
            if (v < 0 || v > 255) throw std::invalid_argument("index entries must lie in [0,255]");
    }

    std::string encode(const Index& I) const { return std::string(I.begin(), I.end()); }
    Index decode(const std::string& s) const
    {
        Index I(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) I[k] = static_cast<unsigned char>(s[k]);
        return I;
    }

    // cheap vanishing tests that need no recursion
    bool trivially_zero(const Index& I) const
    {
        int len = 0;
        for (int v : I) len += v;
        if (len < 3) return true;
        if (!degree(I)) return true;
        int parity = -1;
        for (int k = m_.prim_begin(); k < m_.size(); ++k) {
            if (parity < 0) parity = I[k] & 1;
            else if ((I[k] & 1) != parity) return true;
        }
        if (I[0] > 0 && len > 3) return true;
        return false;
    }

    QPoly eval(const Index& I)
    {
        if (trivially_zero(I)) return {};
        Index c = canonical(I);
        std::string key = encode(c);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (!active_.insert(key).second) throw EngineError("recursion revisits " + index_str(c) + " before finishing it");
        QPoly v;
        try {
            v = compute(c);
        } catch (...) {
            active_.erase(key);
            throw;
        }
        active_.erase(key);
        memo_.emplace(key, v);
        return v;
    }

    QPoly compute(const Index& P)
    {
        const int n = m_.n;
        int len = 0, amb = 0, high_amb = 0, prim = 0;
        for (int k = 0; k <= n; ++k) {
            len += P[k];
            amb += P[k];
            if (k >= 2 && P[k] > 0) ++high_amb;
        }
        for (int k = m_.prim_begin(); k < m_.size(); ++k) prim += P[k];
        len += prim;

        if (len == 3) return QPoly(three_point(P));
        if (P[0] > 0) return {};
        if (P[1] > 0) return euler_step(P);
        if (high_amb > 0) return prim == 0 ? ambient_step(P) : mixed_step(P);

        // only primitive insertions from here on
        std::vector<int> e(P.begin() + m_.prim_begin(), P.end());
        if (prim == 4) {
            if (e[0] == 4 || (e[0] == 2 && e[1] == 2)) return QPoly(Rational(1));
            return {};
        }
        if (std::all_of(e.begin(), e.end(), [](int v) { return v == 1; })) return QPoly::x();
        if (e[1] == 0) return single_slot_step(P);
        return generic_step(P);
    }

    Rational three_point(const Index& P) const
    {
        const int n = m_.n;
        std::vector<int> slots;
        for (int k = 0; k < m_.size(); ++k)
            for (int r = 0; r < P[k]; ++r) slots.push_back(k);
        int prim = 0;
        for (int s : slots) prim += m_.is_primitive(s);
        if (prim == 0) return ambient_3pt_tau(n, slots[0], slots[1], slots[2]);
        if (prim == 2) {
            // slots are sorted: ambient first
            if (slots[0] == 0 && slots[1] == slots[2]) return 1;
            return 0;
        }
        return 0;
    }

    // (n-1)<1,I'> = c <I'> - (4n-4) i'_{n-1} <0,I'-e_{n-1}> - (12n-12) i'_n <1,I'-e_n>
    QPoly euler_step(const Index& P)
    {
        const int n = m_.n;
        Index Ip = P;
        Ip[1] -= 1;
        Rational c = 3 - n;
        for (int j = 0; j <= n; ++j) c += Rational(j - 1) * Ip[j];
        for (int j = m_.prim_begin(); j < m_.size(); ++j) c += make_rational(n - 2, 2) * Ip[j];
        QPoly r = eval(Ip) * c;
        if (Ip[n - 1] > 0) {
            Index J = Ip;
            J[n - 1] -= 1;
            J[0] += 1;
            r.add_scaled(Rational(-(4 * n - 4) * Ip[n - 1]), eval(J));
        }
        if (Ip[n] > 0) {
            Index J = Ip;
            J[n] -= 1;
            J[1] += 1;
            r.add_scaled(Rational(-(12 * n - 12) * Ip[n]), eval(J));
        }
        return r * make_rational(1, n - 1);
    }

    // sum over J <= K with lo <= |J| <= hi of C(K,J) sum_{e,f} <L+J+e> eta^{ef} <R+K-J+f>
    QPoly wdvv_sum(const Index& L, const Index& R, const Index& K, int lo, int hi)
    {
        QPoly total;
        std::vector<int> support;
        for (int k = 0; k < m_.size(); ++k)
            if (K[k] > 0) support.push_back(k);
        Index J = zero_index();
        const int lenK = index_length(K);
        Index left(m_.size()), right(m_.size());
        const int lenL = index_length(L), lenR = index_length(R);
        while (true) {
            int lenJ = index_length(J);
            if (lenJ >= lo && lenJ <= hi) {
                Rational coef = 1;
                for (int k : support) coef *= binom(K[k], J[k]);
                for (int k = 0; k < m_.size(); ++k) {
                    left[k] = L[k] + J[k];
                    right[k] = R[k] + K[k] - J[k];
                }
                const bool left_first = lenL + lenJ <= lenR + lenK - lenJ;
                for (const auto& t : eta_) {
                    left[t.e] += 1;
                    right[t.f] += 1;
                    QPoly p1, p2;
                    if (left_first) {
                        p1 = eval(left);
                        if (!p1.is_zero()) p2 = eval(right);
                    } else {
                        p2 = eval(right);
                        if (!p2.is_zero()) p1 = eval(left);
                    }
                    left[t.e] -= 1;
                    right[t.f] -= 1;
                    if (p1.is_zero() || p2.is_zero()) continue;
                    total.add_scaled(coef * t.v, p1 * p2);
                }
            }
            // odometer over support
            std::size_t s = 0;
            while (s < support.size() && J[support[s]] == K[support[s]]) {
                J[support[s]] = 0;
                ++s;
            }
            if (s == support.size()) break;
            J[support[s]] += 1;
        }
        return total;
    }

    Index sum_units(std::initializer_list<int> slots) const
    {
        Index I = zero_index();
        for (int s : slots) I[s] += 1;
        return I;
    }

    // WDVV (h~_1, h~_{i-1}; a, b) at tau^K isolates <i, a, b, K> through the J = 0 term
    QPoly wdvv_isolate(int i, int a, int b, const Index& K)
    {
        const int lenK = index_length(K);
        QPoly r = wdvv_sum(sum_units({1, a}), sum_units({i - 1, b}), K, 0, lenK);
        r -= wdvv_sum(sum_units({1, i - 1}), sum_units({a, b}), K, 1, lenK);
        return r;
    }

    // only ambient slots >= 2, length >= 4
    QPoly ambient_step(const Index& P)
    {
        const int n = m_.n;
        Index K = P;
        int i = 2;
        while (K[i] == 0) ++i;
        K[i] -= 1;
        int a = n;
        while (K[a] == 0) --a;
        K[a] -= 1;
        int b = n;
        while (K[b] == 0) --b;
        K[b] -= 1;
        return wdvv_isolate(i, a, b, K);
    }

    // ambient slot >= 2 together with primitive insertions
    QPoly mixed_step(const Index& P)
    {
        const int n = m_.n;
        Index K = P;
        int i = n;
        while (K[i] == 0) --i;
        K[i] -= 1;
        const int a = m_.prim_begin();
        K[a] -= 1;
        const int b = K[a + 1] > 0 ? a + 1 : a;
        K[b] -= 1;
        if (K[b] < 0) throw EngineError("mixed step without two primitive insertions at " + index_str(P));
        return wdvv_isolate(i, a, b, K);
    }

    Rational lambda(int lenI, int ic) const { return make_rational(2 * lenI - 4, m_.n - 1) - 2 * ic; }

    QPoly prim_terms_aa(int a, const Index& I)
    {
        const int n = m_.n, len = index_length(I);
        QPoly r = wdvv_sum(sum_units({1, n - 1}), sum_units({a, a}), I, 2, len) * make_rational(1, 4);
        r -= wdvv_sum(sum_units({1, a}), sum_units({n - 1, a}), I, 1, len - 1) * make_rational(1, 4);
        return r;
    }

    // a single nonzero primitive exponent k > 4
    QPoly single_slot_step(const Index& P)
    {
        const int a = m_.prim_begin(), b = a + 1;
        Index I = P;
        I[a] -= 2;
        const int len = index_length(I);
        QPoly rhs = prim_terms_aa(a, I) + prim_terms_aa(b, I);
        rhs -= wdvv_sum(sum_units({a, a}), sum_units({b, b}), I, 2, len - 2);
        rhs += wdvv_sum(sum_units({a, b}), sum_units({a, b}), I, 2, len - 2);
        const Rational la = lambda(len, I[a]), lb = lambda(len, I[b]);
        if (is_zero(lb))
            throw EngineError("single-slot step: zero coefficient (2|I|-4)/(n-1)-2i_b at " + index_str(P));
        Index other = I;
        other[b] += 2;
        rhs.add_scaled(-la, eval(other));
        return rhs * (1 / lb);
    }

    QPoly generic_step(const Index& P)
    {
        const int n = m_.n, base = m_.prim_begin();
        std::vector<int> e(P.begin() + base, P.end());
        IndexTriple t = index_triple(e);
        const int a = base + t.a, b = base + t.b, c = base + t.c;
        Index I = P;
        I[a] -= 1;
        I[b] -= 1;
        const int len = index_length(I);
        const Rational lam = lambda(len, I[c]);
        if (is_zero(lam))
            throw EngineError("generic step: zero coefficient (2|I|-4)/(n-1)-2i_c at " + index_str(P));
        QPoly r = wdvv_sum(sum_units({1, n - 1}), sum_units({a, b}), I, 2, len) * make_rational(1, 4);
        r -= wdvv_sum(sum_units({1, a}), sum_units({n - 1, b}), I, 1, len - 1) * make_rational(1, 4);
        r -= wdvv_sum(sum_units({a, b}), sum_units({c, c}), I, 2, len - 2);
        r += wdvv_sum(sum_units({a, c}), sum_units({b, c}), I, 2, len - 2);
        return r * (1 / lam);
    }

    ModelParams m_;
    std::vector<EtaEntry> eta_;
    mutable std::recursive_mutex mu_;
    std::unordered_map<std::string, QPoly> memo_;
    std::unordered_set<std::string> active_;
};

// one engine per n, shared by every caller in the process
inline Engine& shared_engine(int n)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Engine>> engines;
    std::lock_guard<std::mutex> lk(mu);
    auto& e = engines[n];
    if (!e) e = std::make_unique<Engine>(n);
    return *e;
}

} // namespace qh22
