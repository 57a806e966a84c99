#pragma once

#include "engine.hpp"

#include <functional>

namespace qh22 {

// every canonical tau-index of the given length that survives the cheap vanishing
// rules: no insertion of 1, integral degree, primitive exponents of one parity
inline std::vector<Index> canonical_indices(const Engine& E, int len)
{
    const ModelParams& m = E.params();
    std::vector<Index> out;
    Index I = E.zero_index();
    std::function<void(int, int)> prim = [&](int k, int left) {
        if (k == m.size()) {
            if (left) return;
            int parity = -1;
            for (int j = m.prim_begin(); j < m.size(); ++j) {
                if (parity < 0) parity = I[j] & 1;
                else if ((I[j] & 1) != parity) return;
            }
            if (E.degree(I)) out.push_back(I);
            return;
        }
        const int cap = k == m.prim_begin() ? left : std::min(left, I[k - 1]);
        for (int v = cap; v >= 0; --v) {
            I[k] = v;
            prim(k + 1, left - v);
        }
        I[k] = 0;
    };
    std::function<void(int, int)> amb = [&](int k, int left) {
        if (k > m.n) {
            prim(m.prim_begin(), left);
            return;
        }
        for (int v = left; v >= 0; --v) {
            I[k] = v;
            amb(k + 1, left - v);
        }
        I[k] = 0;
    };
    amb(1, len);
    return out;
}

struct ConvergenceWitness {
    long C = 1;
    std::size_t checked = 0;
    Index worst;  // index forcing the final C, empty if none
};

// smallest integer C >= 1 with |v_I| <= (|I|-5)! C^{|I|-5} for 6 <= |I| <= Lmax, x -> (-1)^{n/2}/2.
// At |I| = 5 the bound reads |v_I| <= 1 whatever C is, so that length is left out.
inline ConvergenceWitness convergence_witness(Engine& E, int Lmax)
{
    if (Lmax < 5) throw std::invalid_argument("Lmax must be at least 5");
    const Rational xval = make_rational((E.n() / 2) % 2 == 0 ? 1 : -1, 2);
    ConvergenceWitness w;
    for (int len = 6; len <= Lmax; ++len) {
        const int k = len - 5;
        Rational fact = 1;
        for (int j = 2; j <= k; ++j) fact *= j;
        for (const auto& I : canonical_indices(E, len)) {
            Rational v = abs(E.tau_q(I)(xval));
            ++w.checked;
            auto bound = [&](long C) {
                Rational b = fact;
                for (int j = 0; j < k; ++j) b *= C;
                return b;
            };
            if (v <= bound(w.C)) continue;
            long C = w.C;
            while (v > bound(C)) C *= 2;
            long lo = C / 2 + 1, hi = C;
            while (lo < hi) {
                long mid = lo + (hi - lo) / 2;
                if (v <= bound(mid)) hi = mid;
                else lo = mid + 1;
            }
            w.C = hi;
            w.worst = I;
        }
    }
    return w;
}

} // namespace qh22
