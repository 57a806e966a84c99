#pragma once

#include "engine.hpp"

namespace qh22 {

// exponents (i_0, ..., i_n) over the ambient basis
using AmbientIndex = std::vector<int>;

inline Index embed_ambient(int n, const AmbientIndex& a)
{
    ModelParams m(n);
    if (int(a.size()) != n + 1) throw std::invalid_argument("ambient index must have n+1 entries");
    Index I(m.size(), 0);
    std::copy(a.begin(), a.end(), I.begin());
    return I;
}

// Ambient-only correlators. These never involve x; the value is its constant term.
inline Rational ambient_correlator(Engine& E, const AmbientIndex& a, Basis b)
{
    QPoly v = E.correlator_q(embed_ambient(E.n(), a), b);
    if (v.degree() > 0) throw EngineError("ambient correlator depends on x");
    return v.coeff(0);
}

inline Rational ambient_correlator(int n, const AmbientIndex& a, Basis b)
{
    return ambient_correlator(shared_engine(n), a, b);
}

} // namespace qh22
