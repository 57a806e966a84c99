// Acceptance checks, one line per criterion. Exit status is nonzero if any fails.
#include "oracles.hpp"
#include "qh22/convergence.hpp"
#include "qh22/geometry.hpp"
#include "qh22/semisimple.hpp"
#include "qh22/special.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace qh22;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream why;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            why << " [" << what << "]";
        }
    }
};

Index ix(int n, std::initializer_list<std::pair<int, int>> slots)
{
    Index I(2 * n + 4, 0);
    for (auto [k, c] : slots) I[k] += c;
    return I;
}

QPoly c(const Rational& a, const Rational& b = 0) { return QPoly(std::vector<Rational>{a, b}); }

bool all_zero(const std::vector<Rational>& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_zero(x); });
}

void criterion1(Check& k)
{
    Engine E(4);
    const std::pair<Index, long> table[] = {
        {ix(4, {{2, 7}}), 46656},         {ix(4, {{2, 5}, {5, 2}}), -624},
        {ix(4, {{2, 3}, {5, 4}}), 36},    {ix(4, {{2, 3}, {5, 2}, {6, 2}}), 4},
        {ix(4, {{2, 1}, {5, 6}}), -7},    {ix(4, {{2, 1}, {5, 4}, {6, 2}}), 1},
        {ix(4, {{2, 1}, {5, 2}, {6, 2}, {7, 2}}), 1}};
    for (const auto& [I, v] : table) {
        QPoly got = E.t_q(I);
        k.expect(got == c(v), index_str(I) + " -> " + got.str());
    }
    k.why << " seven values";
}

void criterion2(Check& k)
{
    for (int n : {4, 6}) {
        Engine& E = shared_engine(n);
        const int p = n + 1;
        const std::string t = "n=" + std::to_string(n) + " ";
        k.expect(E.t_q(ix(n, {{n - 1, 2}, {n, 1}})) == c(192), t + "192");
        k.expect(E.t_q(ix(n, {{p, 2}, {n - 1, 1}})) == c(-4), t + "-4");
        k.expect(E.t_q(ix(n, {{p, 2}, {n - 1, 1}, {n, 1}})) == c(-16), t + "-16");
        k.expect(E.t_q(ix(n, {{p, 2}, {n - 1, 1}, {n, 2}})) == c(-192), t + "-192");
        const QPoly four = E.t_q(ix(n, {{p, 2}, {p + 1, 2}}));
        k.expect(four == c(1), t + "<eeff> = 1");
        k.expect(E.t_q(ix(n, {{p, 2}, {p + 1, 2}, {n, 1}})) == c(4) - c(4) * four, t + "aabb h_n");
        k.expect(E.t_q(ix(n, {{p, 4}, {n, 1}})) == c(12) - c(4) * E.t_q(ix(n, {{p, 4}})), t + "a^4 h_n");
    }
    k.why << " n=4,6";
}

void criterion3(Check& k)
{
    const QPoly want[] = {c(make_rational(11, 16), make_rational(5, 8)), c(make_rational(19303, 16), make_rational(39, 8)),
                          c(make_rational(6441821, 4), make_rational(135, 2))};
    int i = 0;
    for (int n : {4, 6, 8}) {
        auto t0 = std::chrono::steady_clock::now();
        CorrelatorPoly f = in_epsilon_special(n, f_value(shared_engine(n)));
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        k.expect(f == lift(want[i]), "f(" + std::to_string(n) + ") = " + f.str());
        k.why << " f(" << n << ")=" << f.str() << " " << std::fixed << std::setprecision(1) << s << "s";
        ++i;
    }
}

void criterion4(Check& k)
{
    const QPoly lhs6 = shared_engine(6).tau_q(quadratic_lhs_index(6));
    k.expect(lhs6.str() == "8*x^2-2", "n=6 lhs " + lhs6.str());
    for (int n : {4, 6, 8}) {
        QPoly r = conjecture_quadratic(shared_engine(n));
        k.expect(r.is_zero(), "n=" + std::to_string(n) + " residual " + r.str());
    }
    k.why << " residual 0 for n=4,6,8; n=6 lhs " << lhs6.str();
}

void criterion5(Check& k)
{
    const int n = 4;
    Engine E(n);
    ModelParams m(n);
    std::mt19937_64 g(5);
    int perm = 0, parity = 0, dim = 0, wdvv = 0;
    while (perm < 100) {
        Index I = oracle::random_index(n, g, 4 + int(g() % 4));
        Index P = I;
        std::shuffle(P.begin() + m.prim_begin(), P.end(), g);
        k.expect(Engine(n).tau_q(P) == E.tau_q(I), "permutation " + index_str(I));
        ++perm;
    }
    while (parity < 100) {
        Index I = oracle::random_index(n, g, 3 + int(g() % 6));
        if (oracle::equal_parity(n, I)) continue;
        k.expect(E.tau_q(I).is_zero(), "parity " + index_str(I));
        ++parity;
    }
    while (dim < 100) {
        Index I = oracle::random_index(n, g, 3 + int(g() % 6));
        if (E.degree(I)) continue;
        k.expect(E.tau_q(I).is_zero() && E.t_q(I).is_zero(), "dim " + index_str(I));
        ++dim;
    }
    for (int len = 3; len <= 7; ++len)
        for (const auto& I : canonical_indices(E, len)) E.tau_q(I);
    const auto cached = E.cache_entries();
    std::size_t div = 0;
    for (const auto& [I, v] : cached) {
        if (I[0] != 0 || index_length(I) < 3) continue;
        auto beta = E.degree(I);
        if (!beta) continue;
        Index H = I;
        ++H[1];
        k.expect(E.t_q(H) == c(*beta) * E.t_q(I), "divisor " + index_str(I));
        ++div;
    }
    while (wdvv < 25) {
        int a = int(g() % (n + 1)), b = int(g() % (n + 1)), cc = int(g() % (n + 1)), d = int(g() % (n + 1));
        Index I = oracle::random_index(n, g, int(g() % 5));
        k.expect(oracle::wdvv_residual(E, a, b, cc, d, I).is_zero(), "wdvv " + index_str(I));
        ++wdvv;
    }
    k.why << " perm " << perm << ", parity " << parity << ", dim " << dim << ", divisor " << div << "/" << cached.size()
          << " cached, wdvv " << wdvv;
}

void criterion6(Check& k)
{
    for (int n : {4, 6}) {
        auto scan = semisimple_scan(n, 20, 2024 + n);
        int agree = 0, sqf = 0, rejected = 0;
        for (const auto& r : scan) {
            if (r.rejected) {
                ++rejected;
                continue;
            }
            agree += r.agree;
            sqf += r.squarefree;
        }
        k.expect(agree == 20, "n=" + std::to_string(n) + " closed form " + std::to_string(agree) + "/20");
        k.expect(sqf >= 19, "n=" + std::to_string(n) + " squarefree " + std::to_string(sqf) + "/20");
        CutoffPoint z{n, std::vector<Rational>(n + 3)};
        k.expect(mat_charpoly(cutoff_matrix(z)) == P_at_origin(n), "n=" + std::to_string(n) + " origin");
        const Rational d = 64 * (n - 1) * (n + 2) * (n + 3) * (n + 3);
        k.expect(branch_discriminant(n) == d, "discriminant");
        k.why << " n=" << n << ": agree " << agree << "/20, squarefree " << sqf << "/20, resampled " << rejected << ";";
    }
    k.expect(branch_discriminant(4) == 56448 && branch_discriminant(6) == 207360, "discriminant values");
}

void criterion7(Check& k)
{
    const Lambdas l = Lambdas::standard();
    PipelineReport r = conic_pipeline(l);
    for (const auto& s : r.stages) k.expect(s.pass, s.name);
    DualReport d = dual_uniqueness(l);
    k.expect(d.status == DualSolveResult::Status::Solved && d.kernel_rank == 1 && d.kernel_is_p && d.unit_multiples_only,
             "dual uniqueness");
    k.expect(d.ideal_matches, "rank-6 ideal");
    k.why << " " << r.stages.size() << " stages, dual kernel rank " << d.kernel_rank;
}

void criterion8(Check& k)
{
    for (int n : {4, 6, 8}) {
        const Rational s = (n / 2) % 2 == 0 ? 1 : -1;
        k.expect(epsilon_gram(n) == s * QMatrix::identity(n + 3), "gram n=" + std::to_string(n));
        auto u = unique_plane_check(n);
        k.expect(u.unique, "uniqueness n=" + std::to_string(n));
    }
    k.expect(intersection_number(flip_set({0}), flip_set({1}), 4) == 1, "sigma_i.sigma_j");
    k.expect(intersection_number(flip_set({0}), flip_set({0}), 4) == 2, "sigma_i.sigma_i");
    for (int n : {4, 6, 8})
        k.expect(lattice_dot(sigma_gram(n), standard_plane_class(n), h_class(n)) == 1, "S.h");
    for (int n = 4; n <= 64; n += 2) k.expect(lemma_inequality_sum(n) < 4, "inequality n=" + std::to_string(n));
    k.why << " gram, uniqueness n=4,6,8; spot values 1,2,1; inequality n<=64";
}

void criterion9(Check& k)
{
    Engine& E = shared_engine(4);
    long prev = 0;
    for (int L = 5; L <= 8; ++L) {
        ConvergenceWitness w = convergence_witness(E, L);
        k.expect(w.C >= 1, "finite C");
        k.expect(w.C >= prev, "monotone at Lmax=" + std::to_string(L));
        prev = w.C;
        k.why << " Lmax=" << L << ": C=" << w.C << " over " << w.checked << ";";
    }
}

} // namespace

int main()
{
    const std::vector<std::function<void(Check&)>> crit = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
    int failed = 0;
    for (std::size_t i = 0; i < crit.size(); ++i) {
        Check k;
        auto t0 = std::chrono::steady_clock::now();
        try {
            crit[i](k);
        } catch (const std::exception& e) {
            k.ok = false;
            k.why << " exception: " << e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << i + 1 << ": " << (k.ok ? "PASS" : "FAIL") << k.why.str() << " (" << std::fixed
                  << std::setprecision(2) << s << "s)" << std::endl;
        failed += !k.ok;
    }
    return failed == 0 ? 0 : 1;
}
