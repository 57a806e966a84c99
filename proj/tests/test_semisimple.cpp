#include "qh22/semisimple.hpp"

#include <doctest.h>

using namespace qh22;

namespace {

CutoffPoint sample(int n, std::uint64_t seed)
{
    std::mt19937_64 g(seed);
    CutoffPoint pt = random_point(n, g);
    while (degenerate_point(pt)) pt = random_point(n, g);
    return pt;
}

} // namespace

TEST_CASE("cutoff matrix entries")
{
    for (int n : {4, 6}) {
        CutoffPoint pt = sample(n, 7);
        QMatrix M = cutoff_matrix(pt);
        ModelParams m(n);
        CHECK(M.rows() == std::size_t(2 * n + 4));
        CHECK(M(0, 1) == n - 1);
        for (int k = 2; k <= n - 1; ++k) CHECK(M(k - 1, k) == n - 1);
        CHECK(M(n, 2) == 16 * (n - 1));
        CHECK(M(n - 1, 0) == -2 * (n - 1) * pt.s());
        const int a = m.prim_begin(), b = m.prim_begin() + 3;
        CHECK(M(a, b) == pt.tau[0] * pt.tau[3]);
        CHECK(M(b, a) == pt.tau[0] * pt.tau[3]);
        CHECK(M(b, 1) == (n - 3) * pt.tau[3]);
        CHECK(M(b, n) == make_rational(2 - n, 8) * pt.tau[3]);
    }
    CHECK_THROWS(cutoff_matrix(CutoffPoint{4, std::vector<Rational>(6)}));
}

TEST_CASE("value at the origin")
{
    CutoffPoint z4{4, std::vector<Rational>(7)};
    const ZPoly p4 = mat_charpoly(cutoff_matrix(z4));
    CHECK(p4 == ZPoly::monomial(9) * (ZPoly::monomial(3) - ZPoly(Rational(432))));
    CHECK(p4 == P_at_origin(4));
    CHECK(closed_form_P(z4) == p4);
    for (int n : {6, 8}) {
        CutoffPoint z{n, std::vector<Rational>(n + 3)};
        CHECK(mat_charpoly(cutoff_matrix(z)) == P_at_origin(n));
        CHECK(closed_form_P(z) == P_at_origin(n));
    }
    CHECK(!squarefree(p4));
}

TEST_CASE("closed form agrees at random points")
{
    for (int n : {4, 6}) {
        auto scan = semisimple_scan(n, 20, 2024 + n);
        int accepted = 0, sqf = 0;
        for (const auto& r : scan) {
            if (r.rejected) continue;
            ++accepted;
            CHECK(r.agree);
            CHECK(r.degree == 2 * n + 4);
            CHECK(r.computed.coeff(2 * n + 4) == 1);
            sqf += r.squarefree;
            CHECK(r.squarefree == (r.distinct_roots == r.degree));
        }
        CHECK(accepted == 20);
        CHECK(sqf >= 19);
    }
}

TEST_CASE("scan is reproducible from the seed")
{
    auto a = semisimple_scan(4, 5, 99), b = semisimple_scan(4, 5, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].point == b[k].point);
        CHECK(a[k].computed == b[k].computed);
        CHECK(a[k].rejected == b[k].rejected);
    }
}

TEST_CASE("rejected draws are reported")
{
    auto scan = semisimple_scan(4, 20, 1);
    for (const auto& r : scan)
        if (r.rejected) CHECK(degenerate_point(CutoffPoint{4, r.point}));
}

TEST_CASE("low coefficients vanish at the origin but not at generic points")
{
    CHECK(P_at_origin(4).coeff(0) == 0);
    CHECK(P_at_origin(4).coeff(1) == 0);
    for (int n : {4, 6})
        for (std::uint64_t s = 1; s <= 5; ++s) {
            ZPoly p = closed_form_P(sample(n, s));
            CHECK(p.coeff(0) != 0);
            CHECK(p.coeff(1) != 0);
        }
}

TEST_CASE("branch discriminant")
{
    CHECK(branch_discriminant(4) == 56448);
    CHECK(branch_discriminant(6) == 207360);
    for (int n = 4; n <= 64; n += 2) CHECK(branch_discriminant(n) > 0);
}

TEST_CASE("trinomials have simple roots")
{
    CHECK(zn_minus_az_plus_1_squarefree(3, 0));
    CHECK(zn_minus_az_plus_1_squarefree(3, make_rational(4, 3)));
    CHECK(zn_minus_az_plus_1_squarefree(7, make_rational(5, 3)));
    const int n = 6;
    CHECK(zn_minus_az_plus_1_squarefree(n + 3, make_rational(n * n - 2 * n - 15, n * n - 2 * n - 11)));
    std::mt19937_64 g(5);
    for (int k = 0; k < 30; ++k) {
        int d = 3 + int(g() % 8);
        CHECK(zn_minus_az_plus_1_squarefree(d, make_rational(long(g() % 41) - 20, long(g() % 7) + 1)));
    }
    CHECK_THROWS(zn_minus_az_plus_1_squarefree(2, 1));
}
