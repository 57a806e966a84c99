#include "qh22/geometry.hpp"
#include "qh22/semisimple.hpp"

#include <doctest.h>

#include <random>

using namespace qh22;

namespace {

Rational rnd_q(std::mt19937_64& g, int range = 9)
{
    long num = long(g() % (2 * range + 1)) - range;
    long den = long(g() % range) + 1;
    return make_rational(num, den);
}

QMatrix rnd_matrix(std::mt19937_64& g, std::size_t r, std::size_t c, int zero_every = 0)
{
    QMatrix A(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            A(i, j) = (zero_every && g() % zero_every == 0) ? Rational(0) : rnd_q(g);
    return A;
}

// cofactor expansion, an oracle for small determinants
Rational cofactor_det(const QMatrix& A)
{
    const std::size_t n = A.rows();
    if (n == 1) return A(0, 0);
    Rational d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        QMatrix M(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, q = 0; j < n; ++j)
                if (j != c) M(i - 1, q++) = A(i, j);
        Rational t = A(0, c) * cofactor_det(M);
        d += c % 2 == 0 ? t : Rational(-t);
    }
    return d;
}

UniPoly<Rational> zpoly(std::vector<long> c)
{
    std::vector<Rational> r;
    for (long v : c) r.push_back(v);
    return UniPoly<Rational>(r);
}

} // namespace

TEST_CASE("rationals are canonical and serialize as num/den")
{
    Rational r = make_rational(6, -4);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    CHECK(to_string(r) == "-3/2");
    CHECK(to_string(make_rational(8, 4)) == "2");
    CHECK(parse_rational("-10/4") == make_rational(-5, 2));
    CHECK_THROWS(parse_rational("1/x"));
}

TEST_CASE("gaussian rationals")
{
    GaussianRational a(make_rational(1, 2), Rational(-3));
    CHECK(to_string(a) == "1/2-3*i");
    CHECK(to_string(GaussianRational(Rational(0), make_rational(-39, 8))) == "-39/8*i");
    CHECK(a.conj().conj() == a);
    CHECK(a * a.inverse() == GaussianRational(1));
    CHECK(i_pow(2) == GaussianRational(-1));
    CHECK(i_pow(-1) == GaussianRational(Rational(0), Rational(-1)));
    CHECK_THROWS(GaussianRational().inverse());

    std::mt19937_64 g(11);
    for (int k = 0; k < 50; ++k) {
        GaussianRational x(rnd_q(g), rnd_q(g)), y(rnd_q(g), rnd_q(g)), z(rnd_q(g), rnd_q(g));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y).conj() == x.conj() * y.conj());
        if (!is_zero(x)) CHECK(x / x == GaussianRational(1));
    }
}

TEST_CASE("dual numbers")
{
    const DualNumber e = DualNumber::eps();
    CHECK(is_zero(e * e));
    CHECK(!e.is_unit());
    CHECK_THROWS(e.inverse());
    DualNumber u(Rational(3), Rational(5));
    CHECK(u * u.inverse() == DualNumber(1));
    CHECK(to_string(u) == "3+5*eps");

    std::mt19937_64 g(12);
    for (int k = 0; k < 50; ++k) {
        DualNumber x(rnd_q(g), rnd_q(g)), y(rnd_q(g), rnd_q(g)), z(rnd_q(g), rnd_q(g));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x.is_unit() == !is_zero(x.a));
    }
}

TEST_CASE("polynomial ring")
{
    using P = UniPoly<Rational>;
    P a = zpoly({1, -2, 0, 3});
    CHECK(a.degree() == 3);
    CHECK(zpoly({0, 0, 0}).is_zero());
    CHECK(zpoly({-2, 0, 8}).str() == "8*x^2-2");
    CHECK(P(std::vector<Rational>{make_rational(11, 16), make_rational(5, 8)}).str() == "11/16+5/8*x");
    CHECK(P::x().str() == "x");

    std::mt19937_64 g(13);
    auto rp = [&] {
        std::vector<Rational> c(g() % 5);
        for (auto& v : c) v = rnd_q(g);
        return P(c);
    };
    for (int k = 0; k < 30; ++k) {
        P x = rp(), y = rp(), z = rp();
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x - x == P());
        if (!y.is_zero()) {
            auto [q, r] = x.divmod(y);
            CHECK(q * y + r == x);
            CHECK((r.is_zero() || r.degree() < y.degree()));
        }
        Rational s = rnd_q(g);
        CHECK((x * y)(s) == x(s) * y(s));
    }
}

TEST_CASE("rank")
{
    CHECK(mat_rank(QMatrix::identity(2)) == 2);
    CHECK(mat_rank(QMatrix(3, 5)) == 0);
    CHECK(mat_rank(conic_on_S_matrix(Lambdas::standard())) == 6);
}

TEST_CASE("nullspace")
{
    CHECK(mat_nullspace(QMatrix::identity(3)).empty());
    QMatrix row(1, 2, {Rational(1), Rational(-1)});
    auto ns = mat_nullspace(row);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == std::vector<Rational>{1, 1});
}

TEST_CASE("the 28 x 35 plane system has the seven displayed free coordinates")
{
    const QMatrix EC = build_EC(Lambdas::standard());
    CHECK(mat_nullspace(EC).size() == 7);
    // oracle: the 28 columns other than p012..p124 are independent, and the first
    // displayed solved equation holds on the whole nullspace
    QMatrix D(28, 28);
    for (int i = 0; i < 28; ++i)
        for (int j = 0; j < 28; ++j) D(i, j) = EC(i, 7 + j);
    CHECK(mat_rank(D) == 28);
    const auto q = [](long a, long b) { return make_rational(a, b); };
    const std::vector<Rational> p034 = {q(40, 17), q(-5, 1), q(82, 17), q(-175, 102), q(-75, 34), q(259, 408), q(55, 102)};
    for (const auto& v : mat_nullspace(EC)) {
        Rational s = 0;
        for (int k = 0; k < 7; ++k) s += p034[k] * v[k];
        CHECK(v[triple_index(0, 3, 4)] == s);
    }
}

TEST_CASE("rank plus nullity, determinants")
{
    std::mt19937_64 g(14);
    for (int k = 0; k < 40; ++k) {
        std::size_t r = 1 + g() % 6, c = 1 + g() % 6;
        QMatrix A = rnd_matrix(g, r, c, 2);
        CHECK(mat_rank(A) + mat_nullspace(A).size() == c);
        for (const auto& v : mat_nullspace(A)) {
            auto z = A.apply(v);
            CHECK(std::all_of(z.begin(), z.end(), [](const Rational& x) { return is_zero(x); }));
        }
        QMatrix S = rnd_matrix(g, r, r, 3);
        CHECK(mat_det(S) == cofactor_det(S));
    }
}

TEST_CASE("characteristic polynomial")
{
    QMatrix D(2, 2);
    D(0, 0) = 1;
    D(1, 1) = 2;
    CHECK(mat_charpoly(D) == zpoly({2, -3, 1}));
    QMatrix J(2, 2);
    J(0, 1) = 1;
    CHECK(mat_charpoly(J) == zpoly({0, 0, 1}));
    CHECK_THROWS(mat_charpoly(QMatrix(2, 3)));

    CutoffPoint zero{4, std::vector<Rational>(7)};
    auto expected = UniPoly<Rational>::monomial(9) * zpoly({-432, 0, 0, 1});
    CHECK(mat_charpoly(cutoff_matrix(zero)) == expected);
}

TEST_CASE("Cayley-Hamilton up to size 6")
{
    std::mt19937_64 g(15);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int k = 0; k < 5; ++k) {
            QMatrix A = rnd_matrix(g, n, n, 4);
            auto p = mat_charpoly(A);
            CHECK(p.degree() == int(n));
            CHECK(p.coeff(n) == 1);
            QMatrix acc(n, n), pw = QMatrix::identity(n);
            for (int d = 0; d <= p.degree(); ++d) {
                acc = acc + p.coeff(d) * pw;
                pw = pw * A;
            }
            CHECK(acc.is_zero_matrix());
        }
}

TEST_CASE("dual-number elimination")
{
    using St = DualSolveResult::Status;
    const DualNumber e = DualNumber::eps();
    {
        ExactMatrix<DualNumber> A(1, 1, {DualNumber(1)});
        auto r = dual_solve(A, {e});
        REQUIRE(r.status == St::Solved);
        CHECK(r.particular[0] == e);
        CHECK(r.kernel.empty());
    }
    {
        ExactMatrix<DualNumber> A(1, 1, {e});
        CHECK(dual_solve(A, {DualNumber(1)}).status == St::Inconsistent);
    }
    {
        // eps x = eps is solvable, but not by unit pivots
        ExactMatrix<DualNumber> A(1, 1, {e});
        auto r = dual_solve(A, {e});
        CHECK(r.status == St::Obstructed);
        CHECK(!r.obstruction.empty());
    }
}

TEST_CASE("dual elimination mod eps agrees with rational elimination")
{
    std::mt19937_64 g(16);
    int solved = 0;
    for (int k = 0; k < 40; ++k) {
        std::size_t r = 1 + g() % 5, c = 1 + g() % 5;
        QMatrix A0 = rnd_matrix(g, r, c, 2), A1 = rnd_matrix(g, r, c, 2);
        // consistent right-hand side from a known solution
        std::vector<Rational> x0(c), x1(c);
        for (auto& v : x0) v = rnd_q(g);
        for (auto& v : x1) v = rnd_q(g);
        ExactMatrix<DualNumber> A(r, c);
        std::vector<DualNumber> xs(c), b(r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) A(i, j) = DualNumber(A0(i, j), A1(i, j));
        for (std::size_t j = 0; j < c; ++j) xs[j] = DualNumber(x0[j], x1[j]);
        b = A.apply(xs);
        auto res = dual_solve(A, b);
        if (res.status != DualSolveResult::Status::Solved) continue;
        ++solved;
        CHECK(res.free_columns.size() == c - mat_rank(A0));
        auto Ax = A.apply(res.particular);
        CHECK(Ax == b);
        std::vector<Rational> p0, b0;
        for (const auto& d : res.particular) p0.push_back(d.a);
        for (const auto& d : b) b0.push_back(d.a);
        CHECK(A0.apply(p0) == b0);
        for (const auto& kv : res.kernel) {
            auto z = A.apply(kv);
            CHECK(std::all_of(z.begin(), z.end(), [](const DualNumber& d) { return is_zero(d); }));
        }
    }
    CHECK(solved > 20);
}

TEST_CASE("squarefree")
{
    CHECK(!squarefree(zpoly({0, 0, 1})));
    CHECK(squarefree(UniPoly<Rational>(std::vector<Rational>{Rational(1), make_rational(-4, 3), Rational(0), Rational(1)})));
    CHECK(!squarefree(zpoly({-1, 1}) * zpoly({-1, 1}) * zpoly({2, 1})));
    CHECK_THROWS(squarefree(UniPoly<Rational>()));
}
