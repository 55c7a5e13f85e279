#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ellpoisson/brackets.hpp"
#include "ellpoisson/elliptic.hpp"

using namespace ellpoisson;

namespace
{

constexpr double pi = std::numbers::pi;

EPoly e(int a)
{
    return EPoly::gen(a);
}

double rel(cplx a, cplx b)
{
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Sum over the symmetric parallelogram |j|, |k| <= N of f(j*w1 + k*w2), origin excluded.
template <typename F>
cplx lattice_sum(cplx w1, cplx w2, int N, F f)
{
    cplx s = 0.0;
    for (int j = -N; j <= N; ++j) {
        for (int k = -N; k <= N; ++k) {
            if (j != 0 || k != 0) {
                s += f(static_cast<double>(j) * w1 + static_cast<double>(k) * w2);
            }
        }
    }
    return s;
}

// Truncation error of these sums behaves like a/N^2 + b/N^3 + ...; two
// Richardson steps over N, 2N, 4N remove both leading terms.
template <typename F>
cplx extrapolated_sum(cplx w1, cplx w2, F f)
{
    const cplx a = lattice_sum(w1, w2, 100, f);
    const cplx b = lattice_sum(w1, w2, 200, f);
    const cplx c = lattice_sum(w1, w2, 400, f);
    const cplx r1 = (4.0 * b - a) / 3.0;
    const cplx r2 = (4.0 * c - b) / 3.0;
    return (8.0 * r2 - r1) / 7.0;
}

cplx direct_g2(cplx w1, cplx w2)
{
    return 60.0 * extrapolated_sum(w1, w2, [](cplx w) { return 1.0 / (w * w * w * w); });
}

cplx direct_g3(cplx w1, cplx w2)
{
    return 140.0 * lattice_sum(w1, w2, 400, [](cplx w) { return 1.0 / std::pow(w, 6); });
}

cplx direct_wp(cplx w1, cplx w2, cplx z)
{
    return 1.0 / (z * z)
           + extrapolated_sum(w1, w2, [z](cplx w) { return 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w); });
}

Lattice square()
{
    return lattice_from_tau(cplx(0.0, 1.0));
}

Lattice skew()
{
    return lattice_from_tau(cplx(0.3, 1.1));
}

} // namespace

TEST_CASE("parse and format complex numbers", "[elliptic]")
{
    CHECK(parse_complex("0.3+1.1i") == cplx(0.3, 1.1));
    CHECK(parse_complex("i") == cplx(0.0, 1.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("2") == cplx(2.0, 0.0));
    CHECK(parse_complex("1e-3-2.5i") == cplx(1e-3, -2.5));
    CHECK(parse_complex("0.5i") == cplx(0.0, 0.5));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+2j"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
    CHECK(format_complex(cplx(0.3, 1.1)) == "0.3+1.1i");
    CHECK(parse_complex(format_complex(cplx(-0.25, -3.0))) == cplx(-0.25, -3.0));
}

TEST_CASE("lattice construction rejects bad input", "[elliptic]")
{
    CHECK_THROWS_AS(lattice_init(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(lattice_init(1.0, cplx(0.0, -1.0)), std::invalid_argument);
    CHECK_THROWS_AS(lattice_init(0.0, cplx(0.0, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(lattice_init(1.0, cplx(0.0, 1.0), 9), std::invalid_argument);
    CHECK_NOTHROW(lattice_init(1.0, cplx(0.0, 1.0), 10));
}

TEST_CASE("invariants agree with direct lattice sums", "[elliptic][oracle]")
{
    for (const cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.1), std::polar(1.0, pi / 3)}) {
        const Lattice lat = lattice_from_tau(tau);
        INFO("tau = " << format_complex(tau));
        CHECK(std::abs(lat.g2() - direct_g2(1.0, tau)) < 1e-8 * std::max(1.0, std::abs(lat.g2())));
        CHECK(std::abs(lat.g3() - direct_g3(1.0, tau)) < 1e-8 * std::max(1.0, std::abs(lat.g3())));
    }
}

TEST_CASE("symmetric lattices", "[elliptic]")
{
    CHECK(std::abs(square().g3()) < 1e-9);
    CHECK(std::abs(lattice_from_tau(std::polar(1.0, pi / 3)).g2()) < 1e-9);
    // Both invariants are real for a rectangular lattice.
    const Lattice rect = lattice_from_tau(cplx(0.0, 1.7));
    CHECK(std::abs(rect.g2().imag()) < 1e-9 * std::abs(rect.g2()));
    CHECK(std::abs(rect.g3().imag()) < 1e-9 * std::abs(rect.g3()));
}

TEST_CASE("invariants depend only on the lattice", "[elliptic][property]")
{
    const cplx tau(0.3, 1.1);
    const Lattice base = lattice_from_tau(tau);
    // Same lattice, different bases.
    for (const auto &[w1, w2] : {std::pair{cplx(1.0), tau + 3.0}, {tau, tau - 1.0}, {cplx(1.0) + 2.0 * tau, tau}}) {
        const cplx ratio = w2 / w1;
        const Lattice other = ratio.imag() > 0 ? lattice_init(w1, w2) : lattice_init(w2, w1);
        CHECK(rel(other.g2(), base.g2()) < 1e-10);
        CHECK(rel(other.g3(), base.g3()) < 1e-10);
        CHECK(std::abs(other.r_min() - base.r_min()) < 1e-12);
    }
    // Scaling the lattice by s scales g2 by s^-4 and g3 by s^-6.
    const cplx s(0.7, 0.4);
    const Lattice scaled = lattice_init(s, s * tau);
    CHECK(rel(scaled.g2() * std::pow(s, 4), base.g2()) < 1e-10);
    CHECK(rel(scaled.g3() * std::pow(s, 6), base.g3()) < 1e-10);
}

TEST_CASE("Laurent coefficients", "[elliptic]")
{
    for (const Lattice &lat : {square(), skew()}) {
        const auto &c = lat.laurent();
        REQUIRE(lat.series_order() == 40);
        CHECK(c[0] == 0.0);
        CHECK(c[1] == 0.0);
        CHECK(std::abs(c[2] - lat.g2() / 20.0) <= 1e-15 * std::abs(lat.g2()));
        CHECK(std::abs(c[3] - lat.g3() / 28.0) <= 1e-15 * (1.0 + std::abs(lat.g3())));
        // c4 = c2^2 / 3 from the recursion.
        CHECK(rel(c[4], c[2] * c[2] / 3.0) < 1e-14);
        const cplx z(0.01, 0.02);
        const auto w = weier_eval(lat, z);
        const cplx series = 1.0 / (z * z) + lat.g2() / 20.0 * z * z + lat.g3() / 28.0 * std::pow(z, 4);
        CHECK(std::abs(w.wp - series) < 1e-8);
    }
}

TEST_CASE("wp agrees with the direct lattice sum", "[elliptic][oracle]")
{
    const cplx tau(0.3, 1.1);
    const Lattice lat = lattice_from_tau(tau);
    for (const cplx z : {cplx(0.21, 0.13), cplx(-0.4, 0.45), cplx(0.49, -0.02), cplx(1.3, 2.2)}) {
        INFO("z = " << format_complex(z));
        CHECK(rel(weier_eval(lat, z).wp, direct_wp(1.0, tau, z)) < 1e-8);
    }
}

TEST_CASE("pointwise Weierstrass identities", "[elliptic]")
{
    const Lattice lat = skew();
    const cplx z(0.37, -0.21);
    const auto w = weier_eval(lat, z);
    CHECK(rel(w.wp1 * w.wp1, 4.0 * w.wp * w.wp * w.wp - lat.g2() * w.wp - lat.g3()) < 1e-12);

    const auto m = weier_eval(lat, -z);
    CHECK(rel(m.zeta, -w.zeta) < 1e-13);
    CHECK(rel(m.wp, w.wp) < 1e-13);
    CHECK(rel(m.wp1, -w.wp1) < 1e-13);

    const double h = 1e-5;
    const cplx dzeta = (weier_eval(lat, z + h).zeta - weier_eval(lat, z - h).zeta) / (2.0 * h);
    CHECK(rel(dzeta, -w.wp) < 1e-6);
    const cplx dwp = (weier_eval(lat, z + h).wp - weier_eval(lat, z - h).wp) / (2.0 * h);
    CHECK(rel(dwp, w.wp1) < 1e-6);

    const auto shifted = weier_eval(lat, z + lat.omega1() - 2.0 * lat.omega2());
    CHECK(rel(shifted.wp, w.wp) < 1e-12);
    CHECK(rel(shifted.zeta, w.zeta + lat.eta1() - 2.0 * lat.eta2()) < 1e-12);

    // Legendre relation for the input periods.
    CHECK(std::abs(lat.eta1() * lat.omega2() - lat.eta2() * lat.omega1() - cplx(0.0, 2.0 * pi)) < 1e-12);
}

TEST_CASE("pole proximity", "[elliptic]")
{
    const Lattice lat = square();
    CHECK_THROWS_AS(weier_eval(lat, cplx(1e-12, 0.0)), pole_proximity_error);
    CHECK_THROWS_AS(weier_eval(lat, cplx(1.0 + 1e-12, 1.0)), pole_proximity_error);
    CHECK_NOTHROW(weier_eval(lat, cplx(1e-3, 0.0)));
    CHECK_THROWS_AS(weier_eval(lat, cplx(1e-3, 0.0), 1e-2), pole_proximity_error);
    CHECK(lat.distance_to_lattice(cplx(2.1, -0.9)) == Catch::Approx(std::hypot(0.1, 0.1)));
}

TEST_CASE("basis functions", "[elliptic]")
{
    const Lattice lat = skew();
    const cplx z(0.23, 0.31);
    const auto w = weier_eval(lat, z);
    CHECK(e_func(lat, 0, z) == 1.0);
    CHECK(rel(e_func(lat, 4, z), w.wp * w.wp) < 1e-14);
    CHECK(rel(e_func(lat, 5, z), -0.5 * w.wp * w.wp1) < 1e-14);
    CHECK(rel(e_func(lat, -2, z), 1.0 / w.wp) < 1e-14);
    CHECK(rel(e_func(lat, 1, z), -0.5 * w.wp1 / w.wp) < 1e-14);
    const cplx e3 = e_func(lat, 3, z);
    CHECK(rel(e3 * e3, e_func(lat, 6, z) - 0.25 * lat.g2() * e_func(lat, 2, z) - 0.25 * lat.g3()) < 1e-12);

    const double r = 1e-3 * lat.r_min();
    for (int a = 2; a <= 9; ++a) {
        const cplx zz = std::polar(r, 0.7);
        CHECK(std::abs(std::pow(zz, a) * e_func(lat, a, zz) - 1.0) < 1e-3);
    }

    const double h = 1e-5;
    for (int a = -3; a <= 8; ++a) {
        const cplx num = (e_func(lat, a, z + h) - e_func(lat, a, z - h)) / (2.0 * h);
        CHECK(rel(e_derivative(a, w, lat.g2()), num) < 1e-6);
    }
}

TEST_CASE("functional bracket closed forms", "[elliptic]")
{
    const Lattice lat = skew();
    const cplx x(0.21, 0.33), y(-0.27, 0.08);
    const cplx n = 5.0;
    const auto self = func_bracket_eval(lat, n, 4, 4, x, y);
    CHECK(std::abs(self.value) < 1e-14 * self.scale);

    const auto wx = weier_eval(lat, x), wy = weier_eval(lat, y);
    const cplx A = wx.wp, B = wy.wp, A1 = wx.wp1, B1 = wy.wp1;
    const cplx closed = (n - 3.0) * (A * A * B + A * B * B) + (1.0 - n / 4.0) * A1 * B1
                        + 0.25 * lat.g2() * (A + B) + n / 4.0 * lat.g3();
    CHECK(rel(func_bracket(lat, n, 2, 3, x, y), closed) < 1e-10);

    // Diagonal limit for (e_0, e_2) is 2(n-2) e_3(x).
    CHECK(rel(func_bracket(lat, n, 0, 2, x, x), 2.0 * (n - 2.0) * e_func(lat, 3, x)) < 1e-12);
    CHECK_THROWS_AS(func_bracket(lat, n, 0, 2, x, x + 1e-3), near_singular_error);
    CHECK_THROWS_AS(func_bracket(lat, n, 0, 2, x, x + lat.omega2() + 1e-3), near_singular_error);
}

TEST_CASE("functional bracket symmetries", "[elliptic][property]")
{
    const Lattice lat = skew();
    SamplePlan plan;
    plan.seed = 31;
    PointSampler sampler(lat, plan);
    const cplx n = 7.0;
    for (int s = 0; s < 10; ++s) {
        const auto pts = sampler.points(2);
        for (int f = 0; f <= 6; ++f) {
            for (int g = 0; g <= 6; ++g) {
                const auto v = func_bracket_eval(lat, n, f, g, pts[0], pts[1]);
                const cplx swapped = func_bracket(lat, n, f, g, pts[1], pts[0]);
                REQUIRE(std::abs(v.value - swapped) < 1e-12 * v.scale);
                REQUIRE(std::abs(v.value + func_bracket(lat, n, g, f, pts[0], pts[1])) < 1e-12 * v.scale);
            }
        }
    }
}

TEST_CASE("diagonal value is the limit of the off-diagonal bracket", "[elliptic][property]")
{
    const Lattice lat = skew();
    const cplx x(0.17, -0.29);
    const cplx n = 5.0;
    for (const auto &[f, g] : {std::pair{0, 2}, {2, 3}, {3, 5}, {0, 7}}) {
        const auto diag = func_bracket_eval(lat, n, f, g, x, x);
        // Averaging the two sides cancels the first-order term.
        const auto err = [&](double eps) {
            const cplx avg = 0.5 * (func_bracket(lat, n, f, g, x, x + eps, 1e-6)
                                    + func_bracket(lat, n, f, g, x, x - eps, 1e-6));
            return std::abs(avg - diag.value) / diag.scale;
        };
        const double err3 = err(1e-3), err4 = err(1e-4);
        INFO("(f, g) = (" << f << ", " << g << ")");
        CHECK(err4 < err3 / 20.0);
        CHECK(err4 < 1e-6);
    }
}

TEST_CASE("zeta identities", "[elliptic]")
{
    const Lattice lat = skew();
    const cplx x(0.3, 0.1), y(-0.1, 0.4);
    const auto r = zeta_identity_residual(lat, x, y);
    const auto s = zeta_identity_residual(lat, y, x);
    CHECK(r.rel1 < 1e-12);
    CHECK(r.rel2 < 1e-12);
    CHECK(s.rel1 == Catch::Approx(r.rel1).margin(1e-14));
    CHECK(s.rel2 == Catch::Approx(r.rel2).margin(1e-14));
    for (const Lattice &l : {square(), skew()}) {
        SamplePlan plan;
        plan.tolerance = 1e-8;
        CHECK(zeta_identity_sweep(l, plan).passed());
    }
}

TEST_CASE("symmetrized evaluation", "[elliptic]")
{
    const Lattice lat = skew();
    const auto params = lattice_params(lat, 4.0);
    const cplx x(0.21, 0.33), y(-0.27, 0.08);
    CHECK(rel(sym_eval(lat, e(0) * e(0), params, {x, y}).value, 2.0) < 1e-15);
    const cplx px = weier_eval(lat, x).wp, py = weier_eval(lat, y).wp;
    const auto v = sym_eval(lat, e(0) * e(4) - e(2) * e(2), params, {x, y});
    CHECK(rel(v.value, (px - py) * (px - py)) < 1e-12);
    CHECK(v.scale >= std::abs(v.value));
    CHECK_THROWS_AS(sym_eval(lat, e(2), params, {x, y}), std::invalid_argument);
    CHECK_THROWS_AS(sym_eval(lat, e(2) * e(3) + e(4), params, {x, y}), std::invalid_argument);
    // Coefficients are evaluated at the numeric parameters.
    const EPoly scaled = ParamPoly::symbol(Symbol::n) * ParamPoly::symbol(Symbol::g2) * (e(0) * e(0));
    CHECK(rel(sym_eval(lat, scaled, params, {x, y}).value, 8.0 * lat.g2()) < 1e-14);
}

TEST_CASE("bracket against symmetrized evaluation", "[elliptic]")
{
    const Lattice lat = skew();
    const cplx x(0.21, 0.33), y(-0.27, 0.08);
    const auto params = lattice_params(lat, 5.0);
    const BracketSpec spec = BracketSpec::elliptic().with_n(Rational(5));
    for (const auto &[a, b] : {std::pair{2, 3}, {0, 5}, {3, 4}, {4, 7}}) {
        const auto se = sym_eval(lat, bracket_poly(e(a), e(b), spec), params, {x, y});
        const auto fb = func_bracket_eval(lat, 5.0, a, b, x, y);
        CHECK(std::abs(se.value - fb.value) / std::max(se.scale, fb.scale) < 1e-10);
    }
}

TEST_CASE("sample plans and samplers", "[elliptic]")
{
    SamplePlan bad;
    bad.exclusion_fraction = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SamplePlan{};
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SamplePlan{};
    bad.count = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    const Lattice lat = skew();
    SamplePlan plan;
    plan.seed = 5;
    PointSampler a(lat, plan), b(lat, plan);
    for (int i = 0; i < 20; ++i) {
        const auto pa = a.points(3), pb = b.points(3);
        REQUIRE(pa == pb);
        for (std::size_t j = 0; j < pa.size(); ++j) {
            REQUIRE(lat.distance_to_lattice(pa[j]) >= a.exclusion_radius());
            for (std::size_t k = j + 1; k < pa.size(); ++k) {
                REQUIRE(lat.distance_to_lattice(pa[j] - pa[k]) >= a.exclusion_radius());
            }
        }
    }
}

TEST_CASE("functional realization sweeps", "[elliptic]")
{
    SamplePlan plan;
    plan.tolerance = 1e-6;
    for (const Lattice &lat : {square(), skew()}) {
        for (const int n : {2, 3, 5, 8}) {
            const Report r = verify_functional(lat, Rational(n), IndexSet::f_n(std::min(8, n)), plan);
            INFO("n = " << n);
            CHECK(r.passed());
            CHECK(r.notes().at("diagonal_samples") == 5);
        }
    }
    const Lattice lat = square();
    // n = 2: the (e_0, e_2) bracket vanishes identically.
    const cplx x(0.2, 0.1), y(-0.3, 0.25);
    CHECK(std::abs(func_bracket(lat, 2.0, 0, 2, x, y)) < 1e-12);
    CHECK_THROWS_AS(verify_functional(lat, Rational(3), IndexSet::window(-1, 3), plan), std::invalid_argument);
}

TEST_CASE("Weierstrass self-test", "[elliptic]")
{
    SamplePlan plan;
    plan.tolerance = 1e-9;
    for (const cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.1), cplx(0.0, 3.0), cplx(0.5, 0.6)}) {
        plan.count = 200;
        const Report r = weierstrass_self_test(lattice_from_tau(tau), plan);
        INFO("tau = " << format_complex(tau));
        CHECK(r.passed());
    }
}
