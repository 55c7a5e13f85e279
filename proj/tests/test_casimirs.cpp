#include <catch_amalgamated.hpp>

#include <random>

#include "ellpoisson/casimirs.hpp"

using namespace ellpoisson;

namespace
{

EPoly e(int a)
{
    return EPoly::gen(a);
}

EPoly quarter(Symbol s)
{
    return EPoly(ParamPoly(make_rational(1, 4)) * ParamPoly::symbol(s));
}

const EPoly g2q = quarter(Symbol::g2);
const EPoly g3q = quarter(Symbol::g3);

// Cofactor expansion along the first row.
EPoly cofactor_det(const std::vector<std::vector<EPoly>> &m)
{
    if (m.size() == 1) {
        return m[0][0];
    }
    EPoly r;
    for (std::size_t j = 0; j < m.size(); ++j) {
        std::vector<std::vector<EPoly>> minor;
        for (std::size_t i = 1; i < m.size(); ++i) {
            std::vector<EPoly> row;
            for (std::size_t k = 0; k < m.size(); ++k) {
                if (k != j) {
                    row.push_back(m[i][k]);
                }
            }
            minor.push_back(std::move(row));
        }
        const EPoly t = m[0][j] * cofactor_det(minor);
        r += (j % 2 == 0) ? t : -t;
    }
    return r;
}

std::vector<std::vector<EPoly>> rows_of(const FMatrix &m)
{
    std::vector<std::vector<EPoly>> r(m.size(), std::vector<EPoly>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            r[i][j] = m.at(i + 1, j + 1);
        }
    }
    return r;
}

BracketSpec elliptic_at(int n)
{
    return BracketSpec::elliptic().with_n(Rational(n));
}

} // namespace

TEST_CASE("pointwise products of basis functions", "[casimirs]")
{
    CHECK(fmul(2, 2) == e(4));
    CHECK(fmul(2, 3) == e(5));
    CHECK(fmul(0, 7) == e(7));
    CHECK(fmul(-2, 2) == e(0));
    CHECK(fmul(3, 3) == e(6) - g2q * e(2) - g3q * e(0));
    CHECK(fmul(5, 3) == e(8) - g2q * e(4) - g3q * e(2));
    CHECK(fmul(e(2) + e(3), e(0)) == e(2) + e(3));
    CHECK(fdiv_wp(e(6) - g2q * e(2) - g3q * e(0)) == e(4) - g2q * e(0) - g3q * e(-2));
    CHECK(fdiv_wp(e(5)) == e(3));
    CHECK(fmul_wp(e(-2)) == e(0));
    CHECK(fmul_wp(e(3)) == e(5));
    CHECK_THROWS_AS(fmul(e(2) * e(2), e(0)), std::invalid_argument);
    CHECK_THROWS_AS(fdiv_wp(EPoly(1)), std::invalid_argument);
}

TEST_CASE("pointwise products commute and associate", "[casimirs][property]")
{
    for (int a = -3; a <= 7; ++a) {
        for (int b = -3; b <= 7; ++b) {
            REQUIRE(fmul(a, b) == fmul(b, a));
            REQUIRE(fdiv_wp(fmul_wp(e(a))) == e(a));
            for (int c = -1; c <= 5; ++c) {
                REQUIRE(fmul(fmul(a, b), e(c)) == fmul(e(a), fmul(b, c)));
            }
        }
    }
}

TEST_CASE("function matrices", "[casimirs]")
{
    CHECK_THROWS_AS(FMatrix(0), std::invalid_argument);
    CHECK_THROWS_AS((FMatrix{{e(0), e(2)}, {e(2)}}), std::invalid_argument);
    const FMatrix m{{e(0), e(2)}, {e(2), e(4)}};
    CHECK_THROWS_AS(m.at(3, 1), std::out_of_range);
    CHECK_THROWS_AS(m.at(0, 1), std::out_of_range);

    const FMatrix g4 = build_matrix(MatrixKind::g, 4);
    CHECK(g4.at(1, 1) == e(0));
    CHECK(g4.at(2, 2) == e(4));
    const FMatrix g6 = build_matrix(MatrixKind::g, 6);
    CHECK(g6.at(3, 3) == e(6) - g2q * e(2) - g3q * e(0));
    CHECK(g6.at(2, 3) == e(5));
    const FMatrix g1 = build_matrix(MatrixKind::g1, 4);
    CHECK(g1.at(1, 1) == e(2));
    CHECK(g1.at(1, 2) == e(3));
    CHECK(g1.at(2, 2) == e(4) - g2q * e(0) - g3q * e(-2));
    const FMatrix g2m = build_matrix(MatrixKind::g2m, 4);
    CHECK(g2m.at(1, 1) == e(-2));
    CHECK(g2m.at(1, 2) == e(0));
    CHECK(g2m.at(2, 2) == e(2));
    CHECK_THROWS_AS(build_matrix(MatrixKind::g, 5), std::invalid_argument);
    CHECK_THROWS_AS(build_matrix(MatrixKind::g1, 2), std::invalid_argument);
}

TEST_CASE("symmetric-algebra determinants", "[casimirs]")
{
    CHECK(sym_det(FMatrix{{e(0)}}) == e(0));
    CHECK(sym_det(build_matrix(MatrixKind::g, 4)) == e(0) * e(4) - e(2) * e(2));

    std::mt19937 rng(8);
    std::uniform_int_distribution<int> idx(-2, 6), coef(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t size = 1 + trial % 4;
        FMatrix m(size);
        for (std::size_t i = 1; i <= size; ++i) {
            for (std::size_t j = 1; j <= size; ++j) {
                m.set(i, j, EPoly(coef(rng)) * e(idx(rng)) + EPoly(coef(rng)) * e(idx(rng)));
            }
        }
        REQUIRE(sym_det(m) == cofactor_det(rows_of(m)));
    }
}

TEST_CASE("rank-one identity", "[casimirs]")
{
    CHECK(rank1_identity_check(build_matrix(MatrixKind::g, 6)).passed());
    CHECK(rank1_identity_check(build_matrix(MatrixKind::g2m, 4)).passed());
    for (const int n : {4, 6, 8}) {
        CHECK(rank1_identity_check(build_matrix(MatrixKind::g, n)).passed());
        CHECK(rank1_identity_check(build_matrix(MatrixKind::g1, n)).passed());
        CHECK(rank1_identity_check(build_matrix(MatrixKind::g2m, n)).passed());
    }
    const Report bad = rank1_identity_check(FMatrix{{e(0), e(2)}, {e(2), e(2)}});
    CHECK_FALSE(bad.passed());
}

TEST_CASE("even Casimirs for n = 4", "[casimirs]")
{
    const CasimirSet cs = casimir_even(4);
    REQUIRE(cs.elements.size() == 2);
    CHECK(cs.names == std::vector<std::string>{"C0", "C1"});
    CHECK(cs.elements[0] == e(0) * e(4) - e(2) * e(2));
    const EPoly c1 = e(2) * e(4) - e(3) * e(3) - g2q * e(0) * e(2) - g3q * e(0) * e(0);
    CHECK(cs.elements[1] == c1);

    // Same element from the determinant display, expanded by cofactors.
    const EPoly display = cofactor_det({{e(2), e(3)}, {e(3), e(4) - g2q * e(0) - g3q * e(-2)}})
                          + g3q * cofactor_det({{e(-2), e(0)}, {e(0), e(2)}});
    CHECK(display == c1);

    CHECK(render_casimir_text(cs)
          == "n=4\nC0 = (1)*e[0]*e[4] + (-1)*e[2]*e[2]\n"
             "C1 = (-1/4*g3)*e[0]*e[0] + (-1/4*g2)*e[0]*e[2] + (1)*e[2]*e[4] + (-1)*e[3]*e[3]\n");
}

TEST_CASE("flipped g3 sign is not central", "[casimirs]")
{
    // Short form with +g3/4 e_0^2: it fails to commute with e_2.
    const EPoly flipped = e(2) * e(4) - e(3) * e(3) - g2q * e(0) * e(2) + g3q * e(0) * e(0);
    const EPoly br = bracket_poly(flipped, e(2), elliptic_at(4));
    CHECK(br == EPoly(2) * ParamPoly::symbol(Symbol::g3) * (e(0) * e(0) * e(3)));
    CasimirSet cs;
    cs.n = 4;
    cs.elements = {flipped};
    cs.names = {"C1"};
    CHECK_FALSE(verify_central(cs).passed());
}

TEST_CASE("even Casimirs for n = 6", "[casimirs]")
{
    const CasimirSet cs = casimir_even(6);
    const EPoly c0 = cofactor_det({{e(0), e(2), e(3)}, {e(2), e(4), e(5)}, {e(3), e(5), e(6) - g2q * e(2) - g3q * e(0)}});
    const EPoly c1 = cofactor_det({{e(2), e(3), e(4)}, {e(3), e(4) - g2q * e(0), e(5)}, {e(4), e(5), e(6)}})
                     + g3q * cofactor_det({{EPoly(), e(0), e(2)}, {e(0), e(2), e(4)}, {e(2), e(4), e(6)}});
    CHECK(cs.elements[0] == c0);
    CHECK(cs.elements[1] == c1);
    for (const auto &c : cs.elements) {
        CHECK(c.is_homogeneous_degree(3));
        CHECK_FALSE(support(c).contains(-2));
        CHECK_FALSE(support(c).contains(1));
    }
}

TEST_CASE("odd Casimir for n = 3", "[casimirs]")
{
    const CasimirSet cs = casimir_odd(3);
    REQUIRE(cs.elements.size() == 1);
    CHECK(cs.names == std::vector<std::string>{"C"});
    const EPoly expected = e(2) * e(2) * e(2) - e(0) * e(3) * e(3) - g2q * e(0) * e(0) * e(2)
                           - g3q * e(0) * e(0) * e(0);
    CHECK(cs.elements[0] == expected);

    const CasimirSet pair = casimir_even(4);
    CHECK(pair.elements[0].coefficient_of(4, 1) == e(0));
    CHECK(pair.elements[1].coefficient_of(4, 1) == e(2));
}

TEST_CASE("Casimir shapes", "[casimirs]")
{
    for (int n = 3; n <= 9; ++n) {
        const CasimirSet cs = casimirs(n);
        INFO("n = " << n);
        const int degree = (n % 2 == 0) ? n / 2 : n;
        CHECK(cs.elements.size() == ((n % 2 == 0) ? 2u : 1u));
        for (const auto &c : cs.elements) {
            CHECK(c.is_homogeneous_degree(degree));
            for (const int a : support(c)) {
                CHECK(IndexSet::f_n(n).contains(a));
            }
        }
    }
    CHECK_THROWS_AS(casimir_even(3), std::invalid_argument);
    CHECK_THROWS_AS(casimir_even(2), std::invalid_argument);
    CHECK_THROWS_AS(casimir_odd(4), std::invalid_argument);
    CHECK_THROWS_AS(casimir_odd(1), std::invalid_argument);
}

TEST_CASE("Casimirs are central", "[casimirs]")
{
    for (int n = 3; n <= 8; ++n) {
        INFO("n = " << n);
        CHECK(verify_central(casimirs(n)).passed());
    }
    // Centrality depends on n being fixed to the matching value.
    CHECK_FALSE(verify_central(casimir_even(4), elliptic_at(5)).passed());
}

TEST_CASE("Casimirs of a general pencil", "[casimirs]")
{
    const Rational l1(2), l2(3), l3(-5);
    const CasimirSet cs = casimirs_for_pencil(4, l1, l2, l3);
    const Assignment sub{{Symbol::g2, make_rational(3, 2)}, {Symbol::g3, make_rational(-5, 2)}};
    CHECK(cs.elements[1] == substitute_params(casimir_even(4).elements[1], sub));
    const BracketSpec spec = BracketSpec::custom(ParamPoly(l1), ParamPoly(l2), ParamPoly(l3)).with_n(Rational(4));
    CHECK(verify_central(cs, spec).passed());
    CHECK(verify_central(casimirs_for_pencil(5, l1, l2, l3), BracketSpec::custom(ParamPoly(l1), ParamPoly(l2), ParamPoly(l3)).with_n(Rational(5)))
              .passed());
    CHECK_THROWS_AS(casimirs_for_pencil(4, Rational(0), l2, l3), std::invalid_argument);
}

TEST_CASE("Lenard family", "[casimirs]")
{
    const InvolutionFamily fam = involution_members(4);
    const EPoly s2q = quarter(Symbol::s2), s3q = quarter(Symbol::s3);
    const auto find = [&](const std::string &label) {
        for (std::size_t i = 0; i < fam.labels.size(); ++i) {
            if (fam.labels[i] == label) {
                return fam.members[i];
            }
        }
        FAIL("missing member " << label);
        return EPoly();
    };
    CHECK(find("C0[t^0]") == e(0) * e(4) - e(2) * e(2));
    CHECK(find("C1[t^0]") == casimir_even(4).elements[1]);
    CHECK(find("C1[t^1]") == -(s2q * e(0) * e(2)) - s3q * e(0) * e(0));

    for (int n = 4; n <= 6; ++n) {
        INFO("n = " << n);
        CHECK(involution_family(n).passed());
    }
    CHECK_THROWS_AS(involution_family(2), std::invalid_argument);
}

TEST_CASE("per-basis involution is only a diagnostic", "[casimirs]")
{
    // The brackets of the pencil do not individually preserve the family.
    CHECK_FALSE(involution_per_basis(4).passed());
}
