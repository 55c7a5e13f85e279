#pragma once

#include <optional>
#include <string>

#include "ellpoisson/epoly.hpp"
#include "ellpoisson/report.hpp"

namespace ellpoisson
{

// The bracket c1*{,}_1 + c2*{,}_2 + c3*{,}_3, with n either formal or fixed.
struct BracketSpec
{
    ParamPoly c1;
    ParamPoly c2;
    ParamPoly c3;
    // When set, the symbol n is replaced by this value in every generator bracket.
    std::optional<Rational> n_value;

    static BracketSpec basis(int i);
    // {,}_1 + g2*{,}_2 + g3*{,}_3.
    static BracketSpec elliptic();
    static BracketSpec custom(ParamPoly l1, ParamPoly l2, ParamPoly l3);
    // lambda1*{,}_1 + lambda2*{,}_2 + lambda3*{,}_3 with formal lambdas.
    static BracketSpec formal_pencil();

    BracketSpec with_n(const Rational &n) const;
    std::string describe() const;
};

// The finite remainder S_k(e_a, e_b) - S_k(e_c, e_d) where
// S_k(e_a, e_b) = sum_{r >= 0} e_{a+kr} e_{b-kr}.
struct SDiffSpec
{
    int k;
    int a;
    int b;
    int c;
    int d;
};

// Throws std::invalid_argument unless k > 0, a + b == c + d and a == c (mod k).
EPoly s_diff(const SDiffSpec &spec);

// {e_alpha, e_beta}_i for i in {1, 2, 3}, with n formal.
EPoly bracket_basis(int i, int alpha, int beta);

// {e_alpha, e_beta} under spec.
EPoly bracket_generators(int alpha, int beta, const BracketSpec &spec);

// Biderivation extension: {P, Q} = sum_{a, b} dP/de_a * dQ/de_b * {e_a, e_b}.
EPoly bracket_poly(const EPoly &p, const EPoly &q, const BracketSpec &spec);

// {P,{Q,R}} + {Q,{R,P}} + {R,{P,Q}}.
EPoly jacobiator(const EPoly &p, const EPoly &q, const EPoly &r, const BracketSpec &spec);

// Jacobiator over every unordered generator triple (with repetition) of the window.
Report verify_jacobi_window(const IndexSet &window, const BracketSpec &spec);

// Every generator bracket within F_n stays within F_n; n must be >= 2 and is
// fixed in the bracket.
Report verify_closure(int n, const BracketSpec &spec);

} // namespace ellpoisson
