#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellpoisson/brackets.hpp"
#include "ellpoisson/epoly.hpp"
#include "ellpoisson/errors.hpp"
#include "ellpoisson/report.hpp"

namespace ellpoisson
{

// Square matrix of single-variable functions, each a degree-1 EPoly in the
// e-basis of the extended function space.
class FMatrix
{
public:
    explicit FMatrix(std::size_t size);
    FMatrix(std::initializer_list<std::initializer_list<EPoly>> rows);

    std::size_t size() const { return size_; }
    // 1-based access, matching the usual (alpha, beta) labelling.
    const EPoly &at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, EPoly value);

private:
    std::size_t size_;
    std::vector<EPoly> entries_;
};

// Pointwise product e_alpha(z) e_beta(z), expanded in the e-basis.
EPoly fmul(int alpha, int beta);
// Bilinear extension to degree-1 EPolys.
EPoly fmul(const EPoly &f, const EPoly &g);
// Pointwise division by wp(z): e_{2a} -> e_{2a-2}, e_{2a+3} -> e_{2a+1}.
EPoly fdiv_wp(const EPoly &f);
// Pointwise multiplication by wp(z).
EPoly fmul_wp(const EPoly &f);

enum class MatrixKind { g, g1, g2m };

// The size n/2 matrices behind the even-n Casimir pair; n even, n >= 4.
FMatrix build_matrix(MatrixKind kind, int n);

// Determinant in the symmetric algebra (entries multiply as EPolys).
EPoly sym_det(const FMatrix &m);

struct CasimirSet
{
    enum class Kind { even_pair, odd_single };

    int n = 0;
    Kind kind = Kind::even_pair;
    std::vector<EPoly> elements;
    // "C0", "C1" for the even pair, "C" for odd n.
    std::vector<std::string> names;
};

// "n=<n>" followed by one "<name> = <canonical form>" line per element.
std::string render_casimir_text(const CasimirSet &cs);

CasimirSet casimir_even(int n);
CasimirSet casimir_odd(int n);
// Even or odd construction according to the parity of n (n >= 3).
CasimirSet casimirs(int n);

// Casimirs of lambda1*{,}_1 + lambda2*{,}_2 + lambda3*{,}_3 for lambda1 != 0,
// via g2 -> lambda2/lambda1, g3 -> lambda3/lambda1.
CasimirSet casimirs_for_pencil(int n, const Rational &l1, const Rational &l2, const Rational &l3);

// {C, e_gamma} == 0 for every element and every gamma in F_n under `spec`
// (default: elliptic bracket, formal g2 and g3, n fixed to cs.n).
Report verify_central(const CasimirSet &cs);
Report verify_central(const CasimirSet &cs, const BracketSpec &spec);

// f_{ab} f_{a'b'} - f_{ab'} f_{a'b} == 0 under fmul for every index quadruple.
Report rank1_identity_check(const FMatrix &m);

// Lenard pencil: substitute (g2 + t*s2, g3 + t*s3) into the Casimirs, collect
// the coefficients of t, and check pairwise involution under
// B_A = {,}_1 + g2{,}_2 + g3{,}_3 and B_B = s2{,}_2 + s3{,}_3.
struct InvolutionFamily
{
    int n = 0;
    // Each member tagged "<name>[t^k]".
    std::vector<std::string> labels;
    std::vector<EPoly> members;
};

InvolutionFamily involution_members(int n);
// Involution of every pair of members under B_A and B_B.
Report involution_check(const InvolutionFamily &family);
Report involution_family(int n);
// Pairwise involution under each basis bracket separately (diagnostic only).
Report involution_per_basis(int n);

} // namespace ellpoisson
