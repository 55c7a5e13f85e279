#pragma once

#include <vector>

#include "ellpoisson/casimirs.hpp"
#include "ellpoisson/elliptic.hpp"
#include "ellpoisson/epoly.hpp"
#include "ellpoisson/rational.hpp"
#include "ellpoisson/report.hpp"

namespace ellpoisson
{

// The leaf algebra on p points: coordinates u_1..u_p and nonzero psi_1..psi_p.
struct LeafConfig
{
    int p = 1;
    Rational n_value;
    Lattice lattice;

    // Throws std::invalid_argument unless p >= 1.
    void validate() const;
};

struct LeafSample
{
    std::vector<cplx> u;
    std::vector<cplx> psi;
};

// Generator brackets of the leaf algebra, with c = -1 off the diagonal and
// c = (n-2)/2 on it:
//   {u_a, u_b} = 0, {u_a, psi_b} = c(a,b) psi_b,
//   {psi_a, psi_b} = n (zeta(u_a-u_b) - zeta(u_a) + zeta(u_b)) psi_a psi_b.
// `flipped` negates c; it does not realize the elliptic bracket and is kept
// as a negative control.
enum class SignConvention { corrected, flipped };

const char *convention_name(SignConvention c);
// "corrected" or "flipped"; throws std::invalid_argument otherwise.
SignConvention convention_from_name(const std::string &name);

// Admissible samples: u from PointSampler::points, |psi| uniform in
// [0.5, 1.5] with a uniform phase.
class LeafSampler
{
public:
    LeafSampler(const Lattice &lat, int p, const SamplePlan &plan);
    LeafSample sample();

private:
    PointSampler points_;
    int p_;
};

// x_p(P): every generator e_a becomes the linear form sum_alpha e_a(u_alpha) psi_alpha
// and monomials become products of these forms.
Evaluated xp_eval(const LeafConfig &cfg, const EPoly &p, const NumericAssignment &params,
                  const LeafSample &s);

// {x_p(e_f), x_p(e_g)} by the Leibniz rule over the generator brackets.
Evaluated leaf_bracket_xp(const LeafConfig &cfg, int f_index, int g_index, const LeafSample &s,
                          SignConvention convention = SignConvention::corrected);

// leaf_bracket_xp(f, g) against x_p of the symbolic elliptic bracket {e_f, e_g}
// for every pair f < g of the (finite, non-negative) window.
Report leaf_homomorphism_check(const LeafConfig &cfg, const IndexSet &window,
                               const SamplePlan &plan,
                               SignConvention convention = SignConvention::corrected);

// |x_p(C)| < tolerance * scale for every element of cs. Requires 2p < cs.n.
Report kernel_check(const LeafConfig &cfg, const CasimirSet &cs, const SamplePlan &plan);

// sym_eval of C (homogeneous of degree p+1) at (z_1, z_1, z_2, ..., z_p).
Report diagonal_vanish_check(const LeafConfig &cfg, const EPoly &c, const SamplePlan &plan);

// Poisson matrix of (u_1..u_p, psi_1..psi_p) at s. Checks det = det(M)^2 with
// M_ab = {u_a, psi_b}, and |det M| against the closed form
// |(n/2)^{p-1} (n/2 - p) prod psi|.
Report nondegeneracy_check(const LeafConfig &cfg, const LeafSample &s);

// (n/2)^{p-1} (n/2 - p), the determinant of M with the psi factors removed.
Rational leaf_det_factor(int p, const Rational &n_value);

} // namespace ellpoisson
