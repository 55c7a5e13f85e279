#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ellpoisson/epoly.hpp"
#include "ellpoisson/errors.hpp"
#include "ellpoisson/rational.hpp"
#include "ellpoisson/report.hpp"

namespace ellpoisson
{

using cplx = std::complex<double>;

struct WeierValues
{
    cplx wp;
    cplx wp1;
    cplx zeta;
};

// Numeric data of the lattice Z*omega1 + Z*omega2.
//
// Evaluation works in a Lagrange-reduced basis (w1, w2): |w1| is the shortest
// nonzero lattice vector, and every argument is first moved to the Voronoi
// cell of the origin.
class Lattice
{
public:
    cplx omega1() const { return omega1_; }
    cplx omega2() const { return omega2_; }
    cplx g2() const { return g2_; }
    cplx g3() const { return g3_; }
    // Quasi-periods for the input periods: zeta(z + omega_i) = zeta(z) + eta_i.
    cplx eta1() const { return eta1_; }
    cplx eta2() const { return eta2_; }
    double r_min() const { return r_min_; }
    // laurent()[k] is the coefficient of z^{2k-2} in wp(z) - 1/z^2 (entries
    // 0 and 1 are zero).
    const std::vector<cplx> &laurent() const { return laurent_; }
    int series_order() const { return static_cast<int>(laurent_.size()) - 1; }

    // Distance from z to the nearest lattice point.
    double distance_to_lattice(cplx z) const;

    struct Reduced
    {
        cplx z;
        // Lattice translation removed from the original argument.
        long m1;
        long m2;
    };
    // z = reduced.z + m1*w1 + m2*w2 with reduced.z in the Voronoi cell of 0.
    Reduced reduce(cplx z) const;

    cplx reduced_w1() const { return w1_; }
    cplx reduced_w2() const { return w2_; }
    cplx reduced_eta1() const { return rho1_; }
    cplx reduced_eta2() const { return rho2_; }

private:
    friend Lattice lattice_init(cplx, cplx, int);
    friend WeierValues weier_eval(const Lattice &, cplx, double);

    cplx omega1_, omega2_;
    cplx w1_, w2_;
    cplx g2_, g3_;
    cplx eta1_, eta2_;
    cplx rho1_, rho2_;
    double r_min_ = 0.0;
    std::vector<cplx> laurent_;
    // Same coefficients carried in extended precision for evaluation.
    std::vector<std::complex<long double>> laurent_ext_;
};

// Throws std::invalid_argument for Im(omega2/omega1) <= 0 or series_order < 10,
// and integrity_error if the built-in self-test fails.
Lattice lattice_init(cplx omega1, cplx omega2, int series_order = 40);
// omega1 = 1, omega2 = tau.
Lattice lattice_from_tau(cplx tau, int series_order = 40);
// Parses "a+bi", "a-bi", "bi", "a", "i".
cplx parse_complex(const std::string &text);
std::string format_complex(cplx z);

// Throws pole_proximity_error when z is within min_distance of the lattice
// (default 1e-10 * r_min).
WeierValues weier_eval(const Lattice &lat, cplx z, double min_distance = -1.0);

// e_alpha from precomputed values: e_{2a} = wp^a, e_{2a+3} = -wp^a wp' / 2.
cplx e_value(int alpha, const WeierValues &w);
// d/dz e_alpha.
cplx e_derivative(int alpha, const WeierValues &w, cplx g2);
cplx e_func(const Lattice &lat, int alpha, cplx z);

// Value with the magnitude of the largest summand, used as the scale of a
// relative residual.
struct Evaluated
{
    cplx value;
    double scale;
};

// Two-point bracket {e_f, e_g}(x, y). For x == y the removable singularity is
// replaced by its limit (n - 2) (f'g - fg')(x). Throws near_singular_error when
// x != y and x - y lies within exclusion_radius (default 0.05*r_min) of the lattice.
Evaluated func_bracket_eval(const Lattice &lat, cplx n_value, int f_index, int g_index, cplx x,
                            cplx y, double exclusion_radius = -1.0);
cplx func_bracket(const Lattice &lat, cplx n_value, int f_index, int g_index, cplx x, cplx y,
                  double exclusion_radius = -1.0);

struct ZetaIdentityResidual
{
    double r1;
    double r2;
    // r1, r2 divided by 1 + the largest summand magnitude.
    double rel1;
    double rel2;
};

// Residuals of
//   Z (wp(x) - wp(y)) = (wp'(x) + wp'(y)) / 2,
//   Z (wp'(x) - wp'(y)) = 2wp(x)^2 + 2wp(x)wp(y) + 2wp(y)^2 - g2/2,
// with Z = zeta(x-y) - zeta(x) + zeta(y).
ZetaIdentityResidual zeta_identity_residual(const Lattice &lat, cplx x, cplx y);

// Numeric values for n, g2, g3 (g2, g3 taken from the lattice).
NumericAssignment lattice_params(const Lattice &lat, cplx n_value);

// Sum of |term| over the terms of a parameter coefficient.
double coefficient_magnitude(const ParamPoly &c, const NumericAssignment &params);

// Symmetrized evaluation: a monomial e_{a_1}...e_{a_m} maps to
// sum over permutations s of prod_i e_{a_i}(z_{s(i)}). P must be homogeneous
// of degree points.size(); throws std::invalid_argument otherwise.
Evaluated sym_eval(const Lattice &lat, const EPoly &p, const NumericAssignment &params,
                   const std::vector<cplx> &points);

struct SamplePlan
{
    std::uint64_t seed = 1;
    int count = 20;
    // Excluded disc radius around lattice points, as a fraction of r_min.
    double exclusion_fraction = 0.05;
    double tolerance = 1e-6;

    // Throws std::invalid_argument unless exclusion in (0, 0.5), tol > 0, count > 0.
    void validate() const;
};

// Deterministic point sampler over the fundamental cell.
class PointSampler
{
public:
    PointSampler(const Lattice &lat, const SamplePlan &plan);

    // Uniform double in [0, 1).
    double uniform();
    // Cell point at distance >= exclusion from the lattice.
    cplx point();
    // k points, each admissible and with all pairwise differences admissible.
    std::vector<cplx> points(std::size_t k);
    double exclusion_radius() const { return exclusion_; }

private:
    const Lattice *lat_;
    std::mt19937_64 rng_;
    double exclusion_;
};

// Two-point bracket against sym_eval of the symbolic elliptic bracket for every
// pair in the window. Every fourth sample is placed on the diagonal x == y.
Report verify_functional(const Lattice &lat, const Rational &n_value, const IndexSet &window,
                         const SamplePlan &plan);

// Both zeta identities at plan.count admissible pairs.
Report zeta_identity_sweep(const Lattice &lat, const SamplePlan &plan);

// Differential equation, periodicity, quasi-periodicity, parity and the
// leading Laurent coefficients (estimated by a Cauchy integral of wp).
Report weierstrass_self_test(const Lattice &lat, const SamplePlan &plan);

} // namespace ellpoisson
