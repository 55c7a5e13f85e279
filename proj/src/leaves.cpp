#include "ellpoisson/leaves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "ellpoisson/brackets.hpp"

namespace ellpoisson
{

namespace
{

constexpr double det_tolerance = 1e-8;

std::string sci(double v)
{
    std::ostringstream os;
    os << std::scientific << v;
    return os.str();
}

std::string describe_sample(const LeafSample &s)
{
    std::ostringstream os;
    os << "u=(";
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        os << (i ? "," : "") << format_complex(s.u[i]);
    }
    os << ") psi=(";
    for (std::size_t i = 0; i < s.psi.size(); ++i) {
        os << (i ? "," : "") << format_complex(s.psi[i]);
    }
    os << ")";
    return os.str();
}

void check_sample(const LeafConfig &cfg, const LeafSample &s)
{
    const auto p = static_cast<std::size_t>(cfg.p);
    if (s.u.size() != p || s.psi.size() != p) {
        throw std::invalid_argument("leaf sample does not have p = " + std::to_string(cfg.p)
                                    + " points");
    }
    for (const auto psi : s.psi) {
        if (psi == 0.0) {
            throw std::invalid_argument("leaf sample has psi = 0");
        }
    }
}

json config_parameters(const LeafConfig &cfg)
{
    return {{"p", cfg.p},
            {"n", to_string(cfg.n_value)},
            {"tau", format_complex(cfg.lattice.omega2() / cfg.lattice.omega1())}};
}

// Bracket coefficient c(a, b) in {u_a, psi_b} = c(a, b) psi_b.
cplx u_psi_coefficient(std::size_t a, std::size_t b, cplx n_num, SignConvention convention)
{
    const cplx c = a == b ? (n_num - 2.0) / 2.0 : cplx(-1.0);
    return convention == SignConvention::corrected ? c : -c;
}

// Z(x, y) = zeta(x - y) - zeta(x) + zeta(y).
cplx zeta_combination(const Lattice &lat, cplx x, cplx y)
{
    return weier_eval(lat, x - y).zeta - weier_eval(lat, x).zeta + weier_eval(lat, y).zeta;
}

// Product of the Euclidean row norms, an upper bound for |det|.
double hadamard_bound(const Eigen::MatrixXcd &m)
{
    double bound = 1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        bound *= m.row(i).norm();
    }
    return bound;
}

} // namespace

void LeafConfig::validate() const
{
    if (p < 1) {
        throw std::invalid_argument("LeafConfig: p must be >= 1");
    }
}

const char *convention_name(SignConvention c)
{
    return c == SignConvention::corrected ? "corrected" : "flipped";
}

SignConvention convention_from_name(const std::string &name)
{
    if (name == "corrected") {
        return SignConvention::corrected;
    }
    if (name == "flipped") {
        return SignConvention::flipped;
    }
    throw std::invalid_argument("unknown sign convention '" + name + "'");
}

LeafSampler::LeafSampler(const Lattice &lat, int p, const SamplePlan &plan)
    : points_(lat, plan), p_(p)
{
    if (p < 1) {
        throw std::invalid_argument("LeafSampler: p must be >= 1");
    }
}

LeafSample LeafSampler::sample()
{
    LeafSample s;
    s.u = points_.points(static_cast<std::size_t>(p_));
    for (int i = 0; i < p_; ++i) {
        const double r = 0.5 + points_.uniform();
        const double phase = 2.0 * std::numbers::pi * points_.uniform();
        s.psi.push_back(std::polar(r, phase));
    }
    return s;
}

Evaluated xp_eval(const LeafConfig &cfg, const EPoly &p, const NumericAssignment &params,
                  const LeafSample &s)
{
    cfg.validate();
    check_sample(cfg, s);
    std::vector<WeierValues> wv;
    for (const auto u : s.u) {
        wv.push_back(weier_eval(cfg.lattice, u));
    }
    std::map<int, std::pair<cplx, double>> forms;
    for (const int a : support(p)) {
        cplx value = 0.0;
        double mag = 0.0;
        for (std::size_t i = 0; i < wv.size(); ++i) {
            const cplx term = e_value(a, wv[i]) * s.psi[i];
            value += term;
            mag += std::abs(term);
        }
        forms[a] = {value, mag};
    }
    cplx total = 0.0;
    double scale = 1.0;
    for (const auto &[mono, coeff] : p.terms()) {
        cplx prod = coeff.evaluate(params);
        double mag = coefficient_magnitude(coeff, params);
        for (const int a : mono.indices()) {
            prod *= forms.at(a).first;
            mag *= forms.at(a).second;
        }
        total += prod;
        scale += mag;
    }
    return {total, scale};
}

Evaluated leaf_bracket_xp(const LeafConfig &cfg, int f_index, int g_index, const LeafSample &s,
                          SignConvention convention)
{
    cfg.validate();
    check_sample(cfg, s);
    const auto &lat = cfg.lattice;
    const cplx n_num = to_double(cfg.n_value);
    const auto p = static_cast<std::size_t>(cfg.p);
    std::vector<cplx> f(p), fd(p), g(p), gd(p);
    for (std::size_t i = 0; i < p; ++i) {
        const auto w = weier_eval(lat, s.u[i]);
        f[i] = e_value(f_index, w);
        fd[i] = e_derivative(f_index, w, lat.g2());
        g[i] = e_value(g_index, w);
        gd[i] = e_derivative(g_index, w, lat.g2());
    }
    cplx total = 0.0;
    double scale = 1.0;
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) {
            const cplx pp = s.psi[a] * s.psi[b];
            const cplx cab = u_psi_coefficient(a, b, n_num, convention);
            const cplx cba = u_psi_coefficient(b, a, n_num, convention);
            cplx terms[3] = {fd[a] * g[b] * cab * pp, -f[a] * gd[b] * cba * pp, 0.0};
            if (a != b) {
                terms[2] = n_num * zeta_combination(lat, s.u[a], s.u[b]) * f[a] * g[b] * pp;
            }
            for (const auto t : terms) {
                total += t;
                scale += std::abs(t);
            }
        }
    }
    return {total, scale};
}

Report leaf_homomorphism_check(const LeafConfig &cfg, const IndexSet &window,
                               const SamplePlan &plan, SignConvention convention)
{
    cfg.validate();
    plan.validate();
    const auto gens = window.members();
    if (!gens.empty() && gens.front() < 0) {
        throw std::invalid_argument("leaf_homomorphism_check: window must be non-negative");
    }
    auto params = config_parameters(cfg);
    params["window"] = window.describe();
    params["convention"] = convention_name(convention);
    params["seed"] = plan.seed;
    params["samples"] = plan.count;
    params["tolerance"] = plan.tolerance;
    Report rep("leaf_homomorphism", params);

    const BracketSpec spec = BracketSpec::elliptic().with_n(cfg.n_value);
    const auto numeric = lattice_params(cfg.lattice, to_double(cfg.n_value));
    std::vector<std::pair<int, int>> pairs;
    std::vector<EPoly> symbolic;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            pairs.emplace_back(gens[i], gens[j]);
            symbolic.push_back(bracket_poly(EPoly::gen(gens[i]), EPoly::gen(gens[j]), spec));
        }
    }
    LeafSampler sampler(cfg.lattice, cfg.p, plan);
    for (int k = 0; k < plan.count; ++k) {
        const auto s = sampler.sample();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto [a, b] = pairs[i];
            const auto lhs = leaf_bracket_xp(cfg, a, b, s, convention);
            const auto rhs = xp_eval(cfg, symbolic[i], numeric, s);
            const double res = std::abs(lhs.value - rhs.value) / std::max(lhs.scale, rhs.scale);
            rep.observe_residual(res);
            if (res > plan.tolerance) {
                std::ostringstream w;
                w << "(e[" << a << "],e[" << b << "]) at " << describe_sample(s);
                rep.fail(w.str(), sci(res));
            }
        }
    }
    rep.note("pairs", pairs.size());
    return rep;
}

Report kernel_check(const LeafConfig &cfg, const CasimirSet &cs, const SamplePlan &plan)
{
    cfg.validate();
    plan.validate();
    if (!(2 * cfg.p < cs.n)) {
        throw std::invalid_argument("kernel_check: requires 2p < n (p = " + std::to_string(cfg.p)
                                    + ", n = " + std::to_string(cs.n) + ")");
    }
    auto params = config_parameters(cfg);
    params["casimir_n"] = cs.n;
    params["seed"] = plan.seed;
    params["samples"] = plan.count;
    params["tolerance"] = plan.tolerance;
    Report rep("leaf_kernel", params);
    const auto numeric = lattice_params(cfg.lattice, to_double(cfg.n_value));
    LeafSampler sampler(cfg.lattice, cfg.p, plan);
    for (int k = 0; k < plan.count; ++k) {
        const auto s = sampler.sample();
        for (std::size_t i = 0; i < cs.elements.size(); ++i) {
            const auto v = xp_eval(cfg, cs.elements[i], numeric, s);
            const double res = std::abs(v.value) / v.scale;
            rep.observe_residual(res);
            if (res > plan.tolerance) {
                rep.fail(cs.names[i] + " at " + describe_sample(s), sci(res));
            }
        }
    }
    rep.note("elements", cs.elements.size());
    return rep;
}

Report diagonal_vanish_check(const LeafConfig &cfg, const EPoly &c, const SamplePlan &plan)
{
    cfg.validate();
    plan.validate();
    const auto degree = static_cast<std::size_t>(cfg.p) + 1;
    if (!c.is_homogeneous_degree(degree)) {
        throw std::invalid_argument("diagonal_vanish_check: element is not homogeneous of degree "
                                    + std::to_string(degree));
    }
    auto params = config_parameters(cfg);
    params["seed"] = plan.seed;
    params["samples"] = plan.count;
    params["tolerance"] = plan.tolerance;
    Report rep("diagonal_vanishing", params);
    const auto numeric = lattice_params(cfg.lattice, to_double(cfg.n_value));
    PointSampler sampler(cfg.lattice, plan);
    for (int k = 0; k < plan.count; ++k) {
        auto pts = sampler.points(static_cast<std::size_t>(cfg.p));
        pts.insert(pts.begin(), pts.front());
        const auto v = sym_eval(cfg.lattice, c, numeric, pts);
        const double res = std::abs(v.value) / v.scale;
        rep.observe_residual(res);
        if (res > plan.tolerance) {
            std::ostringstream w;
            w << "points (";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                w << (i ? "," : "") << format_complex(pts[i]);
            }
            w << ")";
            rep.fail(w.str(), sci(res));
        }
    }
    return rep;
}

Rational leaf_det_factor(int p, const Rational &n_value)
{
    const Rational half = n_value / 2;
    Rational r = half - p;
    for (int i = 1; i < p; ++i) {
        r *= half;
    }
    return r;
}

Report nondegeneracy_check(const LeafConfig &cfg, const LeafSample &s)
{
    cfg.validate();
    check_sample(cfg, s);
    const auto p = static_cast<Eigen::Index>(cfg.p);
    const cplx n_num = to_double(cfg.n_value);
    auto params = config_parameters(cfg);
    params["sample"] = describe_sample(s);
    params["tolerance"] = det_tolerance;
    Report rep("nondegeneracy", params);

    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(2 * p, 2 * p);
    Eigen::MatrixXcd m(p, p);
    for (Eigen::Index a = 0; a < p; ++a) {
        for (Eigen::Index b = 0; b < p; ++b) {
            const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
            m(a, b) = u_psi_coefficient(ua, ub, n_num, SignConvention::corrected) * s.psi[ub];
            full(a, p + b) = m(a, b);
            full(p + b, a) = -m(a, b);
            if (a != b) {
                full(p + a, p + b) = n_num * zeta_combination(cfg.lattice, s.u[ua], s.u[ub])
                                     * s.psi[ua] * s.psi[ub];
            }
        }
    }
    const cplx det_m = m.partialPivLu().determinant();
    const cplx det_full = full.partialPivLu().determinant();

    const Rational factor = leaf_det_factor(cfg.p, cfg.n_value);
    cplx closed = to_double(factor);
    for (const auto psi : s.psi) {
        closed *= psi;
    }
    const double m_scale = std::max(1.0, hadamard_bound(m));
    const double full_scale = std::max(1.0, hadamard_bound(full));

    const double r_closed = std::abs(det_m - closed) / m_scale;
    const double r_square = std::abs(det_full - det_m * det_m) / full_scale;
    rep.observe_residual(r_closed);
    rep.observe_residual(r_square);
    if (r_closed > det_tolerance) {
        rep.fail("det M against closed form", sci(r_closed));
    }
    if (r_square > det_tolerance) {
        rep.fail("det of Poisson matrix against det(M)^2", sci(r_square));
    }
    rep.note("det_factor", to_string(factor));
    rep.note("det_M", format_complex(det_m));
    rep.note("degenerate", factor == 0);
    return rep;
}

} // namespace ellpoisson
