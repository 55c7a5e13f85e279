#include "ellpoisson/elliptic.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "ellpoisson/brackets.hpp"

namespace ellpoisson
{

namespace
{

constexpr double pi = std::numbers::pi;
// Laurent series is summed only inside this fraction of r_min; short series
// get a smaller disc so the dropped tail stays near 1e-18 relative.
double series_radius(int order)
{
    return std::min(0.3, std::pow(10.0, -18.0 / (2.0 * order + 2.0)));
}

cplx ipow(cplx base, int e)
{
    if (e < 0) {
        return 1.0 / ipow(base, -e);
    }
    cplx r = 1.0;
    while (e) {
        if (e & 1) {
            r *= base;
        }
        base *= base;
        e >>= 1;
    }
    return r;
}

// sum_{k >= 1} k^m q^k / (1 - q^k)
cplx lambert(cplx q, int m)
{
    cplx sum = 0.0;
    cplx qk = q;
    for (int k = 1; k < 2000; ++k) {
        const cplx term = std::pow(static_cast<double>(k), m) * qk / (1.0 - qk);
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) {
            break;
        }
        qk *= q;
    }
    return sum;
}

struct RealCoords
{
    double s;
    double t;
};

// z = s*w1 + t*w2 for real s, t.
RealCoords coords(cplx z, cplx w1, cplx w2)
{
    const cplx tau = w2 / w1;
    const cplx r = z / w1;
    const double t = r.imag() / tau.imag();
    const double s = r.real() - t * tau.real();
    return {s, t};
}

bool is_even(int a)
{
    return a % 2 == 0;
}

// Permanent of an m x m matrix (row-major) by dynamic programming over column
// subsets; every partial sum is a sum of genuine partial products.
template <typename T>
T permanent(const std::vector<T> &a, std::size_t m)
{
    if (m == 0) {
        return T(1);
    }
    std::vector<T> dp(std::size_t{1} << m, T(0));
    dp[0] = T(1);
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (dp[mask] == T(0)) {
            continue;
        }
        const auto row = static_cast<std::size_t>(std::popcount(mask));
        if (row == m) {
            continue;
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (!(mask & (std::size_t{1} << j))) {
                dp[mask | (std::size_t{1} << j)] += dp[mask] * a[row * m + j];
            }
        }
    }
    return dp.back();
}

} // namespace

double coefficient_magnitude(const ParamPoly &c, const NumericAssignment &params)
{
    double mag = 0.0;
    for (const auto &[e, q] : c.terms()) {
        mag += std::abs(ParamPoly::monomial(e, q).evaluate(params));
    }
    return mag;
}

double Lattice::distance_to_lattice(cplx z) const
{
    return std::abs(reduce(z).z);
}

Lattice::Reduced Lattice::reduce(cplx z) const
{
    const auto [s, t] = coords(z, w1_, w2_);
    long m1 = std::lround(s);
    long m2 = std::lround(t);
    cplx best = z - static_cast<double>(m1) * w1_ - static_cast<double>(m2) * w2_;
    const cplx base = best;
    long b1 = 0, b2 = 0;
    for (long d1 = -1; d1 <= 1; ++d1) {
        for (long d2 = -1; d2 <= 1; ++d2) {
            const cplx cand = base - static_cast<double>(d1) * w1_ - static_cast<double>(d2) * w2_;
            if (std::abs(cand) < std::abs(best)) {
                best = cand;
                b1 = d1;
                b2 = d2;
            }
        }
    }
    return {best, m1 + b1, m2 + b2};
}

Lattice lattice_init(cplx omega1, cplx omega2, int series_order)
{
    if (series_order < 10) {
        throw std::invalid_argument("lattice_init: series_order must be >= 10");
    }
    if (omega1 == 0.0) {
        throw std::invalid_argument("lattice_init: zero period");
    }
    const double im = (omega2 / omega1).imag();
    if (!(im > 1e-12 * std::abs(omega2 / omega1))) {
        throw std::invalid_argument("lattice_init: periods are degenerate or misoriented "
                                    "(need Im(omega2/omega1) > 0)");
    }
    Lattice lat;
    lat.omega1_ = omega1;
    lat.omega2_ = omega2;

    // Lagrange reduction, preserving orientation.
    cplx w1 = omega1, w2 = omega2;
    for (int iter = 0; iter < 1000; ++iter) {
        const double m = std::round((w2 / w1).real());
        w2 -= m * w1;
        if (std::abs(w2) < std::abs(w1) * (1.0 - 1e-15)) {
            const cplx tmp = w1;
            w1 = -w2;
            w2 = tmp;
        } else {
            break;
        }
    }
    lat.w1_ = w1;
    lat.w2_ = w2;
    lat.r_min_ = std::abs(w1);

    const cplx tau = w2 / w1;
    const cplx q = std::exp(cplx(0.0, 2.0 * pi) * tau);
    const cplx e2 = 1.0 - 24.0 * lambert(q, 1);
    const cplx e4 = 1.0 + 240.0 * lambert(q, 3);
    const cplx e6 = 1.0 - 504.0 * lambert(q, 5);
    const cplx k = 2.0 * pi / w1;
    lat.g2_ = ipow(k, 4) * e4 / 12.0;
    lat.g3_ = ipow(k, 6) * e6 / 216.0;
    lat.rho1_ = pi * pi * e2 / (3.0 * w1);
    // Legendre relation rho1*w2 - rho2*w1 = 2 pi i.
    lat.rho2_ = (lat.rho1_ * w2 - cplx(0.0, 2.0 * pi)) / w1;

    // Quasi-periods of the input periods by Z-linearity.
    const auto eta_of = [&](cplx omega) {
        const auto [s, t] = coords(omega, w1, w2);
        return std::round(s) * lat.rho1_ + std::round(t) * lat.rho2_;
    };
    lat.eta1_ = eta_of(omega1);
    lat.eta2_ = eta_of(omega2);

    using xcplx = std::complex<long double>;
    auto &c = lat.laurent_ext_;
    c.assign(static_cast<std::size_t>(series_order) + 1, 0.0L);
    c[2] = xcplx(lat.g2_) / 20.0L;
    c[3] = xcplx(lat.g3_) / 28.0L;
    for (int kk = 4; kk <= series_order; ++kk) {
        xcplx sum = 0.0L;
        for (int m = 2; m <= kk - 2; ++m) {
            sum += c[m] * c[kk - m];
        }
        c[kk] = 3.0L / static_cast<long double>((2 * kk + 1) * (kk - 3)) * sum;
    }
    lat.laurent_.assign(c.begin(), c.end());

    // Cheap construction-time self-test at fixed points of the cell.
    for (const double s : {0.11, 0.37, -0.29}) {
        for (const double t : {0.23, -0.41}) {
            const cplx z = s * w1 + t * w2;
            const auto v = weier_eval(lat, z);
            const cplx de = v.wp1 * v.wp1 - (4.0 * v.wp * v.wp * v.wp - lat.g2_ * v.wp - lat.g3_);
            const double scale = 1.0 + std::pow(std::abs(v.wp), 3);
            const auto shifted = weier_eval(lat, z + omega1);
            const double per = std::abs(shifted.wp - v.wp) / (1.0 + std::abs(v.wp));
            const double quasi = std::abs(shifted.zeta - v.zeta - lat.eta1_)
                                 / (1.0 + std::abs(v.zeta) + std::abs(lat.eta1_));
            if (std::abs(de) > 1e-9 * scale || per > 1e-9 || quasi > 1e-9) {
                throw integrity_error("lattice_init: Weierstrass self-test failed at "
                                      + format_complex(z));
            }
        }
    }
    return lat;
}

Lattice lattice_from_tau(cplx tau, int series_order)
{
    return lattice_init(1.0, tau, series_order);
}

cplx parse_complex(const std::string &text)
{
    std::string s;
    for (const char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    const auto bad = [&]() {
        return std::invalid_argument("malformed complex number '" + text + "' (expected a+bi)");
    };
    if (s.empty()) {
        throw bad();
    }
    const auto to_double = [&](const std::string &part) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception &) {
            throw bad();
        }
        if (used != part.size()) {
            throw bad();
        }
        return v;
    };
    const auto imag_part = [&](const std::string &part) {
        if (part.empty() || part == "+") {
            return 1.0;
        }
        if (part == "-") {
            return -1.0;
        }
        return to_double(part);
    };
    if (s.back() != 'i') {
        return {to_double(s), 0.0};
    }
    s.pop_back();
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        return {0.0, imag_part(s)};
    }
    return {to_double(s.substr(0, split)), imag_part(s.substr(split))};
}

std::string format_complex(cplx z)
{
    std::ostringstream os;
    os << std::setprecision(12) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
    return os.str();
}

WeierValues weier_eval(const Lattice &lat, cplx z, double min_distance)
{
    if (min_distance < 0) {
        min_distance = 1e-10 * lat.r_min();
    }
    const auto red = lat.reduce(z);
    cplx u = red.z;
    if (std::abs(u) < min_distance) {
        throw pole_proximity_error("weier_eval: argument " + format_complex(z)
                                   + " is too close to a lattice point");
    }
    using xcplx = std::complex<long double>;
    int halvings = 0;
    const double radius = series_radius(lat.series_order()) * lat.r_min();
    while (std::abs(u) > radius) {
        u *= 0.5;
        ++halvings;
    }
    const auto &c = lat.laurent_ext_;
    const xcplx x = u;
    const xcplx x2 = x * x;
    xcplx wp = 1.0L / x2;
    xcplx wp1 = -2.0L / (x2 * x);
    xcplx zeta = 1.0L / x;
    // x^{2k-3}, starting at k = 2.
    xcplx pw = x;
    for (int k = 2; k <= lat.series_order(); ++k) {
        const long double kk = k;
        wp += c[k] * pw * x;
        wp1 += (2.0L * kk - 2.0L) * c[k] * pw;
        zeta -= c[k] * pw * x2 / (2.0L * kk - 1.0L);
        pw *= x2;
    }
    const xcplx g2 = lat.g2();
    for (int h = 0; h < halvings; ++h) {
        const xcplx p2 = 6.0L * wp * wp - 0.5L * g2;
        const xcplx r = p2 / wp1;
        const xcplx wp_new = -2.0L * wp + 0.25L * r * r;
        const xcplx wp1_new = -wp1 + 3.0L * wp * r - 0.25L * r * r * r;
        zeta = 2.0L * zeta + 0.5L * r;
        wp = wp_new;
        wp1 = wp1_new;
    }
    cplx zeta_out(zeta);
    zeta_out += static_cast<double>(red.m1) * lat.reduced_eta1()
                + static_cast<double>(red.m2) * lat.reduced_eta2();
    return {cplx(wp), cplx(wp1), zeta_out};
}

cplx e_value(int alpha, const WeierValues &w)
{
    if (is_even(alpha)) {
        return ipow(w.wp, alpha / 2);
    }
    return -0.5 * ipow(w.wp, (alpha - 3) / 2) * w.wp1;
}

cplx e_derivative(int alpha, const WeierValues &w, cplx g2)
{
    if (is_even(alpha)) {
        const int a = alpha / 2;
        if (a == 0) {
            return 0.0;
        }
        return static_cast<double>(a) * ipow(w.wp, a - 1) * w.wp1;
    }
    const int a = (alpha - 3) / 2;
    const cplx wp2 = 6.0 * w.wp * w.wp - 0.5 * g2;
    cplx d = ipow(w.wp, a) * wp2;
    if (a != 0) {
        d += static_cast<double>(a) * ipow(w.wp, a - 1) * w.wp1 * w.wp1;
    }
    return -0.5 * d;
}

cplx e_func(const Lattice &lat, int alpha, cplx z)
{
    return e_value(alpha, weier_eval(lat, z));
}

Evaluated func_bracket_eval(const Lattice &lat, cplx n_value, int f_index, int g_index, cplx x,
                            cplx y, double exclusion_radius)
{
    if (exclusion_radius < 0) {
        exclusion_radius = 0.05 * lat.r_min();
    }
    const auto wx = weier_eval(lat, x);
    const cplx fx = e_value(f_index, wx), gx = e_value(g_index, wx);
    const cplx fpx = e_derivative(f_index, wx, lat.g2());
    const cplx gpx = e_derivative(g_index, wx, lat.g2());
    if (x == y) {
        const cplx value = (n_value - 2.0) * (fpx * gx - fx * gpx);
        const double scale = 1.0 + std::abs(n_value - 2.0) * (std::abs(fpx * gx) + std::abs(fx * gpx));
        return {value, scale};
    }
    if (lat.distance_to_lattice(x - y) < exclusion_radius) {
        throw near_singular_error("func_bracket: x - y = " + format_complex(x - y)
                                  + " is within the exclusion radius of the lattice");
    }
    const auto wy = weier_eval(lat, y);
    const auto wd = weier_eval(lat, x - y);
    const cplx fy = e_value(f_index, wy), gy = e_value(g_index, wy);
    const cplx fpy = e_derivative(f_index, wy, lat.g2());
    const cplx gpy = e_derivative(g_index, wy, lat.g2());
    const cplx z = wd.zeta - wx.zeta + wy.zeta;
    const cplx value
        = n_value * z * (fx * gy - fy * gx) - fpx * gy - fpy * gx + fx * gpy + fy * gpx;
    const double zmag = std::abs(wd.zeta) + std::abs(wx.zeta) + std::abs(wy.zeta);
    const double scale = 1.0 + std::abs(n_value) * zmag * (std::abs(fx * gy) + std::abs(fy * gx))
                         + std::abs(fpx * gy) + std::abs(fpy * gx) + std::abs(fx * gpy)
                         + std::abs(fy * gpx);
    return {value, scale};
}

cplx func_bracket(const Lattice &lat, cplx n_value, int f_index, int g_index, cplx x, cplx y,
                  double exclusion_radius)
{
    return func_bracket_eval(lat, n_value, f_index, g_index, x, y, exclusion_radius).value;
}

ZetaIdentityResidual zeta_identity_residual(const Lattice &lat, cplx x, cplx y)
{
    const auto wx = weier_eval(lat, x);
    const auto wy = weier_eval(lat, y);
    const auto wd = weier_eval(lat, x - y);
    const cplx z = wd.zeta - wx.zeta + wy.zeta;
    const double zmag = std::abs(wd.zeta) + std::abs(wx.zeta) + std::abs(wy.zeta);

    const cplx lhs1 = z * (wx.wp - wy.wp);
    const cplx rhs1 = 0.5 * (wx.wp1 + wy.wp1);
    const double s1 = 1.0 + zmag * (std::abs(wx.wp) + std::abs(wy.wp))
                      + 0.5 * (std::abs(wx.wp1) + std::abs(wy.wp1));

    const cplx lhs2 = z * (wx.wp1 - wy.wp1);
    const cplx rhs2 = 2.0 * wx.wp * wx.wp + 2.0 * wx.wp * wy.wp + 2.0 * wy.wp * wy.wp - 0.5 * lat.g2();
    const double s2 = 1.0 + zmag * (std::abs(wx.wp1) + std::abs(wy.wp1))
                      + 2.0 * std::pow(std::abs(wx.wp) + std::abs(wy.wp), 2) + 0.5 * std::abs(lat.g2());

    const double r1 = std::abs(lhs1 - rhs1);
    const double r2 = std::abs(lhs2 - rhs2);
    return {r1, r2, r1 / s1, r2 / s2};
}

NumericAssignment lattice_params(const Lattice &lat, cplx n_value)
{
    return {{Symbol::n, n_value}, {Symbol::g2, lat.g2()}, {Symbol::g3, lat.g3()}};
}

Evaluated sym_eval(const Lattice &lat, const EPoly &p, const NumericAssignment &params,
                   const std::vector<cplx> &points)
{
    const std::size_t m = points.size();
    if (!p.is_homogeneous_degree(m)) {
        throw std::invalid_argument("sym_eval: polynomial is not homogeneous of degree "
                                    + std::to_string(m));
    }
    std::vector<WeierValues> wv;
    wv.reserve(m);
    for (const auto z : points) {
        wv.push_back(weier_eval(lat, z));
    }
    std::map<int, std::vector<cplx>> values;
    for (const int a : support(p)) {
        auto &row = values[a];
        for (const auto &w : wv) {
            row.push_back(e_value(a, w));
        }
    }
    cplx total = 0.0;
    double scale = 1.0;
    std::vector<cplx> mat(m * m);
    std::vector<double> absmat(m * m);
    for (const auto &[mono, coeff] : p.terms()) {
        const auto &idx = mono.indices();
        for (std::size_t i = 0; i < m; ++i) {
            const auto &row = values.at(idx[i]);
            for (std::size_t j = 0; j < m; ++j) {
                mat[i * m + j] = row[j];
                absmat[i * m + j] = std::abs(row[j]);
            }
        }
        total += coeff.evaluate(params) * permanent(mat, m);
        scale += coefficient_magnitude(coeff, params) * permanent(absmat, m);
    }
    return {total, scale};
}

void SamplePlan::validate() const
{
    if (!(exclusion_fraction > 0.0 && exclusion_fraction < 0.5)) {
        throw std::invalid_argument("SamplePlan: exclusion_fraction must lie in (0, 0.5)");
    }
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("SamplePlan: tolerance must be positive");
    }
    if (count <= 0) {
        throw std::invalid_argument("SamplePlan: count must be positive");
    }
}

PointSampler::PointSampler(const Lattice &lat, const SamplePlan &plan)
    : lat_(&lat), rng_(plan.seed), exclusion_(plan.exclusion_fraction * lat.r_min())
{
    plan.validate();
}

double PointSampler::uniform()
{
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

cplx PointSampler::point()
{
    for (;;) {
        const double s = uniform() - 0.5;
        const double t = uniform() - 0.5;
        const cplx z = s * lat_->reduced_w1() + t * lat_->reduced_w2();
        if (lat_->distance_to_lattice(z) >= exclusion_) {
            return z;
        }
    }
}

std::vector<cplx> PointSampler::points(std::size_t k)
{
    std::vector<cplx> pts;
    while (pts.size() < k) {
        const cplx z = point();
        const bool ok = std::all_of(pts.begin(), pts.end(), [&](cplx w) {
            return lat_->distance_to_lattice(z - w) >= exclusion_;
        });
        if (ok) {
            pts.push_back(z);
        }
    }
    return pts;
}

Report verify_functional(const Lattice &lat, const Rational &n_value, const IndexSet &window,
                         const SamplePlan &plan)
{
    plan.validate();
    const auto gens = window.members();
    if (!gens.empty() && gens.front() < 0) {
        throw std::invalid_argument("verify_functional: window must be non-negative");
    }
    Report rep("functional_realization",
               {{"n", to_string(n_value)},
                {"window", window.describe()},
                {"tau", format_complex(lat.omega2() / lat.omega1())},
                {"seed", plan.seed},
                {"samples", plan.count},
                {"tolerance", plan.tolerance}});
    const BracketSpec spec = BracketSpec::elliptic().with_n(n_value);
    const cplx n_num = to_double(n_value);
    const auto params = lattice_params(lat, n_num);

    std::vector<std::pair<int, int>> pairs;
    std::vector<EPoly> symbolic;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            pairs.emplace_back(gens[i], gens[j]);
            symbolic.push_back(bracket_poly(EPoly::gen(gens[i]), EPoly::gen(gens[j]), spec));
        }
    }
    PointSampler sampler(lat, plan);
    std::size_t diagonal = 0;
    for (int s = 0; s < plan.count; ++s) {
        std::vector<cplx> pts;
        if (s % 4 == 3) {
            const cplx x = sampler.point();
            pts = {x, x};
            ++diagonal;
        } else {
            pts = sampler.points(2);
        }
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto [a, b] = pairs[k];
            const auto fb = func_bracket_eval(lat, n_num, a, b, pts[0], pts[1]);
            // The zero polynomial is homogeneous of every degree.
            const Evaluated se = symbolic[k].is_zero() ? Evaluated{0.0, 1.0}
                                                       : sym_eval(lat, symbolic[k], params, pts);
            const double res = std::abs(fb.value - se.value) / std::max(fb.scale, se.scale);
            rep.observe_residual(res);
            if (res > plan.tolerance) {
                std::ostringstream w;
                w << "(e[" << a << "],e[" << b << "]) at x=" << format_complex(pts[0])
                  << " y=" << format_complex(pts[1]);
                std::ostringstream r;
                r << std::scientific << res;
                rep.fail(w.str(), r.str());
            }
        }
    }
    rep.note("pairs", pairs.size());
    rep.note("diagonal_samples", diagonal);
    return rep;
}

Report zeta_identity_sweep(const Lattice &lat, const SamplePlan &plan)
{
    plan.validate();
    Report rep("zeta_identities", {{"tau", format_complex(lat.omega2() / lat.omega1())},
                                   {"seed", plan.seed},
                                   {"samples", plan.count},
                                   {"tolerance", plan.tolerance}});
    PointSampler sampler(lat, plan);
    for (int s = 0; s < plan.count; ++s) {
        const auto pts = sampler.points(2);
        const auto r = zeta_identity_residual(lat, pts[0], pts[1]);
        const double worst = std::max(r.rel1, r.rel2);
        rep.observe_residual(worst);
        if (worst > plan.tolerance) {
            std::ostringstream os;
            os << std::scientific << r.rel1 << "," << r.rel2;
            rep.fail("x=" + format_complex(pts[0]) + " y=" + format_complex(pts[1]), os.str());
        }
    }
    return rep;
}

Report weierstrass_self_test(const Lattice &lat, const SamplePlan &plan)
{
    plan.validate();
    Report rep("weierstrass_self_test", {{"tau", format_complex(lat.omega2() / lat.omega1())},
                                         {"seed", plan.seed},
                                         {"samples", plan.count},
                                         {"tolerance", plan.tolerance}});
    const auto check = [&](const std::string &what, cplx at, double res) {
        rep.observe_residual(res);
        if (res > plan.tolerance) {
            std::ostringstream os;
            os << std::scientific << res;
            rep.fail(what + " at " + format_complex(at), os.str());
        }
    };
    PointSampler sampler(lat, plan);
    const cplx g2 = lat.g2(), g3 = lat.g3();
    for (int s = 0; s < plan.count; ++s) {
        const cplx z = sampler.point();
        const auto v = weier_eval(lat, z);
        const cplx de = v.wp1 * v.wp1 - (4.0 * v.wp * v.wp * v.wp - g2 * v.wp - g3);
        check("differential equation", z, std::abs(de) / (1.0 + std::pow(std::abs(v.wp), 3)));
        for (const auto &[omega, eta, label] :
             {std::tuple{lat.omega1(), lat.eta1(), "1"}, std::tuple{lat.omega2(), lat.eta2(), "2"}}) {
            const auto sh = weier_eval(lat, z + omega);
            check(std::string("periodicity wp omega") + label, z,
                  std::abs(sh.wp - v.wp) / (1.0 + std::abs(v.wp)));
            check(std::string("periodicity wp' omega") + label, z,
                  std::abs(sh.wp1 - v.wp1) / (1.0 + std::abs(v.wp1)));
            check(std::string("quasi-periodicity zeta omega") + label, z,
                  std::abs(sh.zeta - v.zeta - eta) / (1.0 + std::abs(v.zeta) + std::abs(eta)));
        }
        const auto neg = weier_eval(lat, -z);
        check("parity wp", z, std::abs(neg.wp - v.wp) / (1.0 + std::abs(v.wp)));
        check("parity wp'", z, std::abs(neg.wp1 + v.wp1) / (1.0 + std::abs(v.wp1)));
        check("parity zeta", z, std::abs(neg.zeta + v.zeta) / (1.0 + std::abs(v.zeta)));
    }
    // Cauchy integral of wp(z) - 1/z^2 on a circle outside the series disc,
    // so the values come through the duplication path.
    const int nodes = 256;
    const double radius = 0.45 * lat.r_min();
    cplx c2 = 0.0, c3 = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const cplx z = std::polar(radius, 2.0 * pi * (j + 0.5) / nodes);
        const cplx f = weier_eval(lat, z).wp - 1.0 / (z * z);
        c2 += f / (z * z);
        c3 += f / ipow(z, 4);
    }
    c2 /= static_cast<double>(nodes);
    c3 /= static_cast<double>(nodes);
    check("Laurent z^2 coefficient vs g2/20", 0.0, std::abs(c2 - g2 / 20.0) / (1.0 + std::abs(g2 / 20.0)));
    check("Laurent z^4 coefficient vs g3/28", 0.0, std::abs(c3 - g3 / 28.0) / (1.0 + std::abs(g3 / 28.0)));
    rep.note("laurent_c2_estimate", format_complex(c2));
    rep.note("laurent_c3_estimate", format_complex(c3));
    return rep;
}

} // namespace ellpoisson
