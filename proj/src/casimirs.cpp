#include "ellpoisson/casimirs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ellpoisson
{

namespace
{

bool is_even(int a)
{
    return a % 2 == 0;
}

void require_degree_one(const EPoly &f, const char *who)
{
    if (!f.is_homogeneous_degree(1)) {
        throw std::invalid_argument(std::string(who) + ": argument must have degree 1 in the e's");
    }
}

std::string int_list(std::initializer_list<std::size_t> v)
{
    std::string s = "(";
    bool first = true;
    for (const auto x : v) {
        if (!first) {
            s += ",";
        }
        first = false;
        s += std::to_string(x);
    }
    return s + ")";
}

void require_support_in_fn(const EPoly &c, int n, const std::string &what)
{
    const auto fn = IndexSet::f_n(n);
    for (const int a : support(c)) {
        if (!fn.contains(a)) {
            throw integrity_error(what + ": generator e[" + std::to_string(a)
                                  + "] survives outside F_" + std::to_string(n));
        }
    }
}

// Sign of a permutation of 0..k-1 by counting inversions.
int permutation_sign(const std::vector<std::size_t> &p)
{
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) {
                ++inv;
            }
        }
    }
    return inv % 2 ? -1 : 1;
}

} // namespace

FMatrix::FMatrix(std::size_t size) : size_(size), entries_(size * size)
{
    if (size == 0) {
        throw std::invalid_argument("FMatrix size must be positive");
    }
}

FMatrix::FMatrix(std::initializer_list<std::initializer_list<EPoly>> rows) : FMatrix(rows.size())
{
    std::size_t r = 1;
    for (const auto &row : rows) {
        if (row.size() != size_) {
            throw std::invalid_argument("FMatrix rows must form a square");
        }
        std::size_t c = 1;
        for (const auto &e : row) {
            set(r, c++, e);
        }
        ++r;
    }
}

const EPoly &FMatrix::at(std::size_t row, std::size_t col) const
{
    if (row < 1 || col < 1 || row > size_ || col > size_) {
        throw std::out_of_range("FMatrix index out of range");
    }
    return entries_[(row - 1) * size_ + (col - 1)];
}

void FMatrix::set(std::size_t row, std::size_t col, EPoly value)
{
    if (row < 1 || col < 1 || row > size_ || col > size_) {
        throw std::out_of_range("FMatrix index out of range");
    }
    entries_[(row - 1) * size_ + (col - 1)] = std::move(value);
}

EPoly fmul(int alpha, int beta)
{
    if (is_even(alpha) && is_even(beta)) {
        return EPoly::gen(alpha + beta);
    }
    if (is_even(alpha) != is_even(beta)) {
        // wp^a * (-1/2 wp^b wp') = e_{2(a+b)+3}
        return EPoly::gen(alpha + beta);
    }
    // (-1/2)^2 wp^{a+b} wp'^2 = wp^{a+b} (wp^3 - g2/4 wp - g3/4)
    const int s = (alpha - 3) / 2 + (beta - 3) / 2;
    EPoly r = EPoly::gen(2 * s + 6);
    r -= EPoly::term(ParamPoly::symbol(Symbol::g2) * ParamPoly(Rational(1, 4)),
                     EMonomial{2 * s + 2});
    r -= EPoly::term(ParamPoly::symbol(Symbol::g3) * ParamPoly(Rational(1, 4)), EMonomial{2 * s});
    return r;
}

EPoly fmul(const EPoly &f, const EPoly &g)
{
    require_degree_one(f, "fmul");
    require_degree_one(g, "fmul");
    EPoly r;
    for (const auto &[mf, cf] : f.terms()) {
        for (const auto &[mg, cg] : g.terms()) {
            r += (cf * cg) * fmul(mf.indices().front(), mg.indices().front());
        }
    }
    return r;
}

EPoly fdiv_wp(const EPoly &f)
{
    require_degree_one(f, "fdiv_wp");
    return f.map_indices([](int a) { return a - 2; });
}

EPoly fmul_wp(const EPoly &f)
{
    require_degree_one(f, "fmul_wp");
    return f.map_indices([](int a) { return a + 2; });
}

FMatrix build_matrix(MatrixKind kind, int n)
{
    if (n < 4 || !is_even(n)) {
        throw std::invalid_argument("build_matrix requires even n >= 4");
    }
    const auto m = static_cast<std::size_t>(n / 2);
    FMatrix mat(m);
    const auto idx = [](std::size_t a) { return static_cast<int>(a); };
    switch (kind) {
    case MatrixKind::g:
        mat.set(1, 1, EPoly::gen(0));
        for (std::size_t a = 2; a <= m; ++a) {
            mat.set(1, a, EPoly::gen(idx(a)));
            mat.set(a, 1, EPoly::gen(idx(a)));
            for (std::size_t b = 2; b <= m; ++b) {
                mat.set(a, b, fmul(idx(a), idx(b)));
            }
        }
        break;
    case MatrixKind::g1:
        for (std::size_t a = 1; a <= m; ++a) {
            mat.set(1, a, EPoly::gen(idx(a) + 1));
            mat.set(a, 1, EPoly::gen(idx(a) + 1));
        }
        for (std::size_t a = 2; a <= m; ++a) {
            for (std::size_t b = 2; b <= m; ++b) {
                mat.set(a, b, fdiv_wp(fmul(idx(a) + 1, idx(b) + 1)));
            }
        }
        break;
    case MatrixKind::g2m:
        mat.set(1, 1, EPoly::gen(-2));
        mat.set(1, 2, EPoly::gen(0));
        mat.set(2, 1, EPoly::gen(0));
        for (std::size_t a = 3; a <= m; ++a) {
            mat.set(1, a, EPoly::gen(idx(a) - 1));
            mat.set(a, 1, EPoly::gen(idx(a) - 1));
        }
        // Dividing by the (1,1) entry 1/wp multiplies by wp.
        for (std::size_t a = 2; a <= m; ++a) {
            for (std::size_t b = 2; b <= m; ++b) {
                mat.set(a, b, fmul_wp(fmul(mat.at(a, 1), mat.at(1, b))));
            }
        }
        break;
    }
    return mat;
}

EPoly sym_det(const FMatrix &m)
{
    const auto k = m.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    EPoly det;
    do {
        EPoly prod(permutation_sign(perm));
        for (std::size_t r = 0; r < k && !prod.is_zero(); ++r) {
            prod *= m.at(r + 1, perm[r] + 1);
        }
        det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

std::string render_casimir_text(const CasimirSet &cs)
{
    std::string out = "n=" + std::to_string(cs.n) + "\n";
    for (std::size_t i = 0; i < cs.elements.size(); ++i) {
        out += cs.names[i] + " = " + to_string(cs.elements[i]) + "\n";
    }
    return out;
}

CasimirSet casimir_even(int n)
{
    if (n < 4 || !is_even(n)) {
        throw std::invalid_argument("casimir_even requires even n >= 4");
    }
    CasimirSet cs;
    cs.n = n;
    cs.kind = CasimirSet::Kind::even_pair;
    EPoly c0 = sym_det(build_matrix(MatrixKind::g, n));
    EPoly c1 = sym_det(build_matrix(MatrixKind::g1, n));
    c1 += ParamPoly::symbol(Symbol::g3) * ParamPoly(Rational(1, 4))
          * sym_det(build_matrix(MatrixKind::g2m, n));
    require_support_in_fn(c0, n, "casimir_even C0");
    require_support_in_fn(c1, n, "casimir_even C1");
    cs.elements = {std::move(c0), std::move(c1)};
    cs.names = {"C0", "C1"};
    return cs;
}

CasimirSet casimir_odd(int n)
{
    if (n < 3 || is_even(n)) {
        throw std::invalid_argument("casimir_odd requires odd n >= 3");
    }
    const CasimirSet pair = casimir_even(n + 1);
    std::vector<EPoly> a(2), b(2);
    for (std::size_t i = 0; i < 2; ++i) {
        const EPoly &c = pair.elements[i];
        if (c.degree_in(n + 1) > 1) {
            throw integrity_error("casimir_odd: C" + std::to_string(i) + " has degree "
                                  + std::to_string(c.degree_in(n + 1)) + " in e[" + std::to_string(n + 1)
                                  + "]");
        }
        a[i] = c.coefficient_of(n + 1, 0);
        b[i] = c.coefficient_of(n + 1, 1);
    }
    EPoly c = b[0] * a[1] - b[1] * a[0];
    require_support_in_fn(c, n, "casimir_odd");
    CasimirSet cs;
    cs.n = n;
    cs.kind = CasimirSet::Kind::odd_single;
    cs.elements = {std::move(c)};
    cs.names = {"C"};
    return cs;
}

CasimirSet casimirs(int n)
{
    return is_even(n) ? casimir_even(n) : casimir_odd(n);
}

CasimirSet casimirs_for_pencil(int n, const Rational &l1, const Rational &l2, const Rational &l3)
{
    if (l1 == 0) {
        throw std::invalid_argument("casimirs_for_pencil requires lambda1 != 0");
    }
    CasimirSet cs = casimirs(n);
    const Assignment a{{Symbol::g2, l2 / l1}, {Symbol::g3, l3 / l1}};
    for (auto &e : cs.elements) {
        e = substitute_params(e, a);
    }
    return cs;
}

Report verify_central(const CasimirSet &cs)
{
    return verify_central(cs, BracketSpec::elliptic().with_n(Rational(cs.n)));
}

Report verify_central(const CasimirSet &cs, const BracketSpec &spec)
{
    Report rep("centrality", {{"n", cs.n}, {"bracket", spec.describe()}});
    for (std::size_t i = 0; i < cs.elements.size(); ++i) {
        for (const int g : IndexSet::f_n(cs.n).members()) {
            const EPoly r = bracket_poly(cs.elements[i], EPoly::gen(g), spec);
            if (!r.is_zero()) {
                rep.fail("{" + cs.names[i] + ",e[" + std::to_string(g) + "]}", to_string(r));
            }
        }
    }
    rep.note("elements", cs.elements.size());
    return rep;
}

Report rank1_identity_check(const FMatrix &m)
{
    Report rep("rank1_identity", {{"size", m.size()}});
    const auto k = m.size();
    for (std::size_t a = 1; a <= k; ++a) {
        for (std::size_t ap = a; ap <= k; ++ap) {
            for (std::size_t b = 1; b <= k; ++b) {
                for (std::size_t bp = b; bp <= k; ++bp) {
                    const EPoly r = fmul(m.at(a, b), m.at(ap, bp)) - fmul(m.at(a, bp), m.at(ap, b));
                    if (!r.is_zero()) {
                        rep.fail(int_list({a, b, ap, bp}), to_string(r));
                    }
                }
            }
        }
    }
    return rep;
}

InvolutionFamily involution_members(int n)
{
    if (n < 3) {
        throw std::invalid_argument("involution_family requires n >= 3");
    }
    const CasimirSet cs = casimirs(n);
    const ParamPoly t = ParamPoly::symbol(Symbol::t);
    const ParamPoly shifted_g2 = ParamPoly::symbol(Symbol::g2) + t * ParamPoly::symbol(Symbol::s2);
    const ParamPoly shifted_g3 = ParamPoly::symbol(Symbol::g3) + t * ParamPoly::symbol(Symbol::s3);
    InvolutionFamily fam;
    fam.n = n;
    for (std::size_t i = 0; i < cs.elements.size(); ++i) {
        const EPoly ct = substitute_param(substitute_param(cs.elements[i], Symbol::g2, shifted_g2),
                                          Symbol::g3, shifted_g3);
        unsigned tdeg = 0;
        for (const auto &[m, c] : ct.terms()) {
            tdeg = std::max(tdeg, c.degree(Symbol::t));
        }
        for (unsigned k = 0; k <= tdeg; ++k) {
            // Coefficient of t^k.
            EPoly coeff = ct.map_coefficients([k](const ParamPoly &c) {
                ParamPoly r;
                for (const auto &[e, q] : c.terms()) {
                    if (e[static_cast<std::size_t>(Symbol::t)] == k) {
                        Exponents rest = e;
                        rest[static_cast<std::size_t>(Symbol::t)] = 0;
                        r += ParamPoly::monomial(rest, q);
                    }
                }
                return r;
            });
            if (!coeff.is_zero()) {
                fam.labels.push_back(cs.names[i] + "[t^" + std::to_string(k) + "]");
                fam.members.push_back(std::move(coeff));
            }
        }
    }
    return fam;
}

Report involution_check(const InvolutionFamily &family)
{
    const Rational n(family.n);
    const BracketSpec ba = BracketSpec::elliptic().with_n(n);
    const BracketSpec bb = BracketSpec::custom(ParamPoly(0), ParamPoly::symbol(Symbol::s2),
                                               ParamPoly::symbol(Symbol::s3))
                               .with_n(n);
    Report rep("involution", {{"n", family.n}, {"B_A", ba.describe()}, {"B_B", bb.describe()}});
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        for (std::size_t j = i + 1; j < family.members.size(); ++j) {
            ++pairs;
            for (const auto *spec : {&ba, &bb}) {
                const EPoly r = bracket_poly(family.members[i], family.members[j], *spec);
                if (!r.is_zero()) {
                    rep.fail("{" + family.labels[i] + "," + family.labels[j] + "}_"
                                 + (spec == &ba ? "A" : "B"),
                             to_string(r));
                }
            }
        }
    }
    rep.note("members", family.labels);
    rep.note("pairs", pairs);
    return rep;
}

Report involution_family(int n)
{
    return involution_check(involution_members(n));
}

Report involution_per_basis(int n)
{
    const InvolutionFamily fam = involution_members(n);
    Report rep("involution_per_basis", {{"n", n}});
    for (int i = 1; i <= 3; ++i) {
        const BracketSpec spec = BracketSpec::basis(i).with_n(Rational(n));
        for (std::size_t a = 0; a < fam.members.size(); ++a) {
            for (std::size_t b = a + 1; b < fam.members.size(); ++b) {
                const EPoly r = bracket_poly(fam.members[a], fam.members[b], spec);
                if (!r.is_zero()) {
                    rep.fail("{" + fam.labels[a] + "," + fam.labels[b] + "}_" + std::to_string(i),
                             to_string(r));
                }
            }
        }
    }
    return rep;
}

} // namespace ellpoisson
