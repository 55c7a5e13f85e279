#include "ellpoisson/brackets.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace ellpoisson
{

namespace
{

bool is_even(int a)
{
    return a % 2 == 0;
}

// Even subscripts are written 2a, odd ones 2a+3.
int half_even(int alpha)
{
    return alpha / 2;
}

int half_odd(int alpha)
{
    return (alpha - 3) / 2;
}

EPoly quad(const Rational &c, int a, int b)
{
    return EPoly::term(ParamPoly(c), EMonomial{a, b});
}

const ParamPoly &sym_n()
{
    static const ParamPoly n = ParamPoly::symbol(Symbol::n);
    return n;
}

ParamPoly n_times(const Rational &c)
{
    ParamPoly r = sym_n();
    r *= c;
    return r;
}

EPoly bracket_one(int alpha, int beta)
{
    EPoly r = n_times(Rational(1, 2)) * s_diff({1, alpha + 1, beta, beta + 1, alpha});
    // (alpha - n) e_{alpha+1} e_beta - (beta - n) e_alpha e_{beta+1}
    r += EPoly::term(ParamPoly(alpha) - sym_n(), EMonomial{alpha + 1, beta});
    r -= EPoly::term(ParamPoly(beta) - sym_n(), EMonomial{alpha, beta + 1});
    return r;
}

EPoly bracket_two(int alpha, int beta)
{
    if (is_even(alpha) && is_even(beta)) {
        return {};
    }
    if (!is_even(alpha) && is_even(beta)) {
        return -bracket_two(beta, alpha);
    }
    if (is_even(alpha)) {
        const int a = half_even(alpha);
        const int b = half_odd(beta);
        EPoly r = n_times(Rational(1, 8)) * s_diff({2, 2 * b + 2, 2 * a - 2, 2 * a, 2 * b});
        r += quad(Rational(2 * b + 1, 4), 2 * a, 2 * b);
        return r;
    }
    const int a = half_odd(alpha);
    const int b = half_odd(beta);
    EPoly r = n_times(Rational(1, 4)) * s_diff({2, 2 * b + 2, 2 * a + 1, 2 * a + 2, 2 * b + 1});
    r -= quad(Rational(2 * a + 1, 4), 2 * a, 2 * b + 3);
    r += quad(Rational(2 * b + 1, 4), 2 * a + 3, 2 * b);
    return r;
}

EPoly bracket_three(int alpha, int beta)
{
    if (is_even(alpha) && is_even(beta)) {
        return {};
    }
    if (!is_even(alpha) && is_even(beta)) {
        return -bracket_three(beta, alpha);
    }
    if (is_even(alpha)) {
        const int a = half_even(alpha);
        const int b = half_odd(beta);
        EPoly r = n_times(Rational(1, 8)) * s_diff({2, 2 * b, 2 * a - 2, 2 * a, 2 * b - 2});
        r += quad(Rational(b, 2), 2 * a, 2 * b - 2);
        return r;
    }
    const int a = half_odd(alpha);
    const int b = half_odd(beta);
    EPoly r = n_times(Rational(1, 4)) * s_diff({2, 2 * b, 2 * a + 1, 2 * a, 2 * b + 1});
    r -= quad(Rational(a, 2), 2 * a - 2, 2 * b + 3);
    r += quad(Rational(b, 2), 2 * a + 3, 2 * b - 2);
    return r;
}

using GeneratorTable = std::map<std::pair<int, int>, EPoly>;

// Brackets of every supp(P) x supp(Q) generator pair, each computed once.
GeneratorTable generator_table(const std::set<int> &left, const std::set<int> &right,
                               const BracketSpec &spec)
{
    GeneratorTable table;
    for (const int a : left) {
        for (const int b : right) {
            if (table.count({a, b})) {
                continue;
            }
            if (auto it = table.find({b, a}); it != table.end()) {
                table.emplace(std::pair{a, b}, -it->second);
                continue;
            }
            table.emplace(std::pair{a, b}, bracket_generators(a, b, spec));
        }
    }
    return table;
}

} // namespace

BracketSpec BracketSpec::basis(int i)
{
    if (i < 1 || i > 3) {
        throw std::invalid_argument("basis bracket index must be 1, 2 or 3");
    }
    BracketSpec s;
    (i == 1 ? s.c1 : i == 2 ? s.c2 : s.c3) = ParamPoly(1);
    return s;
}

BracketSpec BracketSpec::elliptic()
{
    return custom(ParamPoly(1), ParamPoly::symbol(Symbol::g2), ParamPoly::symbol(Symbol::g3));
}

BracketSpec BracketSpec::custom(ParamPoly l1, ParamPoly l2, ParamPoly l3)
{
    BracketSpec s;
    s.c1 = std::move(l1);
    s.c2 = std::move(l2);
    s.c3 = std::move(l3);
    return s;
}

BracketSpec BracketSpec::formal_pencil()
{
    return custom(ParamPoly::symbol(Symbol::lambda1), ParamPoly::symbol(Symbol::lambda2),
                  ParamPoly::symbol(Symbol::lambda3));
}

BracketSpec BracketSpec::with_n(const Rational &n) const
{
    BracketSpec s = *this;
    s.n_value = n;
    return s;
}

std::string BracketSpec::describe() const
{
    std::string s = "(" + c1.to_string() + ")*B1 + (" + c2.to_string() + ")*B2 + ("
                    + c3.to_string() + ")*B3";
    s += n_value ? ", n=" + to_string(*n_value) : ", n formal";
    return s;
}

EPoly s_diff(const SDiffSpec &spec)
{
    const auto [k, a, b, c, d] = spec;
    if (k <= 0) {
        throw std::invalid_argument("s_diff: k must be positive");
    }
    if (a + b != c + d) {
        throw std::invalid_argument("s_diff: index sums differ");
    }
    if ((((a - c) % k) + k) % k != 0) {
        throw std::invalid_argument("s_diff: first indices not congruent mod k");
    }
    if (a > c) {
        return -s_diff({k, c, d, a, b});
    }
    EPoly r;
    const int terms = (c - a) / k;
    for (int i = 0; i < terms; ++i) {
        r.add_term(EMonomial{a + k * i, b - k * i}, ParamPoly(1));
    }
    return r;
}

EPoly bracket_basis(int i, int alpha, int beta)
{
    switch (i) {
    case 1:
        return bracket_one(alpha, beta);
    case 2:
        return bracket_two(alpha, beta);
    case 3:
        return bracket_three(alpha, beta);
    default:
        throw std::invalid_argument("basis bracket index must be 1, 2 or 3");
    }
}

EPoly bracket_generators(int alpha, int beta, const BracketSpec &spec)
{
    EPoly r;
    if (!spec.c1.is_zero()) {
        r += spec.c1 * bracket_basis(1, alpha, beta);
    }
    if (!spec.c2.is_zero()) {
        r += spec.c2 * bracket_basis(2, alpha, beta);
    }
    if (!spec.c3.is_zero()) {
        r += spec.c3 * bracket_basis(3, alpha, beta);
    }
    if (spec.n_value) {
        r = substitute_params(r, {{Symbol::n, *spec.n_value}});
    }
    return r;
}

EPoly bracket_poly(const EPoly &p, const EPoly &q, const BracketSpec &spec)
{
    const auto sp = support(p);
    const auto sq = support(q);
    if (sp.empty() || sq.empty()) {
        return {};
    }
    const auto table = generator_table(sp, sq, spec);
    std::map<int, EPoly> dq;
    for (const int b : sq) {
        dq.emplace(b, q.derivative(b));
    }
    EPoly r;
    for (const int a : sp) {
        const EPoly dp = p.derivative(a);
        // inner = sum_b {e_a, e_b} dQ/de_b
        EPoly inner;
        for (const int b : sq) {
            const auto &g = table.at({a, b});
            if (!g.is_zero()) {
                inner += g * dq.at(b);
            }
        }
        if (!inner.is_zero()) {
            r += dp * inner;
        }
    }
    return r;
}

EPoly jacobiator(const EPoly &p, const EPoly &q, const EPoly &r, const BracketSpec &spec)
{
    EPoly j = bracket_poly(p, bracket_poly(q, r, spec), spec);
    j += bracket_poly(q, bracket_poly(r, p, spec), spec);
    j += bracket_poly(r, bracket_poly(p, q, spec), spec);
    return j;
}

Report verify_jacobi_window(const IndexSet &window, const BracketSpec &spec)
{
    Report rep("jacobi", {{"window", window.describe()}, {"bracket", spec.describe()}});
    const auto gens = window.members();
    std::size_t triples = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i; j < gens.size(); ++j) {
            for (std::size_t k = j; k < gens.size(); ++k) {
                ++triples;
                const EPoly res = jacobiator(EPoly::gen(gens[i]), EPoly::gen(gens[j]),
                                             EPoly::gen(gens[k]), spec);
                if (!res.is_zero()) {
                    rep.fail("(" + std::to_string(gens[i]) + "," + std::to_string(gens[j]) + ","
                                 + std::to_string(gens[k]) + ")",
                             to_string(res));
                }
            }
        }
    }
    rep.note("triples", triples);
    return rep;
}

Report verify_closure(int n, const BracketSpec &spec)
{
    if (n < 2) {
        throw std::invalid_argument("verify_closure requires n >= 2");
    }
    const BracketSpec fixed = spec.with_n(Rational(n));
    const auto fn = IndexSet::f_n(n);
    Report rep("closure", {{"n", n}, {"bracket", fixed.describe()}});
    const auto gens = fn.members();
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            const EPoly b = bracket_generators(gens[i], gens[j], fixed);
            if (!b.is_zero()) {
                ++nonzero;
            }
            for (const int a : support(b)) {
                if (!fn.contains(a)) {
                    rep.fail("{e[" + std::to_string(gens[i]) + "],e[" + std::to_string(gens[j])
                                 + "]} contains e[" + std::to_string(a) + "]",
                             to_string(b));
                    break;
                }
            }
        }
    }
    rep.note("nonzero_brackets", nonzero);
    return rep;
}

} // namespace ellpoisson
