#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ellpoisson/param_poly.hpp"

namespace ellpoisson
{

// Monomial in the generators e_a, a in Z: a sorted multiset of subscripts.
class EMonomial
{
public:
    EMonomial() = default;
    explicit EMonomial(std::vector<int> indices);
    EMonomial(std::initializer_list<int> indices) : EMonomial(std::vector<int>(indices)) {}

    const std::vector<int> &indices() const { return idx_; }
    std::size_t degree() const { return idx_.size(); }
    // Sum of subscripts.
    long weight() const;
    std::size_t count(int a) const;

    friend EMonomial operator*(const EMonomial &a, const EMonomial &b);

    // Removes one occurrence of a; a must occur.
    EMonomial without_one(int a) const;
    // Removes every occurrence of a.
    EMonomial without_all(int a) const;

    // Graded lexicographic: lower degree first, then lexicographic on the
    // sorted subscripts.
    friend std::strong_ordering operator<=>(const EMonomial &a, const EMonomial &b);
    friend bool operator==(const EMonomial &a, const EMonomial &b) = default;

private:
    std::vector<int> idx_;
};

// Element of the symmetric algebra on {e_a : a in Z} with ParamPoly
// coefficients. Canonical: no zero-coefficient terms are stored.
class EPoly
{
public:
    using term_map = std::map<EMonomial, ParamPoly>;

    EPoly() = default;
    EPoly(const ParamPoly &c);
    EPoly(const Rational &c) : EPoly(ParamPoly(c)) {}
    EPoly(long c) : EPoly(ParamPoly(c)) {}

    // The generator e_a.
    static EPoly gen(int a);
    static EPoly term(const ParamPoly &c, const EMonomial &m);

    bool is_zero() const { return terms_.empty(); }
    const term_map &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // Largest monomial degree (0 for constants and for zero).
    std::size_t degree() const;
    bool is_homogeneous_degree(std::size_t d) const;
    // Largest exponent of e_a over all terms.
    std::size_t degree_in(int a) const;

    EPoly &operator+=(const EPoly &o);
    EPoly &operator-=(const EPoly &o);
    EPoly &operator*=(const EPoly &o);
    EPoly &operator*=(const ParamPoly &c);

    friend EPoly operator+(EPoly a, const EPoly &b) { return a += b; }
    friend EPoly operator-(EPoly a, const EPoly &b) { return a -= b; }
    friend EPoly operator*(const EPoly &a, const EPoly &b);
    friend EPoly operator*(EPoly a, const ParamPoly &c) { return a *= c; }
    friend EPoly operator*(const ParamPoly &c, EPoly a) { return a *= c; }
    friend EPoly operator-(EPoly a);
    friend bool operator==(const EPoly &a, const EPoly &b) = default;

    // Partial derivative with respect to the generator e_a.
    EPoly derivative(int a) const;
    // Terms whose monomial has exactly k factors e_a, with those factors removed.
    EPoly coefficient_of(int a, std::size_t k) const;

    // Rewrites every subscript through f (applied per factor); used for the
    // termwise index maps of function multiplication.
    template <typename F>
    EPoly map_indices(F &&f) const
    {
        EPoly r;
        for (const auto &[m, c] : terms_) {
            std::vector<int> idx = m.indices();
            for (auto &a : idx) {
                a = f(a);
            }
            r.add_term(EMonomial(std::move(idx)), c);
        }
        return r;
    }

    template <typename F>
    EPoly map_coefficients(F &&f) const
    {
        EPoly r;
        for (const auto &[m, c] : terms_) {
            r.add_term(m, f(c));
        }
        return r;
    }

    void add_term(const EMonomial &m, const ParamPoly &c);

private:
    term_map terms_;
};

EPoly substitute_params(const EPoly &p, const Assignment &assignment);
EPoly substitute_param(const EPoly &p, Symbol s, const ParamPoly &value);

// Generator subscripts occurring with nonzero coefficient.
std::set<int> support(const EPoly &p);

// Grading: weight(e_a) = a, weight(g2) = 4, weight(g3) = 6, every other
// symbol has weight 0.
struct WeightProfile
{
    enum class Kind { zero, homogeneous, inhomogeneous };
    Kind kind = Kind::zero;
    long weight = 0;

    static WeightProfile of(long w) { return {Kind::homogeneous, w}; }
    friend bool operator==(const WeightProfile &, const WeightProfile &) = default;
};

WeightProfile weight_profile(const EPoly &p);

// Which generators belong to a chosen subspace of the function space.
class IndexSet
{
public:
    enum class Kind { full, f_n, window };

    // All of Z.
    static IndexSet full();
    // {0} union {2..n}: the basis of functions with poles of order <= n.
    static IndexSet f_n(int n);
    // {lo, ..., hi}.
    static IndexSet window(int lo, int hi);

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ != Kind::full; }
    bool contains(int a) const;
    // Ascending members; throws for the infinite set.
    std::vector<int> members() const;
    std::string describe() const;

private:
    IndexSet(Kind k, int lo, int hi) : kind_(k), lo_(lo), hi_(hi) {}

    Kind kind_;
    int lo_;
    int hi_;
};

// Canonical text form: terms in ascending monomial order joined by " + ",
// each rendered "(<coefficient>)*e[a]*e[b]..."; zero is "0".
std::string to_string(const EPoly &p);
// Accepts the canonical form and ordinary infix input ("e[3]^2 - 1/4*g2*e[0]").
// Throws std::invalid_argument on malformed text.
EPoly parse_epoly(std::string_view text);

} // namespace ellpoisson
