#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ellpoisson/rational.hpp"

namespace ellpoisson
{

// Formal symbols of the coefficient ring, in canonical order.
enum class Symbol : std::uint8_t { n, g2, g3, lambda1, lambda2, lambda3, t, s2, s3 };

inline constexpr std::size_t symbol_count = 9;

std::string_view symbol_name(Symbol s);
std::optional<Symbol> symbol_from_name(std::string_view name);

using Exponents = std::array<std::uint16_t, symbol_count>;

// Partial assignment of formal symbols.
using Assignment = std::map<Symbol, Rational>;
using NumericAssignment = std::map<Symbol, std::complex<double>>;

// Polynomial over Q in the formal symbols. No zero coefficient is ever stored,
// so structural equality is mathematical equality.
class ParamPoly
{
public:
    using term_map = std::map<Exponents, Rational>;

    ParamPoly() = default;
    ParamPoly(const Rational &c);
    ParamPoly(long c) : ParamPoly(Rational(c)) {}

    static ParamPoly symbol(Symbol s, std::uint16_t power = 1);
    static ParamPoly monomial(const Exponents &e, const Rational &c);

    bool is_zero() const { return terms_.empty(); }
    const term_map &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // Set when the polynomial has no symbol dependence.
    std::optional<Rational> constant_value() const;
    unsigned degree(Symbol s) const;

    ParamPoly &operator+=(const ParamPoly &o);
    ParamPoly &operator-=(const ParamPoly &o);
    ParamPoly &operator*=(const ParamPoly &o);
    ParamPoly &operator*=(const Rational &c);

    friend ParamPoly operator+(ParamPoly a, const ParamPoly &b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly &b) { return a -= b; }
    friend ParamPoly operator*(const ParamPoly &a, const ParamPoly &b);
    friend ParamPoly operator-(ParamPoly a);
    friend bool operator==(const ParamPoly &a, const ParamPoly &b) = default;

    ParamPoly substitute(const Assignment &a) const;
    // Replaces symbol s by an arbitrary polynomial.
    ParamPoly substitute(Symbol s, const ParamPoly &value) const;
    std::complex<double> evaluate(const NumericAssignment &a) const;

    // Terms in descending exponent order, e.g. "-1/2*n + 2". Zero is "0".
    std::string to_string() const;

private:
    void add_term(const Exponents &e, const Rational &c);

    term_map terms_;
};

} // namespace ellpoisson
