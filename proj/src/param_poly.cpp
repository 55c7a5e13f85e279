#include "ellpoisson/param_poly.hpp"

#include <algorithm>
#include <sstream>

namespace ellpoisson
{

namespace
{

constexpr std::array<std::string_view, symbol_count> symbol_names
    = {"n", "g2", "g3", "lambda1", "lambda2", "lambda3", "t", "s2", "s3"};

Exponents add_exponents(const Exponents &a, const Exponents &b)
{
    Exponents r{};
    for (std::size_t i = 0; i < symbol_count; ++i) {
        r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    }
    return r;
}

template <typename T>
T int_power(T base, unsigned e)
{
    T result(1);
    while (e) {
        if (e & 1u) {
            result *= base;
        }
        base *= base;
        e >>= 1u;
    }
    return result;
}

} // namespace

std::string_view symbol_name(Symbol s)
{
    return symbol_names[static_cast<std::size_t>(s)];
}

std::optional<Symbol> symbol_from_name(std::string_view name)
{
    for (std::size_t i = 0; i < symbol_count; ++i) {
        if (symbol_names[i] == name) {
            return static_cast<Symbol>(i);
        }
    }
    return std::nullopt;
}

ParamPoly::ParamPoly(const Rational &c)
{
    if (c != 0) {
        terms_.emplace(Exponents{}, c);
    }
}

ParamPoly ParamPoly::symbol(Symbol s, std::uint16_t power)
{
    Exponents e{};
    e[static_cast<std::size_t>(s)] = power;
    return monomial(e, Rational(1));
}

ParamPoly ParamPoly::monomial(const Exponents &e, const Rational &c)
{
    ParamPoly p;
    p.add_term(e, c);
    return p;
}

std::optional<Rational> ParamPoly::constant_value() const
{
    if (terms_.empty()) {
        return Rational(0);
    }
    if (terms_.size() == 1 && terms_.begin()->first == Exponents{}) {
        return terms_.begin()->second;
    }
    return std::nullopt;
}

unsigned ParamPoly::degree(Symbol s) const
{
    unsigned d = 0;
    for (const auto &[e, c] : terms_) {
        d = std::max<unsigned>(d, e[static_cast<std::size_t>(s)]);
    }
    return d;
}

void ParamPoly::add_term(const Exponents &e, const Rational &c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

ParamPoly &ParamPoly::operator+=(const ParamPoly &o)
{
    for (const auto &[e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

ParamPoly &ParamPoly::operator-=(const ParamPoly &o)
{
    for (const auto &[e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

ParamPoly operator*(const ParamPoly &a, const ParamPoly &b)
{
    ParamPoly r;
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            r.add_term(add_exponents(ea, eb), ca * cb);
        }
    }
    return r;
}

ParamPoly &ParamPoly::operator*=(const ParamPoly &o)
{
    *this = *this * o;
    return *this;
}

ParamPoly &ParamPoly::operator*=(const Rational &c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, v] : terms_) {
        v *= c;
    }
    return *this;
}

ParamPoly operator-(ParamPoly a)
{
    for (auto &[e, v] : a.terms_) {
        v = -v;
    }
    return a;
}

ParamPoly ParamPoly::substitute(const Assignment &a) const
{
    if (a.empty()) {
        return *this;
    }
    ParamPoly r;
    for (const auto &[e, c] : terms_) {
        Exponents rest = e;
        Rational coeff = c;
        for (const auto &[sym, value] : a) {
            auto &k = rest[static_cast<std::size_t>(sym)];
            if (k != 0) {
                coeff *= int_power(value, k);
                k = 0;
            }
        }
        r.add_term(rest, coeff);
    }
    return r;
}

ParamPoly ParamPoly::substitute(Symbol s, const ParamPoly &value) const
{
    const auto idx = static_cast<std::size_t>(s);
    ParamPoly r;
    std::map<unsigned, ParamPoly> powers;
    for (const auto &[e, c] : terms_) {
        Exponents rest = e;
        const unsigned k = rest[idx];
        rest[idx] = 0;
        auto it = powers.find(k);
        if (it == powers.end()) {
            it = powers.emplace(k, int_power(value, k)).first;
        }
        r += monomial(rest, c) * it->second;
    }
    return r;
}

std::complex<double> ParamPoly::evaluate(const NumericAssignment &a) const
{
    std::complex<double> sum = 0.0;
    for (const auto &[e, c] : terms_) {
        std::complex<double> term = c.get_d();
        for (std::size_t i = 0; i < symbol_count; ++i) {
            if (e[i] == 0) {
                continue;
            }
            const auto it = a.find(static_cast<Symbol>(i));
            if (it == a.end()) {
                throw std::invalid_argument("no numeric value for symbol '"
                                            + std::string(symbol_names[i]) + "'");
            }
            term *= int_power(it->second, e[i]);
        }
        sum += term;
    }
    return sum;
}

std::string ParamPoly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[e, c] = *it;
        const bool negative = c < 0;
        if (first) {
            if (negative) {
                os << '-';
            }
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const Rational mag = abs(c);
        const bool constant = e == Exponents{};
        bool need_star = false;
        if (constant || mag != 1) {
            os << ellpoisson::to_string(mag);
            need_star = true;
        }
        for (std::size_t i = 0; i < symbol_count; ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (need_star) {
                os << '*';
            }
            os << symbol_names[i];
            if (e[i] > 1) {
                os << '^' << e[i];
            }
            need_star = true;
        }
    }
    return os.str();
}

} // namespace ellpoisson
