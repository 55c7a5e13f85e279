#include "ellpoisson/epoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ellpoisson
{

EMonomial::EMonomial(std::vector<int> indices) : idx_(std::move(indices))
{
    std::sort(idx_.begin(), idx_.end());
}

long EMonomial::weight() const
{
    return std::accumulate(idx_.begin(), idx_.end(), 0L);
}

std::size_t EMonomial::count(int a) const
{
    const auto [lo, hi] = std::equal_range(idx_.begin(), idx_.end(), a);
    return static_cast<std::size_t>(hi - lo);
}

EMonomial operator*(const EMonomial &a, const EMonomial &b)
{
    EMonomial r;
    r.idx_.reserve(a.idx_.size() + b.idx_.size());
    std::merge(a.idx_.begin(), a.idx_.end(), b.idx_.begin(), b.idx_.end(),
               std::back_inserter(r.idx_));
    return r;
}

EMonomial EMonomial::without_one(int a) const
{
    EMonomial r = *this;
    const auto it = std::lower_bound(r.idx_.begin(), r.idx_.end(), a);
    if (it == r.idx_.end() || *it != a) {
        throw std::logic_error("EMonomial::without_one: factor not present");
    }
    r.idx_.erase(it);
    return r;
}

EMonomial EMonomial::without_all(int a) const
{
    EMonomial r = *this;
    std::erase(r.idx_, a);
    return r;
}

std::strong_ordering operator<=>(const EMonomial &a, const EMonomial &b)
{
    if (auto c = a.idx_.size() <=> b.idx_.size(); c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(a.idx_.begin(), a.idx_.end(),
                                                  b.idx_.begin(), b.idx_.end());
}

EPoly::EPoly(const ParamPoly &c)
{
    add_term(EMonomial{}, c);
}

EPoly EPoly::gen(int a)
{
    return term(ParamPoly(1), EMonomial{a});
}

EPoly EPoly::term(const ParamPoly &c, const EMonomial &m)
{
    EPoly p;
    p.add_term(m, c);
    return p;
}

void EPoly::add_term(const EMonomial &m, const ParamPoly &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

std::size_t EPoly::degree() const
{
    std::size_t d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.degree());
    }
    return d;
}

bool EPoly::is_homogeneous_degree(std::size_t d) const
{
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto &t) { return t.first.degree() == d; });
}

std::size_t EPoly::degree_in(int a) const
{
    std::size_t d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.count(a));
    }
    return d;
}

EPoly &EPoly::operator+=(const EPoly &o)
{
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

EPoly &EPoly::operator-=(const EPoly &o)
{
    for (const auto &[m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

EPoly operator*(const EPoly &a, const EPoly &b)
{
    EPoly r;
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

EPoly &EPoly::operator*=(const EPoly &o)
{
    *this = *this * o;
    return *this;
}

EPoly &EPoly::operator*=(const ParamPoly &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_) {
        v *= c;
    }
    // Products of nonzero polynomials over Q are nonzero.
    return *this;
}

EPoly operator-(EPoly a)
{
    for (auto &[m, v] : a.terms_) {
        v = -v;
    }
    return a;
}

EPoly EPoly::derivative(int a) const
{
    EPoly r;
    for (const auto &[m, c] : terms_) {
        const auto k = m.count(a);
        if (k == 0) {
            continue;
        }
        ParamPoly coeff = c;
        coeff *= Rational(static_cast<long>(k));
        r.add_term(m.without_one(a), coeff);
    }
    return r;
}

EPoly EPoly::coefficient_of(int a, std::size_t k) const
{
    EPoly r;
    for (const auto &[m, c] : terms_) {
        if (m.count(a) == k) {
            r.add_term(m.without_all(a), c);
        }
    }
    return r;
}

EPoly substitute_params(const EPoly &p, const Assignment &assignment)
{
    if (assignment.empty()) {
        return p;
    }
    return p.map_coefficients([&](const ParamPoly &c) { return c.substitute(assignment); });
}

EPoly substitute_param(const EPoly &p, Symbol s, const ParamPoly &value)
{
    return p.map_coefficients([&](const ParamPoly &c) { return c.substitute(s, value); });
}

std::set<int> support(const EPoly &p)
{
    std::set<int> s;
    for (const auto &[m, c] : p.terms()) {
        s.insert(m.indices().begin(), m.indices().end());
    }
    return s;
}

WeightProfile weight_profile(const EPoly &p)
{
    if (p.is_zero()) {
        return {};
    }
    std::optional<long> w;
    for (const auto &[m, c] : p.terms()) {
        for (const auto &[e, q] : c.terms()) {
            const long tw = m.weight() + 4L * e[static_cast<std::size_t>(Symbol::g2)]
                            + 6L * e[static_cast<std::size_t>(Symbol::g3)];
            if (!w) {
                w = tw;
            } else if (*w != tw) {
                return {WeightProfile::Kind::inhomogeneous, 0};
            }
        }
    }
    return WeightProfile::of(*w);
}

IndexSet IndexSet::full()
{
    return {Kind::full, 0, 0};
}

IndexSet IndexSet::f_n(int n)
{
    if (n < 1) {
        throw std::invalid_argument("F_n requires n >= 1");
    }
    return {Kind::f_n, 0, n};
}

IndexSet IndexSet::window(int lo, int hi)
{
    if (lo > hi) {
        // Empty window.
        return {Kind::window, 1, 0};
    }
    return {Kind::window, lo, hi};
}

bool IndexSet::contains(int a) const
{
    switch (kind_) {
    case Kind::full:
        return true;
    case Kind::f_n:
        return a == 0 || (a >= 2 && a <= hi_);
    case Kind::window:
        return a >= lo_ && a <= hi_;
    }
    return false;
}

std::vector<int> IndexSet::members() const
{
    if (!finite()) {
        throw std::logic_error("IndexSet::members on the infinite index set");
    }
    std::vector<int> out;
    for (int a = lo_; a <= hi_; ++a) {
        if (contains(a)) {
            out.push_back(a);
        }
    }
    return out;
}

std::string IndexSet::describe() const
{
    switch (kind_) {
    case Kind::full:
        return "Z";
    case Kind::f_n:
        return "F_" + std::to_string(hi_);
    case Kind::window:
        if (lo_ > hi_) {
            return "{}";
        }
        return std::to_string(lo_) + ".." + std::to_string(hi_);
    }
    return {};
}

std::string to_string(const EPoly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : p.terms()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << '(' << c.to_string() << ')';
        for (const int a : m.indices()) {
            os << "*e[" << a << ']';
        }
    }
    return os.str();
}

namespace
{

// Recursive-descent parser over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power ('*' power)*
//   power  := atom ['^' uint]
//   atom   := uint ['/' uint] | symbol | 'e' '[' int ']' | '(' expr ')'
class Parser
{
public:
    explicit Parser(std::string_view s) : s_(s) {}

    EPoly parse()
    {
        EPoly r = expr();
        skip_ws();
        if (pos_ != s_.size()) {
            fail("trailing input");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw std::invalid_argument("parse_epoly: " + what + " at offset " + std::to_string(pos_)
                                    + " in '" + std::string(s_) + "'");
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    std::string digits()
    {
        skip_ws();
        const auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected digits");
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    EPoly expr()
    {
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        EPoly r = term();
        if (negate) {
            r = -r;
        }
        for (;;) {
            if (accept('+')) {
                r += term();
            } else if (accept('-')) {
                r -= term();
            } else {
                return r;
            }
        }
    }

    EPoly term()
    {
        EPoly r = power();
        while (accept('*')) {
            r *= power();
        }
        return r;
    }

    EPoly power()
    {
        EPoly base = atom();
        if (accept('^')) {
            const auto k = std::stoul(digits());
            EPoly r(1);
            for (unsigned long i = 0; i < k; ++i) {
                r *= base;
            }
            return r;
        }
        return base;
    }

    EPoly atom()
    {
        skip_ws();
        if (pos_ >= s_.size()) {
            fail("unexpected end of input");
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            EPoly r = expr();
            expect(')');
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            skip_ws();
            // A '/' directly after an integer literal always forms a rational literal.
            if (accept('/')) {
                num += "/" + digits();
            }
            return EPoly(parse_rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const auto start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            const auto name = s_.substr(start, pos_ - start);
            if (name == "e") {
                expect('[');
                bool neg = accept('-');
                if (!neg) {
                    accept('+');
                }
                const int a = std::stoi(digits());
                expect(']');
                return EPoly::gen(neg ? -a : a);
            }
            const auto sym = symbol_from_name(name);
            if (!sym) {
                fail("unknown symbol '" + std::string(name) + "'");
            }
            return EPoly(ParamPoly::symbol(*sym));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

EPoly parse_epoly(std::string_view text)
{
    return Parser(text).parse();
}

} // namespace ellpoisson
