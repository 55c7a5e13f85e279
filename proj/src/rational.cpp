#include "ellpoisson/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ellpoisson
{

Rational make_rational(long num, long den)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace
{

bool is_integer_text(std::string_view s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        ++i;
    }
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s)
{
    if (!is_integer_text(s)) {
        throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
    }
    std::string buf(s);
    if (buf.front() == '+') {
        buf.erase(0, 1);
    }
    return mpz_class(buf, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    const auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
        throw std::invalid_argument("signed denominator: '" + std::string(text) + "'");
    }
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(den_text);
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q)
{
    return q.get_str(10);
}

double to_double(const Rational &q)
{
    return q.get_d();
}

} // namespace ellpoisson
