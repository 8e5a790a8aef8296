#include "copos/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace copos
{

namespace
{

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

BigInt pow10(unsigned long e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

Rational parse_decimal(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-'))
    {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos)
    {
        std::string_view es = s.substr(epos + 1);
        s = s.substr(0, epos);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-'))
        {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 6)
            throw std::invalid_argument("bad exponent in number: " + std::string(text));
        exponent = std::stol(std::string(es));
        if (eneg)
            exponent = -exponent;
    }

    std::string digits;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos)
    {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
            (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("malformed number: " + std::string(text));
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    }
    else
    {
        if (!all_digits(s))
            throw std::invalid_argument("malformed number: " + std::string(text));
        digits = std::string(s);
    }

    Rational value{BigInt(digits, 10)};
    long shift = exponent - frac_len;
    if (shift > 0)
        value *= Rational(pow10(static_cast<unsigned long>(shift)));
    else if (shift < 0)
        value /= Rational(pow10(static_cast<unsigned long>(-shift)));
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty())
        throw std::invalid_argument("empty rational");

    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return parse_decimal(text);

    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
        num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
        throw std::invalid_argument("malformed rational: " + std::string(text));

    BigInt d(std::string{den}, 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator: " + std::string(text));
    BigInt nn(std::string{num_digits}, 10);
    if (!num.empty() && num.front() == '-')
        nn = -nn;
    Rational q(nn, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_str();
}

std::vector<std::string> to_strings(const RationalPoint& p)
{
    std::vector<std::string> out;
    out.reserve(p.size());
    for (const auto& x : p)
        out.push_back(to_string(x));
    return out;
}

std::vector<double> to_doubles(const RationalPoint& p)
{
    std::vector<double> out;
    out.reserve(p.size());
    for (const auto& x : p)
        out.push_back(x.get_d());
    return out;
}

Rational from_double(double x)
{
    if (!std::isfinite(x))
        throw std::invalid_argument("non-finite value cannot be represented exactly");
    Rational q(x);
    q.canonicalize();
    return q;
}

} // namespace copos
