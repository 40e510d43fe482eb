#include "relnet/rational.hpp"

#include <cctype>

namespace relnet {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    if (s.empty())
        throw std::invalid_argument("empty rational literal");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.erase(s.begin());
    }

    Rational value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("bad rational literal: " + text);
        BigInt d{den};
        if (d == 0)
            throw std::invalid_argument("zero denominator: " + text);
        value = Rational(BigInt(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty())
            whole = "0";
        if (frac.empty())
            frac = "0";
        if (!all_digits(whole) || !all_digits(frac))
            throw std::invalid_argument("bad decimal literal: " + text);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        value = Rational(BigInt(whole) * scale + BigInt(frac), scale);
    } else {
        if (!all_digits(s))
            throw std::invalid_argument("bad integer literal: " + text);
        value = Rational(BigInt(s));
    }
    if (negative)
        value = -value;
    return value;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal_string(const Rational& r) {
    BigInt den = denominator(r);
    BigInt scale = 1;
    int digits = 0;
    BigInt d = den;
    while (d % 2 == 0) {
        d /= 2;
        ++digits;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++digits;
    }
    if (d != 1)
        return to_string(r);
    BigInt num = numerator(r);
    bool neg = num < 0;
    if (neg)
        num = -num;
    BigInt p10 = boost::multiprecision::pow(BigInt(10), digits);
    num = num * (p10 / den);
    BigInt whole = num / p10;
    BigInt frac = num % p10;
    std::string out = (neg ? "-" : "") + whole.str();
    if (digits > 0) {
        std::string f = frac.str();
        f.insert(f.begin(), digits - static_cast<int>(f.size()), '0');
        while (!f.empty() && f.back() == '0')
            f.pop_back();
        if (!f.empty())
            out += "." + f;
    }
    return out;
}

} // namespace relnet
