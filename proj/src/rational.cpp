#include "tatep/rational.hpp"

#include "tatep/errors.hpp"

#include <cctype>

namespace tatep {

Rational parse_rational(const std::string& raw)
{
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty rational literal");
    std::size_t slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t k = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (k >= t.size()) return false;
        for (; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational literal '" + raw + "'");
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    mpz_class p(num, 10), q(den, 10);
    if (q == 0) throw ParseError("zero denominator in '" + raw + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

}  // namespace tatep
