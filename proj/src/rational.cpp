#include "npk/rational.hpp"

#include <cctype>

namespace npk {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q(s, 10);
        if (q.get_den() == 0) throw std::invalid_argument("Rational::parse: zero denominator");
        q.canonicalize();
        return Rational(q);
    }
    // Decimal / scientific form: mantissa [. digits] [e exp]
    std::string t = s;
    long exp10 = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(t.substr(epos + 1));
        t = t.substr(0, epos);
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(t.size() - dot - 1);
        t.erase(dot, 1);
    }
    if (t.empty() || t == "-" || t == "+")
        throw std::invalid_argument("Rational::parse: bad number '" + s + "'");
    for (size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i])))
            throw std::invalid_argument("Rational::parse: bad number '" + s + "'");
    mpz_class mant(t, 10);
    mpq_class q(mant);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        q *= p10;
    else
        q /= p10;
    q.canonicalize();
    return Rational(q);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    Rational base = *this;
    if (e < 0) {
        base = base.reciprocal();
        e = -e;
    }
    Rational acc(1);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool Rational::is_dyadic() const {
    mpz_class d = den();
    // d is positive and in lowest terms; power of two iff d & (d-1) == 0.
    mpz_class m = d & (d - 1);
    return m == 0;
}

}  // namespace npk
