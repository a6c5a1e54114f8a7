#include "domatic/rational.hpp"

#include <stdexcept>

namespace domatic {

Rational pow2_neg(unsigned exponent) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
    return Rational(mpz_class(1), den);
}

Rational pow(const Rational& base, unsigned long exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational out(num, den);
    out.canonicalize();
    return out;
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(mpz_class(std::string(text)));
        }
        mpz_class num(std::string(text.substr(0, slash)));
        mpz_class den(std::string(text.substr(slash + 1)));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace domatic
