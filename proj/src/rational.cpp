#include "slashtree/rational.hpp"

#include "slashtree/errors.hpp"

#include <cctype>

namespace slashtree {

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) {
        throw SchemaError("malformed rational '" + std::string(text) + "'");
    }
    std::string n(num.front() == '+' ? num.substr(1) : num);
    std::string d(den.front() == '+' ? den.substr(1) : den);
    BigInt nz(n, 10), dz(d, 10);
    if (dz == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
    Rational q(nz, dz);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

BigInt pow2(unsigned long exponent) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, exponent);
    return r;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

}  // namespace slashtree
