#include "synkernel/rational.hpp"

#include <stdexcept>

namespace synkernel {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
        throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    std::string d(den.front() == '+' ? den.substr(1) : den);
    Integer nz(n, 10), dz(d, 10);
    if (dz == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    Rational q(nz, dz);
    q.canonicalize();
    return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long valuation(const Integer& n, long p) {
    if (n == 0) return 0;
    Integer rest;
    Integer prime(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

std::optional<long> valuation(const Rational& q, long p) {
    if (q == 0) return std::nullopt;
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace synkernel
