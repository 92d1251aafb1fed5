#include "sgf/arith.hpp"

#include <stdexcept>

namespace sgf::arith {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return make_rational(Integer(s), 1);
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

bool is_prime(std::uint64_t n) {
    mpz_class z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

namespace {

void require_positive(const Rational& alpha) {
    if (alpha <= 0) throw std::domain_error("base-p expansion requires a positive argument");
}

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::domain_error("base must be prime");
}

// alpha = N + beta with beta in (0,1]: N = ceil(alpha) - 1.
Integer upper_integer_part(const Rational& alpha) {
    Integer n;
    mpz_cdiv_q(n.get_mpz_t(), alpha.get_num().get_mpz_t(), alpha.get_den().get_mpz_t());
    return n - 1;
}

}  // namespace

Rational truncate(const Rational& alpha, std::uint64_t p, unsigned e) {
    require_positive(alpha);
    require_prime(p);
    Integer n = upper_integer_part(alpha);
    Rational beta = alpha - Rational(n);
    // <beta>_e = (ceil(beta * p^e) - 1) / p^e for beta in (0,1].
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
    Integer num = beta.get_num() * pe;
    Integer k;
    mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), beta.get_den().get_mpz_t());
    return Rational(n) + make_rational(k - 1, pe);
}

unsigned digit_at(const Rational& alpha, std::uint64_t p, unsigned s) {
    if (s == 0) throw std::domain_error("digit positions start at 1");
    DigitStream stream(alpha, p);
    unsigned d = 0;
    for (unsigned i = 0; i < s; ++i) d = stream.next();
    return d;
}

std::vector<Rational> truncate_vector(std::span<const Rational> t, std::uint64_t p, unsigned e) {
    std::vector<Rational> out;
    out.reserve(t.size());
    for (const auto& x : t) out.push_back(truncate(x, p, e));
    return out;
}

Integer mult_order(std::uint64_t p, const Integer& b) {
    if (b < 1) throw std::domain_error("mult_order requires b >= 1");
    if (b == 1) return 1;
    Integer pz(static_cast<unsigned long>(p));
    if (mpz_divisible_p(b.get_mpz_t(), pz.get_mpz_t())) throw std::domain_error("mult_order requires gcd(p, b) = 1");
    Integer g;
    mpz_gcd(g.get_mpz_t(), pz.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw std::domain_error("mult_order requires gcd(p, b) = 1");
    Integer r = pz % b;
    Integer mu = 1;
    while (r != 1) {
        r = (r * pz) % b;
        ++mu;
    }
    return mu;
}

DigitStream::DigitStream(const Rational& alpha, std::uint64_t p) : p_(p) {
    require_positive(alpha);
    require_prime(p);
    int_part_ = upper_integer_part(alpha);
    frac_ = alpha - Rational(int_part_);
}

unsigned DigitStream::next() {
    frac_ *= static_cast<unsigned long>(p_);
    Integer n = upper_integer_part(frac_);
    frac_ -= Rational(n);
    return static_cast<unsigned>(n.get_ui());
}

}  // namespace sgf::arith
