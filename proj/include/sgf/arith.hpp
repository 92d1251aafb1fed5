#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Exact rational arithmetic and base-p digit machinery.
//
// Every positive real handled here is rational, and base-p expansions follow
// the non-terminating convention: the e-th truncation of alpha is the unique
// lambda with denominator dividing p^e such that lambda < alpha <= lambda + p^-e.
// In particular integers expand as N = (N-1).(p-1)(p-1)..., so <N>_e = N - p^-e.

namespace sgf::arith {

using Integer  = mpz_class;
using Rational = mpq_class;

/// Builds a reduced rational with positive denominator. Throws on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// "num/den" rendering (denominator always printed, e.g. "1/1").
std::string to_string(const Rational& r);

/// Parses "num", "num/den", or a decimal-free integer string.
Rational rational_from_string(const std::string& s);

bool is_prime(std::uint64_t n);

/// e-th truncation of alpha > 0 base p: unique lambda in Q_{p^e} with
/// lambda < alpha <= lambda + p^{-e}.
Rational truncate(const Rational& alpha, std::uint64_t p, unsigned e);

/// s-th digit (s >= 1) of the non-terminating base-p expansion of the
/// fractional (0,1]-part of alpha > 0.
unsigned digit_at(const Rational& alpha, std::uint64_t p, unsigned s);

std::vector<Rational> truncate_vector(std::span<const Rational> t, std::uint64_t p, unsigned e);

/// Least mu >= 1 with p^mu = 1 (mod b); mu = 1 for b = 1. Throws if p | b, b > 1.
Integer mult_order(std::uint64_t p, const Integer& b);

/// Digits in [0, p), fixed base.
struct DigitVector {
    std::uint64_t p = 0;
    std::vector<unsigned> digits;
};

/// Lazy digit stream of the non-terminating base-p expansion of alpha > 0.
/// Splits alpha = N + beta with beta in (0,1] and emits the digits of beta
/// by repeated multiplication by p on exact rationals.
class DigitStream {
  public:
    DigitStream(const Rational& alpha, std::uint64_t p);

    const Integer& integer_part() const { return int_part_; }

    /// Next digit; first call yields digit s = 1.
    unsigned next();

  private:
    std::uint64_t p_;
    Integer int_part_;
    Rational frac_;  // remaining tail, always in (0, 1]
};

}  // namespace sgf::arith
