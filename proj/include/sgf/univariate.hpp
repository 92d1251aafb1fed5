#pragma once

#include "sgf/gf.hpp"

#include <cstdint>
#include <utility>
#include <vector>

// Dense univariate polynomials over a finite field, low degree first.
// Coefficients are stored flat, field.deg() words apiece. This is the
// workhorse behind factorization and root finding; binary forms in two
// variables reduce to it by dehomogenization.

namespace sgf::poly {

using gf::Field;
using gf::FieldElement;
using gf::FieldPtr;
using arith::Integer;

struct UniPoly {
    FieldPtr field;
    std::vector<std::uint64_t> coeffs;  // flat; empty means the zero polynomial

    UniPoly() = default;
    explicit UniPoly(FieldPtr f) : field(std::move(f)) {}

    unsigned k() const { return field->deg(); }
    std::size_t ncoeffs() const { return coeffs.size() / k(); }
    int degree() const { return static_cast<int>(ncoeffs()) - 1; }
    bool is_zero() const { return coeffs.empty(); }

    const std::uint64_t* at(std::size_t i) const { return coeffs.data() + i * k(); }
    std::uint64_t* at(std::size_t i) { return coeffs.data() + i * k(); }

    FieldElement coeff(std::size_t i) const { return field->wrap(at(i)); }
    FieldElement lead() const { return field->wrap(at(ncoeffs() - 1)); }

    void trim();
    void resize_coeffs(std::size_t n) { coeffs.resize(n * k(), 0); }

    static UniPoly zero(FieldPtr f) { return UniPoly(std::move(f)); }
    static UniPoly one(FieldPtr f);
    static UniPoly x(FieldPtr f);
    static UniPoly constant(FieldPtr f, const FieldElement& c);
    static UniPoly from_elements(FieldPtr f, const std::vector<FieldElement>& elems);
};

bool u_eq(const UniPoly& a, const UniPoly& b);
UniPoly u_add(const UniPoly& a, const UniPoly& b);
UniPoly u_sub(const UniPoly& a, const UniPoly& b);
UniPoly u_mul(const UniPoly& a, const UniPoly& b);
UniPoly u_scale(const UniPoly& a, const FieldElement& c);

/// Quotient-and-remainder; b nonzero.
std::pair<UniPoly, UniPoly> u_divrem(const UniPoly& a, const UniPoly& b);
UniPoly u_rem(const UniPoly& a, const UniPoly& b);
UniPoly u_quot_exact(const UniPoly& a, const UniPoly& b);

/// Monic gcd (zero if both inputs are zero).
UniPoly u_gcd(UniPoly a, UniPoly b);
UniPoly u_monic(const UniPoly& a);
UniPoly u_derivative(const UniPoly& a);
UniPoly u_powmod(const UniPoly& base, const Integer& e, const UniPoly& mod);
FieldElement u_eval(const UniPoly& a, const FieldElement& x);

/// For f with f' = 0, returns g with g(t^p) = f via coefficient p-th roots.
UniPoly u_pth_root_poly(const UniPoly& f);

/// Square-free decomposition of a monic polynomial: pairwise coprime monic
/// square-free parts with multiplicities, product reproducing the input.
std::vector<std::pair<UniPoly, unsigned>> squarefree_decomposition(const UniPoly& f);

/// Distinct-degree split of a monic square-free polynomial: (product, d) pairs.
std::vector<std::pair<UniPoly, unsigned>> distinct_degree_split(const UniPoly& f);

/// Cantor-Zassenhaus: monic square-free f, all irreducible factors of degree d.
/// Deterministic for a fixed seed.
std::vector<UniPoly> equal_degree_split(const UniPoly& f, unsigned d, std::uint64_t seed);

/// Full factorization into monic irreducibles with multiplicities.
std::vector<std::pair<UniPoly, unsigned>> u_factor(const UniPoly& f, std::uint64_t seed);

/// Roots of a monic square-free polynomial that splits into linear factors.
std::vector<FieldElement> roots_of_split_poly(const UniPoly& f, std::uint64_t seed);

}  // namespace sgf::poly
