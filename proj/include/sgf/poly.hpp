#pragma once

#include "sgf/gf.hpp"
#include "sgf/univariate.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Dense homogeneous polynomials in x, y over a finite field, their expression
// parser, and complete factorization into pairwise prime linear forms over a
// splitting field.

namespace sgf::poly {

/// Nonzero homogeneous polynomial of fixed degree d; entry i holds the
/// coefficient of x^{d-i} y^i, flat field words as in UniPoly.
struct BinaryForm {
    FieldPtr field;
    unsigned degree = 0;
    std::vector<std::uint64_t> data;

    unsigned k() const { return field->deg(); }
    std::size_t ncoeffs() const { return degree + 1; }
    const std::uint64_t* at(std::size_t i) const { return data.data() + i * k(); }
    std::uint64_t* at(std::size_t i) { return data.data() + i * k(); }
    FieldElement coeff(std::size_t i) const { return field->wrap(at(i)); }
    bool is_zero_vector() const;

    static BinaryForm make(FieldPtr field, unsigned degree, const std::vector<FieldElement>& coeffs);
    static BinaryForm monomial(FieldPtr field, unsigned xe, unsigned ye);
    static BinaryForm constant_one(FieldPtr field);
};

bool b_eq(const BinaryForm& a, const BinaryForm& b);
BinaryForm b_mul(const BinaryForm& a, const BinaryForm& b);
BinaryForm b_pow(const BinaryForm& a, std::uint64_t e);
BinaryForm b_scale(const BinaryForm& a, const FieldElement& c);
/// Monic-normalized gcd (in x where possible, with the common y power kept).
BinaryForm b_gcd(const BinaryForm& a, const BinaryForm& b);
FieldElement b_evaluate(const BinaryForm& a, const FieldElement& x0, const FieldElement& y0);
bool b_coprime(const BinaryForm& a, const BinaryForm& b);

/// Multiplicity of y (index of lowest nonzero entry) and of x.
unsigned b_y_multiplicity(const BinaryForm& a);
unsigned b_x_multiplicity(const BinaryForm& a);

/// f(t) = F(t, 1); degree drops by the y multiplicity.
UniPoly dehomogenize(const BinaryForm& a);
/// Form of degree u.degree() + y_mult with F(t,1) = u, times y^{y_mult}.
BinaryForm homogenize(const UniPoly& u, unsigned y_mult);

std::string b_to_string(const BinaryForm& a, const std::string& vx = "x", const std::string& vy = "y");

/// alpha*x + beta*y, normalized so alpha = 1, or (alpha, beta) = (0, 1).
struct LinearForm {
    FieldElement alpha, beta;
};

LinearForm make_linear_form(const FieldPtr& field, const FieldElement& alpha, const FieldElement& beta);
BinaryForm linear_to_form(const FieldPtr& field, const LinearForm& l);
bool proportional(const Field& field, const LinearForm& a, const LinearForm& b);
std::string linear_to_string(const Field& field, const LinearForm& l);

struct LinearFactorization {
    FieldPtr field;  // splitting field, possibly an extension of the input field
    FieldElement unit;
    std::vector<std::pair<LinearForm, std::uint64_t>> factors;
};

/// unit * prod l_i^{a_i}, recomputed in the factorization's field.
BinaryForm expand(const LinearFactorization& f);

struct FactorConfig {
    std::uint64_t seed = 0x5eedf00dull;
};

/// Complete factorization over a splitting field. Deterministic for a fixed
/// seed: canonical factor ordering (x, then x + beta*y by coefficient vector,
/// then y) and the smallest-modulus extension.
LinearFactorization factor_linear(const BinaryForm& g, const FactorConfig& cfg = {});

/// Sparse bivariate polynomial, the parser's working representation.
struct Bivariate {
    FieldPtr field;
    std::map<std::pair<std::uint64_t, std::uint64_t>, FieldElement> terms;  // (xe, ye) -> nonzero coeff

    bool is_zero() const { return terms.empty(); }
    /// Weighted degree if homogeneous under deg x = u, deg y = v, else nullopt.
    std::optional<arith::Integer> weighted_degree(std::uint64_t u, std::uint64_t v) const;
};

/// Expression grammar: integers, the field generator symbol, two variables,
/// + - * ^ ( ); ^ binds tightest; implicit multiplication is rejected.
Bivariate parse_polynomial(const std::string& text, FieldPtr field, const std::string& vx = "x",
                           const std::string& vy = "y");

/// Dense form from a sparse polynomial; throws naming two offending monomial
/// degrees when the input is inhomogeneous.
BinaryForm to_form(const Bivariate& g);

/// Convenience: parse + homogeneity check.
BinaryForm parse_form(const std::string& text, FieldPtr field, const std::string& vx = "x",
                      const std::string& vy = "y");

/// Image of g under X -> x^u, Y -> y^v (quasi-homogeneous inputs only).
BinaryForm psi_image(const Bivariate& g, std::uint64_t u, std::uint64_t v);

}  // namespace sgf::poly
