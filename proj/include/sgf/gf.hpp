#pragma once

#include "sgf/arith.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

// Arithmetic in F_p and one explicit extension F_{p^k} given by a monic
// irreducible modulus. Elements are coefficient vectors of length k over F_p,
// low degree first. A flat span API (f*-methods) backs the dense linear
// algebra elsewhere; FieldElement is the value-semantics wrapper used by
// everything user facing.

namespace sgf::gf {

using arith::Integer;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

struct FieldElement {
    std::vector<std::uint64_t> c;
    std::uint64_t tag = 0;  // parent-field fingerprint, checked by element ops
};

class Field : public std::enable_shared_from_this<Field> {
  public:
    /// F_p itself (modulus t).
    static FieldPtr prime_field(std::uint64_t p);

    /// F_{p^k} with the deterministic smallest irreducible modulus.
    static FieldPtr extension(std::uint64_t p, unsigned k, std::string gen = "a");

    /// F_{p^k} with a caller-supplied monic modulus (k+1 coefficients, low
    /// degree first). Irreducibility is verified.
    static FieldPtr with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus,
                                 std::string gen = "a");

    std::uint64_t p() const { return p_; }
    unsigned deg() const { return k_; }
    const std::vector<std::uint64_t>& modulus() const { return mod_; }
    const std::string& generator_symbol() const { return gen_; }
    std::uint64_t tag() const { return tag_; }
    Integer order() const;
    bool same_as(const Field& other) const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement gen() const;
    FieldElement from_int(const Integer& n) const;
    FieldElement from_coeffs(std::vector<std::uint64_t> coeffs) const;

    bool is_zero(const FieldElement& a) const;
    bool is_one(const FieldElement& a) const;
    bool eq(const FieldElement& a, const FieldElement& b) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, const Integer& e) const;
    FieldElement frobenius(const FieldElement& a) const;
    FieldElement pth_root(const FieldElement& a) const;

    std::string to_string(const FieldElement& a) const;

    // Flat layer: operands are spans of deg() words.
    void fzero(std::uint64_t* r) const;
    void fone(std::uint64_t* r) const;
    void fcopy(const std::uint64_t* a, std::uint64_t* r) const;
    bool fis_zero(const std::uint64_t* a) const;
    bool feq(const std::uint64_t* a, const std::uint64_t* b) const;
    void fadd(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* r) const;
    void fsub(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* r) const;
    void fneg(const std::uint64_t* a, std::uint64_t* r) const;
    void fmul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* r) const;
    /// acc -= a * b
    void fsubmul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* acc) const;
    void finv(const std::uint64_t* a, std::uint64_t* r) const;
    void ffrobenius(const std::uint64_t* a, std::uint64_t* r) const;
    void fpth_root(const std::uint64_t* a, std::uint64_t* r) const;
    void fpow(const std::uint64_t* a, const Integer& e, std::uint64_t* r) const;

    FieldElement wrap(const std::uint64_t* a) const;
    void check_tag(const FieldElement& a) const;

  private:
    Field(std::uint64_t p, unsigned k, std::vector<std::uint64_t> mod, std::string gen);

    std::uint64_t p_;
    unsigned k_;
    std::vector<std::uint64_t> mod_;        // length k+1, monic
    std::vector<std::uint64_t> neg_mod_;    // -mod_ mod p, length k (tail only)
    std::string gen_;
    std::uint64_t tag_;
};

/// Lexicographically smallest monic irreducible of degree k over F_p,
/// coefficients compared low degree first. Returns the k+1 coefficients.
std::vector<std::uint64_t> find_irreducible(std::uint64_t p, unsigned k);

bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& monic);

/// Ring embedding F_{p^k} -> F_{p^L}, k | L, sending the source generator to
/// the lexicographically smallest root of the source modulus in the target.
class Embedding {
  public:
    Embedding(FieldPtr src, FieldPtr dst);

    FieldElement apply(const FieldElement& x) const;
    const FieldPtr& source() const { return src_; }
    const FieldPtr& target() const { return dst_; }

  private:
    FieldPtr src_;
    FieldPtr dst_;
    FieldElement root_;  // image of the source generator
};

/// Field spec grammar: `p=5` | `p=5;deg=3;mod=a^3+a+1` (optional `gen=...`).
FieldPtr parse_field_spec(const std::string& spec);

/// Parses a polynomial expression in the generator symbol to a field element.
FieldElement parse_element(const Field& field, const std::string& text);

}  // namespace sgf::gf
