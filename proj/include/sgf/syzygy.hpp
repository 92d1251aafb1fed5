#pragma once

#include "sgf/poly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Graded linear algebra over k[x,y]: colengths, minimal syzygy degrees, syzygy
// gaps, two-generator colon ideals, Frobenius powers, and ideal membership.
// Everything is exact Gaussian elimination over the coefficient field.

namespace sgf::syzygy {

using poly::BinaryForm;

/// Homogeneous ideal <U,V> with U, V coprime non-constant forms. The colength
/// identity deg<U,V> = deg U * deg V is recomputed independently on
/// construction for small inputs (and always in the test suites).
class TwoGenIdeal {
  public:
    static TwoGenIdeal make(BinaryForm u, BinaryForm v);

    const BinaryForm& u() const { return u_; }
    const BinaryForm& v() const { return v_; }
    unsigned deg_u() const { return u_.degree; }
    unsigned deg_v() const { return v_.degree; }
    /// deg U + deg V (the paper's deg UV).
    unsigned deg_uv() const { return u_.degree + v_.degree; }
    /// Colength of the ideal, deg U * deg V.
    std::uint64_t colength_value() const { return static_cast<std::uint64_t>(u_.degree) * v_.degree; }
    const gf::FieldPtr& field() const { return u_.field; }

    /// Degree sum below which construction re-verifies the colength identity.
    static constexpr unsigned kVerifyDegreeCap = 48;

  private:
    TwoGenIdeal(BinaryForm u, BinaryForm v) : u_(std::move(u)), v_(std::move(v)) {}
    BinaryForm u_, v_;
    friend TwoGenIdeal frobenius_power(const TwoGenIdeal& ideal);
    friend TwoGenIdeal frobenius_power(const TwoGenIdeal& ideal, unsigned e);
};

/// Triple of forms with no common factor, the domain of syzygy gaps.
struct TripleIdeal {
    BinaryForm f, g, h;
    static TripleIdeal make(BinaryForm f, BinaryForm g, BinaryForm h);
};

/// Dimension of the kernel of the degree-s evaluation map
/// (+)_i R_{s - deg F_i} -> R_s, (A_i) -> sum A_i F_i.
std::size_t graded_kernel_dim(std::span<const BinaryForm> forms, unsigned s);

/// dim_k k[x,y] / <forms>; throws if the generators share a factor.
std::uint64_t colength(std::span<const BinaryForm> forms);
std::uint64_t colength(const TwoGenIdeal& ideal);
std::uint64_t colength(const TripleIdeal& ideal);

enum class GapCheck {
    automatic,  // colength cross-check when the degree sum is small
    full,       // always cross-check against the colength identity
    fast,       // Hilbert-consistency of the kernel dimension only
};

/// |m - n| for the graded resolution R(-m) (+) R(-n) of <F,G,H>.
std::uint64_t syzygy_gap(const BinaryForm& f, const BinaryForm& g, const BinaryForm& h,
                         GapCheck check = GapCheck::automatic);

/// Membership of a homogeneous f in the ideal generated by `gens`.
bool member(std::span<const BinaryForm> gens, const BinaryForm& f);
bool member(const TwoGenIdeal& ideal, const BinaryForm& f);

/// (I : f). Returns std::nullopt when the colon is the unit ideal. The two
/// generators are the f-components of the minimal syzygies of (U, V, f),
/// normalized deterministically.
std::optional<TwoGenIdeal> colon(const TwoGenIdeal& ideal, const BinaryForm& f);

/// <U^p, V^p>, exact for two-generator ideals in k[x,y].
TwoGenIdeal frobenius_power(const TwoGenIdeal& ideal);
/// <U^{p^e}, V^{p^e}> for direct membership at small q.
TwoGenIdeal frobenius_power(const TwoGenIdeal& ideal, unsigned e);

}  // namespace sgf::syzygy
