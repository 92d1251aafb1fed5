#pragma once

#include "sgf/fractal.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

// F-threshold and F-pure-threshold computation: the general critical-point
// search driven by base-p truncations and colon-ideal digit chains, the
// homogeneous entry point, the three-form closed form, the quasi-homogeneous
// reduction, and a brute-force nu oracle for cross-checks.

namespace sgf::fpt {

using arith::Integer;
using arith::Rational;
using fractal::CriticalPoint;
using fractal::GridPoint;
using fractal::LinearSystem;
using syzygy::TwoGenIdeal;

struct FtConfig {
    unsigned e_max = 40;                  // digit-chain bound when p divides den(lambda)
    std::uint64_t seed = 0x5eedf00dull;   // factorization seed
    bool debug_oracle = false;            // cross-check trivial-region results against nu(p)
    std::uint64_t oracle_degree_cap = 4000;
    std::uint64_t order_cap = 1000000;    // bound on multiplicative orders we are willing to walk
    unsigned diagnostics_cap = 64;
    fractal::EvalLimits limits{};
};

enum class Provenance {
    degenerate,      // a linear factor of multiplicity > (weighted) degree / 2
    critical_point,  // value = max_i c_i / t_i for a critical point c
    trivial_region,  // value = deg UV / |t|, exact
    closed_form_n3,  // three-form digit formula
    certified_only,  // interval certificate after exhausting e_max
};

enum class N3Case { case_2a, case_2b_i, case_2b_ii };

struct DiagnosticStep {
    unsigned e = 0;
    std::vector<Rational> truncation;
    bool in_upper = false;
};

struct DenominatorAnalysis {
    Integer k;          // prime-to-p part of the minimal denominator
    unsigned p_power;   // m with denominator = k * p^m
};

struct FptResult {
    std::optional<Rational> value;                           // exact answer
    std::optional<std::pair<Rational, Rational>> interval;   // [lo, hi] otherwise
    Provenance provenance = Provenance::trivial_region;
    std::optional<std::size_t> degenerate_index;             // 1-based factor index
    std::optional<CriticalPoint> critical;
    std::optional<N3Case> n3_case;
    unsigned e_used = 0;
    Rational lambda;
    std::vector<DiagnosticStep> diagnostics;
    std::optional<DenominatorAnalysis> denominator;

    const Rational& exact() const;
};

/// F-threshold of l^a with respect to b, via truncations of lambda*a and the
/// digit-chain membership test. Exponents must be positive.
FptResult ft_general(const LinearSystem& ell, std::span<const std::uint64_t> a, const TwoGenIdeal& b,
                     const FtConfig& cfg = {});

/// F-pure threshold of a non-constant form (factored automatically over a
/// splitting field).
FptResult fpt_homogeneous(const poly::BinaryForm& g, const FtConfig& cfg = {});

/// Closed-form F-threshold for three pairwise prime linear forms. For
/// two-linear-generator ideals (the maximal ideal up to coordinates) no
/// linear system is needed; otherwise the caller supplies one.
FptResult fpt_n3_closed_form(std::span<const Rational> t, const TwoGenIdeal& b,
                             const std::optional<LinearSystem>& ell = std::nullopt,
                             const FtConfig& cfg = {});

struct QuasiHomogeneousInput {
    poly::Bivariate g;      // polynomial in X, Y over F_p
    std::uint64_t u = 1;    // deg X
    std::uint64_t v = 1;    // deg Y
};

/// F-pure threshold of a quasi-homogeneous polynomial via the substitution
/// X -> x^u, Y -> y^v and the F-threshold with respect to <x^u, y^v>.
FptResult fpt_quasi_homogeneous(const QuasiHomogeneousInput& input, const FtConfig& cfg = {});

/// nu(p^e) = max{ a : G^a not in b^[p^e] }, by binary search on direct
/// membership. Cost grows with p^e * deg G; capped by the config.
Integer nu_oracle(const poly::BinaryForm& g, const TwoGenIdeal& b, unsigned e, const FtConfig& cfg = {});

/// Expected characteristic-0 limit from the factorization shape: 1/m for a
/// degenerate shape of type m, else (u+v)/deg.
Rational lct_expected(std::span<const std::uint64_t> multiplicities,
                      std::span<const std::uint64_t> factor_weighted_degrees, std::uint64_t u,
                      std::uint64_t v);

nlohmann::json result_to_json(const FptResult& r);

}  // namespace sgf::fpt
