#pragma once

#include "sgf/poly.hpp"
#include "sgf/syzygy.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

// The syzygy-gap fractal Delta(a/q) = delta(U^q, V^q, l^a)/q, the colength
// function Phi, upper/lower region tests, critical points, and grid sweeps.

namespace sgf::fractal {

using arith::Integer;
using arith::Rational;
using poly::BinaryForm;
using poly::LinearForm;
using syzygy::TwoGenIdeal;

/// Ordered tuple of pairwise prime linear forms.
class LinearSystem {
  public:
    static LinearSystem make(gf::FieldPtr field, std::vector<LinearForm> forms);

    std::size_t size() const { return forms_.size(); }
    const std::vector<LinearForm>& forms() const { return forms_; }
    const gf::FieldPtr& field() const { return field_; }

    /// l^a as a dense form (degree = sum of exponents; exponents may be 0).
    BinaryForm expand(std::span<const std::uint64_t> exponents) const;

  private:
    LinearSystem(gf::FieldPtr field, std::vector<LinearForm> forms)
        : field_(std::move(field)), forms_(std::move(forms)) {}
    gf::FieldPtr field_;
    std::vector<LinearForm> forms_;
};

/// a/q with q = p^e (e = 0 means integer points).
struct GridPoint {
    std::uint64_t p = 2;
    unsigned e = 0;
    std::vector<Integer> a;

    std::size_t dim() const { return a.size(); }
    Integer q() const;
    Rational coord(std::size_t i) const;
    std::vector<Rational> coords() const;
    Rational norm() const;
    bool is_reduced() const;
    GridPoint normalized() const;

    static GridPoint from_integers(std::uint64_t p, std::vector<Integer> a);
    static GridPoint from_rationals(std::uint64_t p, std::span<const Rational> coords);
};

struct CriticalPoint {
    GridPoint point;
    Rational delta_value;  // deg UV - |point|
};

struct EvalLimits {
    std::uint64_t max_expanded_degree = 20000;  // cap on q * deg for direct expansion
    std::uint64_t max_probes = 200000;          // descent probe budget
};

/// Membership tester for the upper region: l^a in b^[q], computed by the
/// digit-chain colon iteration b_j = (b_{j-1}^{[p]} : l^{d_j}) so no
/// polynomial is ever raised beyond the p-th power. Caches chain prefixes, so
/// probing nearby points is cheap. Not thread-safe; use one per thread.
class UpperTester {
  public:
    UpperTester(LinearSystem ell, TwoGenIdeal b);

    bool in_upper(const GridPoint& t);

    const LinearSystem& ell() const { return ell_; }
    const TwoGenIdeal& base_ideal() const { return b_; }
    unsigned deg_uv() const { return b_.deg_uv(); }

    /// Colon steps evaluated since construction (cache diagnostics).
    std::uint64_t colon_steps() const { return colon_steps_; }

  private:
    std::optional<TwoGenIdeal> apply_column(const std::optional<TwoGenIdeal>& state,
                                            std::span<const std::uint64_t> column, bool frobenius);

    LinearSystem ell_;
    TwoGenIdeal b_;
    std::vector<std::vector<std::uint64_t>> cols_;          // cached columns; [0] = integer parts
    std::vector<std::optional<TwoGenIdeal>> states_;        // state after each column
    std::uint64_t colon_steps_ = 0;
    bool warned_degree_bound_ = false;
};

/// Direct membership l^a in b^[q] by expansion; small q * degree only.
bool in_upper_direct(const LinearSystem& ell, const TwoGenIdeal& b, const GridPoint& t,
                     const EvalLimits& limits = {});

/// Delta(a/q) = delta(U^q, V^q, l^a) / q, exact.
Rational delta_at(const LinearSystem& ell, const TwoGenIdeal& b, const GridPoint& t,
                  const EvalLimits& limits = {});

/// Phi(a/q) = deg<U^q, V^q, l^a> / q^2, exact.
Rational phi_at(const LinearSystem& ell, const TwoGenIdeal& b, const GridPoint& t,
                const EvalLimits& limits = {});

bool is_critical(UpperTester& tester, const GridPoint& c);

/// Greedy coordinate descent from u (empty when u is not in the upper
/// region); the terminal point satisfies the critical-point characterization.
std::optional<CriticalPoint> find_critical_below(UpperTester& tester, const GridPoint& u,
                                                 const EvalLimits& limits = {});

struct GridCell {
    std::vector<Integer> a;
    Rational delta;
    bool upper = false;
};

struct GridSweep {
    std::uint64_t p = 2;
    unsigned e = 0;
    std::vector<Integer> lo;         // inclusive numerator bounds per axis
    std::vector<Integer> hi;
    std::vector<GridCell> cells;     // odometer order, last axis fastest

    std::size_t axis_count() const { return lo.size(); }
    std::size_t axis_size(std::size_t i) const;
};

/// Evaluates delta and the region bit at every a/q in the box; throws a
/// resource error over `cell_cap` cells. Cells are evaluated concurrently.
GridSweep grid_sweep(const LinearSystem& ell, const TwoGenIdeal& b,
                     std::span<const Rational> lo, std::span<const Rational> hi, unsigned e,
                     std::uint64_t cell_cap = 200000, unsigned threads = 0);

/// Boundary-side bit on the slice |a/q| = deg UV (n = 3): true when no
/// truncation of the point lies in the upper region.
bool on_boundary_slice(UpperTester& tester, const GridPoint& u);

void write_csv(const GridSweep& sweep, std::ostream& out);

enum class PgmMode { delta, region };
/// P2 (ascii = true) or P5 image of a 2-axis sweep, origin at the lo corner.
void write_pgm(const GridSweep& sweep, std::ostream& out, PgmMode mode, bool ascii);

/// Utility shared with the fpt module: component-wise truncation of a grid
/// point (s <= e), non-terminating convention.
GridPoint truncate_point(const GridPoint& u, unsigned s);

class resource_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace sgf::fractal
