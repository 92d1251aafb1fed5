#include "sgf/fractal.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <ostream>
#include <thread>

namespace sgf::fractal {

using poly::b_pow;
using poly::linear_to_form;
using syzygy::colon;
using syzygy::frobenius_power;

LinearSystem LinearSystem::make(gf::FieldPtr field, std::vector<LinearForm> forms) {
    if (forms.empty()) throw std::domain_error("linear system needs at least one form");
    for (const auto& f : forms) {
        field->check_tag(f.alpha);
        field->check_tag(f.beta);
    }
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i + 1; j < forms.size(); ++j)
            if (poly::proportional(*field, forms[i], forms[j]))
                throw std::domain_error("linear system forms are not pairwise prime");
    return LinearSystem(std::move(field), std::move(forms));
}

BinaryForm LinearSystem::expand(std::span<const std::uint64_t> exponents) const {
    if (exponents.size() != forms_.size())
        throw std::domain_error("exponent vector length does not match the linear system");
    BinaryForm acc = BinaryForm::constant_one(field_);
    for (std::size_t i = 0; i < forms_.size(); ++i) {
        if (exponents[i] == 0) continue;
        acc = poly::b_mul(acc, b_pow(linear_to_form(field_, forms_[i]), exponents[i]));
    }
    return acc;
}

Integer GridPoint::q() const {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

Rational GridPoint::coord(std::size_t i) const { return arith::make_rational(a[i], q()); }

std::vector<Rational> GridPoint::coords() const {
    std::vector<Rational> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(coord(i));
    return out;
}

Rational GridPoint::norm() const {
    Integer total = 0;
    for (const auto& x : a) {
        if (x < 0) throw std::domain_error("grid points have nonnegative coordinates");
        total += x;
    }
    return arith::make_rational(total, q());
}

bool GridPoint::is_reduced() const {
    if (e == 0) return true;
    for (const auto& x : a)
        if (!mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) return true;
    return false;
}

GridPoint GridPoint::normalized() const {
    GridPoint r = *this;
    while (!r.is_reduced()) {
        for (auto& x : r.a) x /= static_cast<unsigned long>(p);
        --r.e;
    }
    return r;
}

GridPoint GridPoint::from_integers(std::uint64_t p, std::vector<Integer> a) {
    return GridPoint{p, 0, std::move(a)};
}

GridPoint GridPoint::from_rationals(std::uint64_t p, std::span<const Rational> coords) {
    GridPoint r{p, 0, {}};
    Integer q = 1;
    for (const auto& c : coords) {
        if (c < 0) throw std::domain_error("grid points have nonnegative coordinates");
        Integer den = c.get_den();
        while (!mpz_divisible_p(q.get_mpz_t(), den.get_mpz_t())) {
            q *= static_cast<unsigned long>(p);
            ++r.e;
            if (r.e > 64 * 1024) throw std::domain_error("coordinate denominator is not a power of p");
        }
    }
    for (const auto& c : coords) r.a.push_back(c.get_num() * (q / c.get_den()));
    return r;
}

GridPoint truncate_point(const GridPoint& u, unsigned s) {
    if (s > u.e) throw std::domain_error("truncation level exceeds the point's denominator");
    GridPoint r{u.p, s, {}};
    Integer ps;
    mpz_ui_pow_ui(ps.get_mpz_t(), u.p, s);
    Integer shift = u.q() / ps;  // p^{e-s}
    for (const auto& ai : u.a) {
        if (ai == 0) {
            r.a.emplace_back(0);
        } else {
            Integer k;
            mpz_cdiv_q(k.get_mpz_t(), ai.get_mpz_t(), shift.get_mpz_t());
            r.a.push_back(k - 1);
        }
    }
    return r;
}

// --- UpperTester ---

UpperTester::UpperTester(LinearSystem ell, TwoGenIdeal b) : ell_(std::move(ell)), b_(std::move(b)) {
    if (!ell_.field()->same_as(*b_.field()))
        throw std::domain_error("linear system and ideal live in different fields");
}

std::optional<TwoGenIdeal> UpperTester::apply_column(const std::optional<TwoGenIdeal>& state,
                                                     std::span<const std::uint64_t> column,
                                                     bool use_frobenius) {
    if (!state) return std::nullopt;  // unit ideal stays unit
    TwoGenIdeal current = use_frobenius ? frobenius_power(*state) : *state;
    bool all_zero = std::all_of(column.begin(), column.end(), [](std::uint64_t d) { return d == 0; });
    std::optional<TwoGenIdeal> next;
    if (all_zero) {
        next = std::move(current);
    } else {
        next = colon(current, ell_.expand(column));
        ++colon_steps_;
    }
    if (next && !warned_degree_bound_ &&
        next->deg_u() + next->deg_v() > ell_.size()) {
        std::cerr << "note: colon chain ideal generated in degrees " << next->deg_u() << "+"
                  << next->deg_v() << " > n = " << ell_.size() << "\n";
        warned_degree_bound_ = true;
    }
    return next;
}

bool UpperTester::in_upper(const GridPoint& t) {
    if (t.dim() != ell_.size()) throw std::domain_error("grid point dimension mismatch");
    if (t.p != ell_.field()->p()) throw std::domain_error("grid point characteristic mismatch");
    const std::size_t n = t.dim();
    // columns: [0] integer parts w, then e digit vectors of the remainders,
    // most significant first
    std::vector<std::vector<std::uint64_t>> cols(t.e + 1, std::vector<std::uint64_t>(n, 0));
    Integer q = t.q();
    for (std::size_t i = 0; i < n; ++i) {
        Integer w, r;
        mpz_fdiv_qr(w.get_mpz_t(), r.get_mpz_t(), t.a[i].get_mpz_t(), q.get_mpz_t());
        if (!w.fits_ulong_p()) throw resource_error("integer part of grid point too large");
        cols[0][i] = w.get_ui();
        for (unsigned j = t.e; j >= 1; --j) {
            cols[j][i] = mpz_fdiv_ui(r.get_mpz_t(), static_cast<unsigned long>(t.p));
            r /= static_cast<unsigned long>(t.p);
        }
    }
    // longest cached prefix
    std::size_t keep = 0;
    while (keep < cols.size() && keep < cols_.size() && cols_[keep] == cols[keep]) ++keep;
    cols_.resize(keep);
    states_.resize(keep);
    for (std::size_t j = keep; j < cols.size(); ++j) {
        std::optional<TwoGenIdeal> prev_state =
            j == 0 ? std::optional<TwoGenIdeal>(b_) : states_[j - 1];
        states_.push_back(apply_column(prev_state, cols[j], j > 0));
        cols_.push_back(cols[j]);
    }
    return !states_.back().has_value();
}

// --- direct evaluations ---

namespace {

std::vector<std::uint64_t> small_exponents(const GridPoint& t, const EvalLimits& limits) {
    std::vector<std::uint64_t> exps;
    Integer total = 0;
    for (const auto& ai : t.a) {
        if (!ai.fits_ulong_p()) throw resource_error("exponent too large for direct expansion");
        exps.push_back(ai.get_ui());
        total += ai;
    }
    if (total > static_cast<unsigned long>(limits.max_expanded_degree))
        throw resource_error("expanded degree exceeds the configured cap");
    return exps;
}

std::uint64_t small_q(const GridPoint& t, const EvalLimits& limits) {
    Integer q = t.q();
    if (!q.fits_ulong_p() || q.get_ui() > limits.max_expanded_degree)
        throw resource_error("denominator too large for direct evaluation");
    return q.get_ui();
}

}  // namespace

bool in_upper_direct(const LinearSystem& ell, const TwoGenIdeal& b, const GridPoint& t,
                     const EvalLimits& limits) {
    std::uint64_t q = small_q(t, limits);
    auto exps = small_exponents(t, limits);
    if (static_cast<std::uint64_t>(b.deg_uv()) * q > limits.max_expanded_degree)
        throw resource_error("q * deg UV exceeds the configured cap");
    TwoGenIdeal bq = syzygy::frobenius_power(b, t.e);
    std::uint64_t total = 0;
    for (auto e : exps) total += e;
    if (total == 0) return false;  // l^0 = 1 is in no proper ideal
    return syzygy::member(bq, ell.expand(exps));
}

Rational delta_at(const LinearSystem& ell, const TwoGenIdeal& b, const GridPoint& t,
                  const EvalLimits& limits) {
    std::uint64_t q = small_q(t, limits);
    auto exps = small_exponents(t, limits);
    if (static_cast<std::uint64_t>(b.deg_uv()) * q > limits.max_expanded_degree)
        throw resource_error("q * deg UV exceeds the configured cap");
    BinaryForm uq = b_pow(b.u(), q), vq = b_pow(b.v(), q);
    std::uint64_t gap = syzygy::syzygy_gap(uq, vq, ell.expand(exps));
    return arith::make_rational(gap, q);
}

Rational phi_at(const LinearSystem& ell, const TwoGenIdeal& b, const GridPoint& t,
                const EvalLimits& limits) {
    std::uint64_t q = small_q(t, limits);
    auto exps = small_exponents(t, limits);
    if (static_cast<std::uint64_t>(b.deg_uv()) * q > limits.max_expanded_degree)
        throw resource_error("q * deg UV exceeds the configured cap");
    const BinaryForm gens[] = {b_pow(b.u(), q), b_pow(b.v(), q), ell.expand(exps)};
    std::uint64_t len = syzygy::colength(gens);
    return arith::make_rational(len, Integer(q) * q);
}

bool is_critical(UpperTester& tester, const GridPoint& c) {
    if (!tester.in_upper(c)) return false;
    GridPoint probe = c;
    for (std::size_t i = 0; i < c.dim(); ++i) {
        if (c.a[i] == 0) continue;
        probe.a[i] -= 1;
        bool below_in_upper = tester.in_upper(probe);
        probe.a[i] += 1;
        if (below_in_upper) return false;
    }
    return true;
}

std::optional<CriticalPoint> find_critical_below(UpperTester& tester, const GridPoint& u,
                                                 const EvalLimits& limits) {
    if (!tester.in_upper(u)) return std::nullopt;
    GridPoint c = u;
    std::uint64_t probes = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = c.dim(); i-- > 0;) {
            while (c.a[i] > 0) {
                if (++probes > limits.max_probes) throw resource_error("critical point descent budget exceeded");
                c.a[i] -= 1;
                if (tester.in_upper(c)) {
                    changed = true;
                } else {
                    c.a[i] += 1;
                    break;
                }
            }
        }
    }
    Rational delta = Rational(tester.deg_uv()) - c.norm();
    return CriticalPoint{std::move(c), delta};
}

// --- grid sweeps ---

std::size_t GridSweep::axis_size(std::size_t i) const {
    Integer width = hi[i] - lo[i] + 1;
    return width.get_ui();
}

GridSweep grid_sweep(const LinearSystem& ell, const TwoGenIdeal& b, std::span<const Rational> lo,
                     std::span<const Rational> hi, unsigned e, std::uint64_t cell_cap,
                     unsigned threads) {
    const std::size_t n = ell.size();
    if (lo.size() != n || hi.size() != n) throw std::domain_error("box dimension mismatch");
    GridSweep sweep;
    sweep.p = ell.field()->p();
    sweep.e = e;
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), sweep.p, e);
    Integer cell_count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Rational lo_q = lo[i] * Rational(q), hi_q = hi[i] * Rational(q);
        Integer lo_a, hi_a;
        mpz_cdiv_q(lo_a.get_mpz_t(), lo_q.get_num().get_mpz_t(), lo_q.get_den().get_mpz_t());
        mpz_fdiv_q(hi_a.get_mpz_t(), hi_q.get_num().get_mpz_t(), hi_q.get_den().get_mpz_t());
        if (lo_a < 0) lo_a = 0;
        if (hi_a < lo_a) throw std::domain_error("empty sweep box");
        sweep.lo.push_back(lo_a);
        sweep.hi.push_back(hi_a);
        cell_count *= hi_a - lo_a + 1;
    }
    if (cell_count > static_cast<unsigned long>(cell_cap))
        throw resource_error("sweep exceeds the cell cap (" + cell_count.get_str() + " cells)");

    const std::size_t total = cell_count.get_ui();
    sweep.cells.assign(total, GridCell{});
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

    auto cell_point = [&](std::size_t index) {
        GridPoint t{sweep.p, e, std::vector<Integer>(n)};
        std::size_t rest = index;
        for (std::size_t i = n; i-- > 0;) {
            std::size_t width = sweep.axis_size(i);
            t.a[i] = sweep.lo[i] + Integer(static_cast<unsigned long>(rest % width));
            rest /= width;
        }
        return t;
    };

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        UpperTester tester(ell, b);
        try {
            while (true) {
                std::size_t index = next.fetch_add(1);
                if (index >= total) break;
                GridPoint t = cell_point(index);
                GridCell& cell = sweep.cells[index];
                cell.a = t.a;
                cell.delta = delta_at(ell, b, t);
                cell.upper = tester.in_upper(t);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return sweep;
}

bool on_boundary_slice(UpperTester& tester, const GridPoint& u) {
    if (u.norm() != Rational(static_cast<unsigned long>(tester.deg_uv())))
        throw std::domain_error("slice classification requires |a/q| = deg UV");
    for (unsigned s = 0; s <= u.e; ++s) {
        if (tester.in_upper(truncate_point(u, s))) return false;
    }
    return true;
}

void write_csv(const GridSweep& sweep, std::ostream& out) {
    const std::size_t n = sweep.axis_count();
    for (std::size_t i = 1; i <= n; ++i) out << "a" << i << ",";
    out << "q,delta_num,delta_den,region\n";
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), sweep.p, sweep.e);
    for (const auto& cell : sweep.cells) {
        for (const auto& ai : cell.a) out << ai.get_str() << ",";
        out << q.get_str() << "," << cell.delta.get_num().get_str() << ","
            << cell.delta.get_den().get_str() << "," << (cell.upper ? "U" : "L") << "\n";
    }
}

void write_pgm(const GridSweep& sweep, std::ostream& out, PgmMode mode, bool ascii) {
    if (sweep.axis_count() != 2) throw std::domain_error("PGM output requires a 2-axis sweep");
    const std::size_t h = sweep.axis_size(0), w = sweep.axis_size(1);
    Rational max_delta(0);
    for (const auto& cell : sweep.cells)
        if (cell.delta > max_delta) max_delta = cell.delta;
    out << (ascii ? "P2" : "P5") << "\n" << w << " " << h << "\n255\n";
    std::vector<unsigned char> row;
    for (std::size_t r = 0; r < h; ++r) {
        row.clear();
        for (std::size_t c = 0; c < w; ++c) {
            const GridCell& cell = sweep.cells[r * w + c];
            unsigned value;
            if (mode == PgmMode::region) {
                value = cell.upper ? 255 : 0;
            } else if (max_delta == 0) {
                value = 0;
            } else {
                Rational scaled = cell.delta * 255 / max_delta;
                Integer rounded = scaled.get_num() / scaled.get_den();
                value = static_cast<unsigned>(rounded.get_ui());
            }
            if (ascii)
                out << value << (c + 1 == w ? "" : " ");
            else
                row.push_back(static_cast<unsigned char>(value));
        }
        if (ascii)
            out << "\n";
        else
            out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

}  // namespace sgf::fractal
