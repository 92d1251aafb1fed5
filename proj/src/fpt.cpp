#include "sgf/fpt.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sgf::fpt {

using fractal::resource_error;
using fractal::UpperTester;
using poly::BinaryForm;

const Rational& FptResult::exact() const {
    if (!value) throw std::logic_error("result is a certified interval, not an exact value");
    return *value;
}

namespace {

DenominatorAnalysis analyze_denominator(const Rational& value, std::uint64_t p) {
    Integer den = value.get_den();
    unsigned m = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
        den /= static_cast<unsigned long>(p);
        ++m;
    }
    return DenominatorAnalysis{den, m};
}

Rational critical_value(const CriticalPoint& cp, std::span<const Rational> t) {
    Rational best(0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        Rational ratio = cp.point.coord(i) / t[i];
        if (ratio > best) best = ratio;
    }
    return best;
}

std::vector<Rational> to_rationals(std::span<const std::uint64_t> a) {
    std::vector<Rational> out;
    out.reserve(a.size());
    for (auto x : a) out.emplace_back(static_cast<unsigned long>(x));
    return out;
}

/// Trivial-region cross-check: lambda must satisfy nu(p)/p < lambda <= (nu(p)+1)/p
/// for G = l^a. Skipped when expansion would exceed the oracle cap.
void debug_check_trivial(const LinearSystem& ell, std::span<const std::uint64_t> a,
                         const TwoGenIdeal& b, const Rational& lambda, const FtConfig& cfg) {
    std::uint64_t deg_g = 0;
    for (auto x : a) deg_g += x;
    if (static_cast<std::uint64_t>(b.deg_uv()) * ell.field()->p() > cfg.oracle_degree_cap) return;
    if (deg_g * ell.field()->p() > cfg.oracle_degree_cap) return;
    BinaryForm g = ell.expand(a);
    Integer nu = nu_oracle(g, b, 1, cfg);
    Rational lo = arith::make_rational(nu, ell.field()->p());
    Rational hi = arith::make_rational(nu + 1, ell.field()->p());
    if (!(lo < lambda && lambda <= hi))
        throw std::logic_error("nu oracle contradicts the trivial-region conclusion");
}

}  // namespace

FptResult ft_general(const LinearSystem& ell, std::span<const std::uint64_t> a, const TwoGenIdeal& b,
                     const FtConfig& cfg) {
    const std::size_t n = ell.size();
    if (a.size() != n) throw std::domain_error("exponent vector length mismatch");
    for (auto x : a)
        if (x == 0) throw std::domain_error("ft_general requires positive exponents");
    if (!ell.field()->same_as(*b.field()))
        throw std::domain_error("linear system and ideal live in different fields");

    const std::uint64_t p = ell.field()->p();
    std::uint64_t norm_a = 0;
    for (auto x : a) norm_a += x;

    FptResult result;
    result.lambda = arith::make_rational(b.deg_uv(), norm_a);

    // digit streams of the coordinates of lambda * a (non-terminating base-p)
    std::vector<arith::DigitStream> streams;
    streams.reserve(n);
    GridPoint point{p, 0, {}};
    for (auto x : a) {
        Rational coord = result.lambda * Rational(static_cast<unsigned long>(x));
        streams.emplace_back(coord, p);
        point.a.push_back(streams.back().integer_part());
    }

    UpperTester tester(ell, b);
    auto record = [&](unsigned e, bool upper) {
        if (result.diagnostics.size() < cfg.diagnostics_cap)
            result.diagnostics.push_back(DiagnosticStep{e, point.coords(), upper});
    };

    auto finish_critical = [&](unsigned e) {
        auto cp = find_critical_below(tester, point, cfg.limits);
        if (!cp) throw std::logic_error("upper-region truncation lost its critical point");
        std::vector<Rational> t = to_rationals(a);
        Rational value = critical_value(*cp, t);
        if (!(value < result.lambda)) throw std::logic_error("critical-point value is not below lambda");
        result.value = value;
        result.provenance = Provenance::critical_point;
        result.critical = std::move(*cp);
        result.e_used = e;
        result.denominator = analyze_denominator(value, p);
        return result;
    };

    bool upper = tester.in_upper(point);
    record(0, upper);
    if (upper) return finish_critical(0);

    // With two forms every critical point is integral: a non-integral one
    // would need 0 < Delta(c) <= (n-2)/q = 0. Exhausting e = 0 settles it.
    if (n == 2) {
        result.value = result.lambda;
        result.provenance = Provenance::trivial_region;
        result.denominator = analyze_denominator(result.lambda, p);
        if (cfg.debug_oracle) debug_check_trivial(ell, a, b, result.lambda, cfg);
        return result;
    }

    // If p does not divide den(lambda), a threshold below lambda would put a
    // truncation of lambda*a in the upper region by level mu = ord_p(den):
    // thresholds cannot lie in (<lambda>_mu, lambda) (forbidden interval), and
    // a critical point below lambda*a forces its witness truncation to appear
    // at e <= mu. Exhausting e <= mu therefore proves ft = lambda exactly.
    Integer den = result.lambda.get_den();
    bool exact_on_exhaust = !mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p));
    std::uint64_t bound;
    if (exact_on_exhaust) {
        Integer mu = arith::mult_order(p, den);
        if (mu > static_cast<unsigned long>(cfg.order_cap))
            throw resource_error("multiplicative order exceeds the configured cap");
        bound = mu.get_ui();
    } else {
        bound = cfg.e_max;
    }

    for (unsigned e = 1; e <= bound; ++e) {
        for (std::size_t i = 0; i < n; ++i) {
            point.a[i] *= static_cast<unsigned long>(p);
            point.a[i] += streams[i].next();
        }
        point.e = e;
        upper = tester.in_upper(point);
        record(e, upper);
        if (upper) return finish_critical(e);
    }

    if (exact_on_exhaust) {
        result.value = result.lambda;
        result.provenance = Provenance::trivial_region;
        result.e_used = static_cast<unsigned>(bound);
        result.denominator = analyze_denominator(result.lambda, p);
        if (cfg.debug_oracle) debug_check_trivial(ell, a, b, result.lambda, cfg);
        return result;
    }

    // Certified interval: any critical point below lambda*a would have reduced
    // denominator exponent > e_max, so lambda - ft <= (n-2)/(p^{e_max} |a|).
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, cfg.e_max);
    Rational width = arith::make_rational(Integer(static_cast<unsigned long>(n - 2)),
                                          pe * static_cast<unsigned long>(norm_a));
    result.interval = std::make_pair(result.lambda - width, result.lambda);
    result.provenance = Provenance::certified_only;
    result.e_used = cfg.e_max;
    return result;
}

namespace {

LinearSystem system_from_factorization(const poly::LinearFactorization& fact) {
    std::vector<poly::LinearForm> forms;
    forms.reserve(fact.factors.size());
    for (const auto& [l, m] : fact.factors) forms.push_back(l);
    return LinearSystem::make(fact.field, std::move(forms));
}

}  // namespace

FptResult fpt_homogeneous(const BinaryForm& g, const FtConfig& cfg) {
    if (g.degree == 0) throw std::domain_error("constant polynomials have no F-pure threshold");
    const std::uint64_t d = g.degree;
    poly::LinearFactorization fact = poly::factor_linear(g, {cfg.seed});
    const std::uint64_t p = fact.field->p();

    FptResult result;
    result.lambda = arith::make_rational(2, d);

    for (std::size_t i = 0; i < fact.factors.size(); ++i) {
        if (2 * fact.factors[i].second > d) {
            result.value = arith::make_rational(1, fact.factors[i].second);
            result.provenance = Provenance::degenerate;
            result.degenerate_index = i + 1;
            result.denominator = analyze_denominator(*result.value, p);
            return result;
        }
    }

    LinearSystem ell = system_from_factorization(fact);
    TwoGenIdeal m = TwoGenIdeal::make(BinaryForm::monomial(fact.field, 1, 0),
                                      BinaryForm::monomial(fact.field, 0, 1));
    std::vector<std::uint64_t> mults;
    mults.reserve(fact.factors.size());
    for (const auto& [l, mult] : fact.factors) mults.push_back(mult);

    result = ft_general(ell, mults, m, cfg);

    if (result.provenance == Provenance::critical_point) {
        // minimal denominator k*p^m with m >= 1 and k dividing a multiplicity
        const auto& analysis = *result.denominator;
        if (analysis.p_power == 0)
            throw std::logic_error("critical-point threshold has denominator prime to p");
        bool divides_some = false;
        for (auto mult : mults)
            if (analysis.k.fits_ulong_p() && mult % analysis.k.get_ui() == 0) divides_some = true;
        if (!divides_some)
            throw std::logic_error("threshold denominator violates the multiplicity structure");

        bool square_free = std::all_of(mults.begin(), mults.end(), [](std::uint64_t m_) { return m_ == 1; });
        if (square_free) {
            Integer pe;
            mpz_ui_pow_ui(pe.get_mpz_t(), p, result.e_used);
            if (mpz_divisible_p(pe.get_mpz_t(), result.value->get_den().get_mpz_t()) &&
                *result.value != arith::truncate(result.lambda, p, result.e_used))
                throw std::logic_error("square-free threshold is not the expected truncation of lambda");
        }
    }
    if (result.value && (*result.value <= 0 || *result.value > 1))
        throw std::logic_error("F-pure threshold outside (0, 1]");
    return result;
}

FptResult fpt_n3_closed_form(std::span<const Rational> t, const TwoGenIdeal& b,
                             const std::optional<LinearSystem>& ell_opt, const FtConfig& cfg) {
    if (t.size() != 3) throw std::domain_error("the closed form needs exactly three components");
    for (const auto& x : t)
        if (x <= 0) throw std::domain_error("components must be positive");
    const std::uint64_t p = b.field()->p();
    const unsigned deg_uv = b.deg_uv();
    const bool maximal_like = b.deg_u() == 1 && b.deg_v() == 1;
    if (!maximal_like && !ell_opt)
        throw std::domain_error("general ideals need an explicit linear system");

    Rational norm_t(0);
    for (const auto& x : t) norm_t += x;
    std::vector<Rational> u;
    for (const auto& x : t) u.push_back(Rational(static_cast<unsigned long>(deg_uv)) * x / norm_t);

    FptResult result;
    result.lambda = Rational(static_cast<unsigned long>(deg_uv)) / norm_t;

    std::optional<UpperTester> tester;
    if (ell_opt) {
        if (ell_opt->size() != 3) throw std::domain_error("the linear system needs three forms");
        tester.emplace(*ell_opt, b);
    }

    // case 1: floor(u) in the upper region (terminating-expansion test)
    std::vector<Integer> floors;
    bool any_positive_floor = false;
    for (const auto& ui : u) {
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), ui.get_num().get_mpz_t(), ui.get_den().get_mpz_t());
        if (f > 0) any_positive_floor = true;
        floors.push_back(f);
    }
    if (maximal_like) {
        // the only integral critical points are the basis vectors
        for (std::size_t i = 0; i < 3; ++i) {
            if (u[i] >= 1) {
                result.value = Rational(1) / t[i];
                result.provenance = Provenance::critical_point;
                result.critical = CriticalPoint{GridPoint{p, 0, {Integer(i == 0), Integer(i == 1), Integer(i == 2)}},
                                                Rational(static_cast<unsigned long>(deg_uv - 1))};
                result.denominator = analyze_denominator(*result.value, p);
                return result;
            }
        }
    } else if (any_positive_floor) {
        GridPoint floor_point{p, 0, floors};
        if (tester->in_upper(floor_point)) {
            auto cp = find_critical_below(*tester, floor_point, cfg.limits);
            if (!cp) throw std::logic_error("floor point lost its critical point");
            result.value = critical_value(*cp, std::vector<Rational>(t.begin(), t.end()));
            result.provenance = Provenance::critical_point;
            result.critical = std::move(*cp);
            result.denominator = analyze_denominator(*result.value, p);
            return result;
        }
    }

    // case 2: scan digit triples of frac(u) for the first spot not summing to
    // 2p-2; the streams are eventually periodic with preperiod max v_p(den)
    // and period lcm of the orders of p modulo the p-free denominator parts
    std::uint64_t preperiod = 0, period = 1;
    for (const auto& ui : u) {
        Integer den = ui.get_den();
        unsigned j = 0;
        while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
            den /= static_cast<unsigned long>(p);
            ++j;
        }
        preperiod = std::max<std::uint64_t>(preperiod, j);
        if (den > 1) {
            Integer order = arith::mult_order(p, den);
            Integer combined;
            mpz_lcm(combined.get_mpz_t(), order.get_mpz_t(), Integer(static_cast<unsigned long>(period)).get_mpz_t());
            if (combined > static_cast<unsigned long>(cfg.order_cap))
                throw resource_error("digit period exceeds the configured cap");
            period = combined.get_ui();
        }
    }
    const std::uint64_t scan_bound = preperiod + period;

    std::vector<arith::DigitStream> streams;
    for (const auto& ui : u) streams.emplace_back(ui, p);
    // in case 2 every component has a nonzero fractional part (their
    // fractional parts sum to 2), so stream digits match frac(u) digits
    for (const auto& ui : u)
        if (ui.get_den() == 1) throw std::logic_error("integral component outside the upper-region case");

    unsigned e_found = 0;
    unsigned digit_sum = 0;
    std::vector<Integer> nums = floors;  // running numerators of <u>_s
    for (unsigned s = 1; s <= scan_bound; ++s) {
        unsigned sum = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            unsigned d = streams[i].next();
            sum += d;
            nums[i] = nums[i] * static_cast<unsigned long>(p) + d;
        }
        if (sum != 2 * p - 2) {
            e_found = s;
            digit_sum = sum;
            break;
        }
    }

    if (e_found == 0) {
        result.value = result.lambda;
        result.provenance = Provenance::closed_form_n3;
        result.n3_case = N3Case::case_2a;
        result.e_used = static_cast<unsigned>(scan_bound);
        result.denominator = analyze_denominator(result.lambda, p);
        return result;
    }

    if (digit_sum == 2 * p - 3) {
        result.value = result.lambda;
        result.provenance = Provenance::closed_form_n3;
        result.n3_case = N3Case::case_2b_i;
        result.e_used = e_found;
        result.denominator = analyze_denominator(result.lambda, p);
        return result;
    }
    if (digit_sum != 2 * p - 1)
        throw std::logic_error("digit sum outside {2p-3, 2p-1} at the first irregular spot");

    GridPoint c{p, e_found, nums};
    Rational delta = Rational(static_cast<unsigned long>(deg_uv)) - c.norm();
    Rational value(0);
    for (std::size_t i = 0; i < 3; ++i) {
        Rational ratio = c.coord(i) / t[i];
        if (ratio > value) value = ratio;
    }
    result.value = value;
    result.provenance = Provenance::closed_form_n3;
    result.n3_case = N3Case::case_2b_ii;
    result.critical = CriticalPoint{std::move(c), delta};
    result.e_used = e_found;
    result.denominator = analyze_denominator(value, p);
    return result;
}

FptResult fpt_quasi_homogeneous(const QuasiHomogeneousInput& input, const FtConfig& cfg) {
    const poly::Bivariate& g = input.g;
    if (g.is_zero()) throw std::domain_error("the zero polynomial has no F-pure threshold");
    if (input.u == 0 || input.v == 0) throw std::domain_error("weights must be positive");
    std::uint64_t u = input.u, v = input.v;
    std::uint64_t common = std::gcd(u, v);
    u /= common;
    v /= common;
    if (!g.weighted_degree(u, v))
        throw std::domain_error("polynomial is not quasi-homogeneous under the given weights");
    const std::uint64_t p = g.field->p();

    if (g.terms.size() == 1) {
        // monomial X^{j1} Y^{j2}: threshold min{1/j1, 1/j2}
        auto [e_pair, coeff] = *g.terms.begin();
        std::uint64_t j1 = e_pair.first, j2 = e_pair.second;
        if (j1 == 0 && j2 == 0) throw std::domain_error("constant polynomials have no F-pure threshold");
        std::uint64_t jmax = std::max(j1, j2);
        FptResult result;
        result.lambda = arith::make_rational(u + v, j1 * u + j2 * v);
        result.value = arith::make_rational(1, jmax);
        if (Rational(result.lambda) * Rational(static_cast<unsigned long>(jmax)) > 1) {
            result.provenance = Provenance::degenerate;
            result.degenerate_index = j1 >= j2 ? 1 : 2;
        } else {
            result.provenance = Provenance::trivial_region;
        }
        result.denominator = analyze_denominator(*result.value, p);
        return result;
    }

    if (u == v) {
        // standard grading: the plain homogeneous algorithm applies
        return fpt_homogeneous(poly::to_form(g), cfg);
    }

    // arrange for deg X prime to p (swap variables if needed)
    poly::Bivariate work = g;
    if (u % p == 0) {
        poly::Bivariate swapped{g.field, {}};
        for (const auto& [e, c] : g.terms) swapped.terms.emplace(std::make_pair(e.second, e.first), c);
        work = std::move(swapped);
        std::swap(u, v);
    }

    // q_bar = p-part of v
    std::uint64_t q_bar = 1, w = v;
    while (w % p == 0) {
        w /= p;
        q_bar *= p;
    }

    BinaryForm big_g = poly::psi_image(work, u, v);
    poly::LinearFactorization fact = poly::factor_linear(big_g, {cfg.seed});
    const gf::FieldPtr split = fact.field;

    FptResult result;
    result.lambda = arith::make_rational(u + v, big_g.degree);

    // degenerate fast paths from the factor multiplicities
    for (std::size_t i = 0; i < fact.factors.size(); ++i) {
        const auto& [l, mult] = fact.factors[i];
        const bool is_x = split->is_one(l.alpha) && split->is_zero(l.beta);
        const bool is_y = split->is_zero(l.alpha);
        std::uint64_t divisor = is_x ? u : is_y ? v : q_bar;
        if (mult % divisor != 0) throw std::logic_error("psi image multiplicity is not divisible as expected");
        std::uint64_t reduced = mult / divisor;  // j1, j2, or k_i
        if (result.lambda * Rational(static_cast<unsigned long>(reduced)) > 1) {
            result.value = arith::make_rational(1, reduced);
            result.provenance = Provenance::degenerate;
            result.degenerate_index = i + 1;
            result.denominator = analyze_denominator(*result.value, p);
            return result;
        }
    }

    LinearSystem ell = system_from_factorization(fact);
    TwoGenIdeal b = TwoGenIdeal::make(
        BinaryForm::monomial(split, static_cast<unsigned>(u), 0),
        BinaryForm::monomial(split, 0, static_cast<unsigned>(v)));
    std::vector<std::uint64_t> mults;
    for (const auto& [l, m] : fact.factors) mults.push_back(m);

    FptResult inner = ft_general(ell, mults, b, cfg);
    inner.lambda = result.lambda;
    if (inner.value && (*inner.value <= 0 || *inner.value > 1))
        throw std::logic_error("F-pure threshold outside (0, 1]");
    return inner;
}

Integer nu_oracle(const BinaryForm& g, const TwoGenIdeal& b, unsigned e, const FtConfig& cfg) {
    if (g.degree == 0) throw std::domain_error("nu oracle requires a non-constant form");
    if (!g.field->same_as(*b.field())) throw std::domain_error("form and ideal in different fields");
    const std::uint64_t p = g.field->p();
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if (q > cfg.oracle_degree_cap) throw resource_error("nu oracle cap exceeded");
    }
    if (q * b.deg_uv() > cfg.oracle_degree_cap || q * b.deg_uv() > cfg.limits.max_expanded_degree * 4)
        throw resource_error("nu oracle cap exceeded");
    TwoGenIdeal bq = syzygy::frobenius_power(b, e);
    // G^a is in b^[q] once a deg G >= q deg UV - 1
    std::uint64_t hi = (q * b.deg_uv() - 1 + g.degree - 1) / g.degree;
    std::uint64_t lo = 0;  // G^0 = 1 is outside the proper ideal
    auto in_ideal = [&](std::uint64_t a_exp) { return syzygy::member(bq, poly::b_pow(g, a_exp)); };
    if (!in_ideal(hi)) throw std::logic_error("nu oracle upper bound is not a member");
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (in_ideal(mid))
            hi = mid;
        else
            lo = mid;
    }
    return Integer(static_cast<unsigned long>(lo));
}

Rational lct_expected(std::span<const std::uint64_t> multiplicities,
                      std::span<const std::uint64_t> factor_weighted_degrees, std::uint64_t u,
                      std::uint64_t v) {
    if (multiplicities.size() != factor_weighted_degrees.size())
        throw std::domain_error("multiplicity and degree lists differ in length");
    if (multiplicities.empty()) throw std::domain_error("empty factorization shape");
    std::uint64_t deg = 0;
    for (std::size_t i = 0; i < multiplicities.size(); ++i)
        deg += multiplicities[i] * factor_weighted_degrees[i];
    for (auto m : multiplicities)
        if (m * (u + v) > deg) return arith::make_rational(1, m);
    return arith::make_rational(u + v, deg);
}

nlohmann::json result_to_json(const FptResult& r) {
    nlohmann::json j;
    if (r.value) {
        j["value"] = arith::to_string(*r.value);
    } else if (r.interval) {
        j["value"] = {{"lo", arith::to_string(r.interval->first)},
                      {"hi", arith::to_string(r.interval->second)}};
    }
    nlohmann::json prov;
    switch (r.provenance) {
        case Provenance::degenerate:
            prov["type"] = "degenerate";
            if (r.degenerate_index) prov["index"] = *r.degenerate_index;
            break;
        case Provenance::critical_point:
            prov["type"] = "critical_point";
            break;
        case Provenance::trivial_region:
            prov["type"] = "trivial_region";
            break;
        case Provenance::closed_form_n3: {
            prov["type"] = "closed_form_n3";
            const char* names[] = {"2a", "2b-i", "2b-ii"};
            if (r.n3_case) prov["case"] = names[static_cast<int>(*r.n3_case)];
            break;
        }
        case Provenance::certified_only:
            prov["type"] = "certified_only";
            prov["e_max"] = r.e_used;
            break;
    }
    j["provenance"] = prov;
    j["lambda"] = arith::to_string(r.lambda);
    j["e_used"] = r.e_used;
    if (r.critical) {
        nlohmann::json cp;
        cp["a"] = nlohmann::json::array();
        for (const auto& ai : r.critical->point.a) cp["a"].push_back(ai.get_str());
        cp["q"] = r.critical->point.q().get_str();
        cp["delta"] = arith::to_string(r.critical->delta_value);
        j["critical_point"] = cp;
    } else {
        j["critical_point"] = nullptr;
    }
    if (r.denominator) {
        j["denominator_analysis"] = {{"k", r.denominator->k.get_str()},
                                     {"p_power", r.denominator->p_power}};
    }
    return j;
}

}  // namespace sgf::fpt
