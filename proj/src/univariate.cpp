#include "sgf/univariate.hpp"

#include <random>
#include <stdexcept>

namespace sgf::poly {

void UniPoly::trim() {
    while (!coeffs.empty() && field->fis_zero(coeffs.data() + coeffs.size() - k()))
        coeffs.resize(coeffs.size() - k());
}

UniPoly UniPoly::one(FieldPtr f) {
    UniPoly r(std::move(f));
    r.resize_coeffs(1);
    r.field->fone(r.at(0));
    return r;
}

UniPoly UniPoly::x(FieldPtr f) {
    UniPoly r(std::move(f));
    r.resize_coeffs(2);
    r.field->fone(r.at(1));
    return r;
}

UniPoly UniPoly::constant(FieldPtr f, const FieldElement& c) {
    f->check_tag(c);
    UniPoly r(std::move(f));
    r.resize_coeffs(1);
    r.field->fcopy(c.c.data(), r.at(0));
    r.trim();
    return r;
}

UniPoly UniPoly::from_elements(FieldPtr f, const std::vector<FieldElement>& elems) {
    UniPoly r(f);
    r.resize_coeffs(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        f->check_tag(elems[i]);
        f->fcopy(elems[i].c.data(), r.at(i));
    }
    r.trim();
    return r;
}

namespace {

void require_same_field(const UniPoly& a, const UniPoly& b) {
    if (!a.field->same_as(*b.field)) throw std::domain_error("univariate operands in different fields");
}

}  // namespace

bool u_eq(const UniPoly& a, const UniPoly& b) {
    require_same_field(a, b);
    return a.coeffs == b.coeffs;
}

UniPoly u_add(const UniPoly& a, const UniPoly& b) {
    require_same_field(a, b);
    const Field& F = *a.field;
    UniPoly r(a.field);
    r.resize_coeffs(std::max(a.ncoeffs(), b.ncoeffs()));
    for (std::size_t i = 0; i < r.ncoeffs(); ++i) {
        if (i < a.ncoeffs()) F.fcopy(a.at(i), r.at(i));
        if (i < b.ncoeffs()) F.fadd(r.at(i), b.at(i), r.at(i));
    }
    r.trim();
    return r;
}

UniPoly u_sub(const UniPoly& a, const UniPoly& b) {
    require_same_field(a, b);
    const Field& F = *a.field;
    UniPoly r(a.field);
    r.resize_coeffs(std::max(a.ncoeffs(), b.ncoeffs()));
    for (std::size_t i = 0; i < r.ncoeffs(); ++i) {
        if (i < a.ncoeffs()) F.fcopy(a.at(i), r.at(i));
        if (i < b.ncoeffs()) F.fsub(r.at(i), b.at(i), r.at(i));
    }
    r.trim();
    return r;
}

UniPoly u_mul(const UniPoly& a, const UniPoly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return UniPoly::zero(a.field);
    const Field& F = *a.field;
    const unsigned k = a.k();
    UniPoly r(a.field);
    r.resize_coeffs(a.ncoeffs() + b.ncoeffs() - 1);
    std::vector<std::uint64_t> tmp(k);
    for (std::size_t i = 0; i < a.ncoeffs(); ++i) {
        if (F.fis_zero(a.at(i))) continue;
        for (std::size_t j = 0; j < b.ncoeffs(); ++j) {
            F.fmul(a.at(i), b.at(j), tmp.data());
            F.fadd(r.at(i + j), tmp.data(), r.at(i + j));
        }
    }
    r.trim();
    return r;
}

UniPoly u_scale(const UniPoly& a, const FieldElement& c) {
    const Field& F = *a.field;
    F.check_tag(c);
    UniPoly r(a.field);
    r.resize_coeffs(a.ncoeffs());
    for (std::size_t i = 0; i < a.ncoeffs(); ++i) F.fmul(a.at(i), c.c.data(), r.at(i));
    r.trim();
    return r;
}

std::pair<UniPoly, UniPoly> u_divrem(const UniPoly& a, const UniPoly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("univariate division by zero");
    const Field& F = *a.field;
    const unsigned k = a.k();
    UniPoly rem = a;
    rem.trim();
    UniPoly quot(a.field);
    if (rem.ncoeffs() < b.ncoeffs()) return {std::move(quot), std::move(rem)};
    quot.resize_coeffs(rem.ncoeffs() - b.ncoeffs() + 1);
    std::vector<std::uint64_t> lead_inv(k), c(k);
    F.finv(b.at(b.ncoeffs() - 1), lead_inv.data());
    while (!rem.is_zero() && rem.ncoeffs() >= b.ncoeffs()) {
        std::size_t shift = rem.ncoeffs() - b.ncoeffs();
        F.fmul(rem.at(rem.ncoeffs() - 1), lead_inv.data(), c.data());
        F.fcopy(c.data(), quot.at(shift));
        for (std::size_t j = 0; j < b.ncoeffs(); ++j) F.fsubmul(c.data(), b.at(j), rem.at(shift + j));
        rem.trim();
    }
    quot.trim();
    return {std::move(quot), std::move(rem)};
}

UniPoly u_rem(const UniPoly& a, const UniPoly& b) { return u_divrem(a, b).second; }

UniPoly u_quot_exact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = u_divrem(a, b);
    if (!r.is_zero()) throw std::logic_error("expected exact univariate division");
    return q;
}

UniPoly u_monic(const UniPoly& a) {
    if (a.is_zero()) return a;
    const Field& F = *a.field;
    if (F.feq(a.at(a.ncoeffs() - 1), UniPoly::one(a.field).at(0))) return a;
    return u_scale(a, F.inv(a.lead()));
}

UniPoly u_gcd(UniPoly a, UniPoly b) {
    require_same_field(a, b);
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        UniPoly r = u_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return u_monic(a);
}

UniPoly u_derivative(const UniPoly& a) {
    if (a.ncoeffs() <= 1) return UniPoly::zero(a.field);
    const Field& F = *a.field;
    UniPoly r(a.field);
    r.resize_coeffs(a.ncoeffs() - 1);
    for (std::size_t i = 1; i < a.ncoeffs(); ++i) {
        FieldElement scale = F.from_int(static_cast<unsigned long>(i));
        F.fmul(a.at(i), scale.c.data(), r.at(i - 1));
    }
    r.trim();
    return r;
}

UniPoly u_powmod(const UniPoly& base, const Integer& e, const UniPoly& mod) {
    if (e < 0) throw std::domain_error("negative polynomial exponent");
    UniPoly result = u_rem(UniPoly::one(base.field), mod);
    UniPoly b = u_rem(base, mod);
    Integer n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = u_rem(u_mul(result, b), mod);
        n >>= 1;
        if (n > 0) b = u_rem(u_mul(b, b), mod);
    }
    return result;
}

FieldElement u_eval(const UniPoly& a, const FieldElement& x) {
    const Field& F = *a.field;
    F.check_tag(x);
    FieldElement acc = F.zero();
    for (std::size_t i = a.ncoeffs(); i-- > 0;) {
        acc = F.mul(acc, x);
        acc = F.add(acc, a.coeff(i));
    }
    return acc;
}

UniPoly u_pth_root_poly(const UniPoly& f) {
    const Field& F = *f.field;
    const std::uint64_t p = F.p();
    if (f.is_zero()) return f;
    UniPoly g(f.field);
    std::size_t n = (f.ncoeffs() - 1) / p + 1;
    g.resize_coeffs(n);
    for (std::size_t i = 0; i < f.ncoeffs(); ++i) {
        if (i % p == 0) {
            F.fpth_root(f.at(i), g.at(i / p));
        } else if (!F.fis_zero(f.at(i))) {
            throw std::logic_error("p-th root of a polynomial that is not in F[t^p]");
        }
    }
    g.trim();
    return g;
}

std::vector<std::pair<UniPoly, unsigned>> squarefree_decomposition(const UniPoly& f) {
    std::vector<std::pair<UniPoly, unsigned>> res;
    UniPoly g = u_monic(f);
    if (g.ncoeffs() <= 1) return res;
    const std::uint64_t p = f.field->p();
    UniPoly df = u_derivative(g);
    if (df.is_zero()) {
        for (auto& [h, m] : squarefree_decomposition(u_pth_root_poly(g)))
            res.emplace_back(std::move(h), m * static_cast<unsigned>(p));
        return res;
    }
    UniPoly c = u_gcd(g, df);
    UniPoly w = u_quot_exact(g, c);
    unsigned i = 1;
    while (w.ncoeffs() > 1) {
        UniPoly y = u_gcd(w, c);
        UniPoly z = u_quot_exact(w, y);
        if (z.ncoeffs() > 1) res.emplace_back(std::move(z), i);
        w = std::move(y);
        c = u_quot_exact(c, w);
        ++i;
    }
    if (c.ncoeffs() > 1) {
        for (auto& [h, m] : squarefree_decomposition(u_pth_root_poly(c)))
            res.emplace_back(std::move(h), m * static_cast<unsigned>(p));
    }
    return res;
}

std::vector<std::pair<UniPoly, unsigned>> distinct_degree_split(const UniPoly& f) {
    std::vector<std::pair<UniPoly, unsigned>> res;
    UniPoly g = u_monic(f);
    const Integer Q = f.field->order();
    UniPoly h = u_rem(UniPoly::x(f.field), g);
    unsigned d = 0;
    while (g.ncoeffs() > 1 && static_cast<int>(2 * (d + 1)) <= g.degree()) {
        ++d;
        h = u_powmod(h, Q, g);
        UniPoly split = u_gcd(u_sub(h, UniPoly::x(f.field)), g);
        if (split.ncoeffs() > 1) {
            res.emplace_back(split, d);
            g = u_quot_exact(g, split);
            h = u_rem(h, g);
        }
    }
    if (g.ncoeffs() > 1) res.emplace_back(g, static_cast<unsigned>(g.degree()));
    return res;
}

namespace {

UniPoly random_poly(const FieldPtr& field, std::size_t max_deg, std::mt19937_64& rng) {
    UniPoly r(field);
    r.resize_coeffs(max_deg + 1);
    for (auto& w : r.coeffs) w = rng() % field->p();
    r.trim();
    return r;
}

void edf_recurse(const UniPoly& f, unsigned d, std::mt19937_64& rng, std::vector<UniPoly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(u_monic(f));
        return;
    }
    const FieldPtr& field = f.field;
    const Integer Q = field->order();
    const std::uint64_t p = field->p();
    while (true) {
        UniPoly a = random_poly(field, static_cast<std::size_t>(f.degree() - 1), rng);
        if (a.ncoeffs() == 0) continue;
        UniPoly g;
        if (p == 2) {
            // trace map over F_2: a + a^2 + a^4 + ... with k*d squarings
            unsigned steps = field->deg() * d;
            UniPoly t = u_rem(a, f);
            UniPoly acc = t;
            for (unsigned i = 1; i < steps; ++i) {
                t = u_rem(u_mul(t, t), f);
                acc = u_add(acc, t);
            }
            g = u_gcd(acc, f);
        } else {
            Integer e;
            mpz_pow_ui(e.get_mpz_t(), Q.get_mpz_t(), d);
            e = (e - 1) / 2;
            UniPoly b = u_powmod(a, e, f);
            g = u_gcd(u_sub(b, UniPoly::one(field)), f);
        }
        if (g.ncoeffs() > 1 && g.degree() < f.degree()) {
            edf_recurse(g, d, rng, out);
            edf_recurse(u_quot_exact(f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<UniPoly> equal_degree_split(const UniPoly& f, unsigned d, std::uint64_t seed) {
    std::vector<UniPoly> out;
    if (f.ncoeffs() <= 1) return out;
    std::mt19937_64 rng(seed);
    edf_recurse(u_monic(f), d, rng, out);
    return out;
}

std::vector<std::pair<UniPoly, unsigned>> u_factor(const UniPoly& f, std::uint64_t seed) {
    std::vector<std::pair<UniPoly, unsigned>> out;
    for (const auto& [sqf, mult] : squarefree_decomposition(f)) {
        for (const auto& [prod, d] : distinct_degree_split(sqf)) {
            for (auto& irr : equal_degree_split(prod, d, seed)) out.emplace_back(std::move(irr), mult);
        }
    }
    return out;
}

std::vector<FieldElement> roots_of_split_poly(const UniPoly& f, std::uint64_t seed) {
    const Field& F = *f.field;
    std::vector<FieldElement> roots;
    for (auto& factor : equal_degree_split(f, 1, seed)) {
        if (factor.degree() != 1) throw std::logic_error("polynomial does not split into linear factors");
        roots.push_back(F.neg(factor.coeff(0)));
    }
    return roots;
}

}  // namespace sgf::poly
