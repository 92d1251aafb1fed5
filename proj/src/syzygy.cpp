#include "sgf/syzygy.hpp"

#include "linalg.hpp"

#include <stdexcept>

namespace sgf::syzygy {

using poly::b_coprime;
using poly::b_gcd;
using poly::UniPoly;

namespace {

void require_same_field(std::span<const BinaryForm> forms) {
    for (std::size_t i = 1; i < forms.size(); ++i)
        if (!forms[0].field->same_as(*forms[i].field))
            throw std::domain_error("forms live in different fields");
}

/// Matrix of the evaluation map (+)_i R_{s-d_i} -> R_s. Rows: monomials
/// x^{s-j} y^j of R_s. Columns: for each form, monomials x^{s-d_i-j'} y^j' of
/// the cofactor space, ascending j'.
Matrix evaluation_matrix(std::span<const BinaryForm> forms, unsigned s) {
    const gf::FieldPtr& field = forms[0].field;
    std::size_t cols = 0;
    for (const auto& f : forms)
        if (f.degree <= s) cols += s - f.degree + 1;
    Matrix m(field, s + 1, cols);
    std::size_t col = 0;
    for (const auto& f : forms) {
        if (f.degree > s) continue;
        for (unsigned j = 0; j + f.degree <= s; ++j, ++col) {
            // x^{s-d-j} y^j * f contributes coeff l of f to row j+l
            for (unsigned l = 0; l <= f.degree; ++l) field->fcopy(f.at(l), m.at(j + l, col));
        }
    }
    return m;
}

std::size_t domain_dim(std::span<const BinaryForm> forms, unsigned s) {
    std::size_t dim = 0;
    for (const auto& f : forms)
        if (f.degree <= s) dim += s - f.degree + 1;
    return dim;
}

arith::Integer sg_quadratic(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    arith::Integer A(static_cast<unsigned long>(a)), B(static_cast<unsigned long>(b)),
        C(static_cast<unsigned long>(c));
    return 2 * A * B + 2 * A * C + 2 * B * C - A * A - B * B - C * C;
}

}  // namespace

std::size_t graded_kernel_dim(std::span<const BinaryForm> forms, unsigned s) {
    require_same_field(forms);
    std::size_t dim = domain_dim(forms, s);
    if (dim == 0) return 0;
    return dim - rank(evaluation_matrix(forms, s));
}

std::uint64_t colength(std::span<const BinaryForm> forms) {
    require_same_field(forms);
    unsigned cap = 0;
    for (const auto& f : forms) cap += f.degree;
    std::uint64_t total = 0;
    for (unsigned d = 0; d <= cap; ++d) {
        std::size_t rk = domain_dim(forms, d) == 0 ? 0 : rank(evaluation_matrix(forms, d));
        std::uint64_t codim = d + 1 - rk;
        if (codim == 0) return total;
        total += codim;
    }
    throw std::domain_error("generators share a common factor: infinite colength");
}

std::uint64_t colength(const TwoGenIdeal& ideal) {
    const BinaryForm gens[] = {ideal.u(), ideal.v()};
    return colength(gens);
}

std::uint64_t colength(const TripleIdeal& ideal) {
    const BinaryForm gens[] = {ideal.f, ideal.g, ideal.h};
    return colength(gens);
}

TwoGenIdeal TwoGenIdeal::make(BinaryForm u, BinaryForm v) {
    if (!u.field->same_as(*v.field)) throw std::domain_error("ideal generators in different fields");
    if (u.degree == 0 || v.degree == 0) throw std::domain_error("ideal generators must be non-constant");
    if (!b_coprime(u, v)) throw std::domain_error("ideal generators are not coprime");
    TwoGenIdeal ideal(std::move(u), std::move(v));
    if (ideal.deg_uv() <= kVerifyDegreeCap) {
        if (colength(ideal) != ideal.colength_value())
            throw std::logic_error("colength of <U,V> disagrees with deg U * deg V");
    }
    return ideal;
}

TripleIdeal TripleIdeal::make(BinaryForm f, BinaryForm g, BinaryForm h) {
    BinaryForm common = b_gcd(b_gcd(f, g), h);
    if (common.degree > 0) throw std::domain_error("triple has a common factor");
    return TripleIdeal{std::move(f), std::move(g), std::move(h)};
}

std::uint64_t syzygy_gap(const BinaryForm& f, const BinaryForm& g, const BinaryForm& h, GapCheck check) {
    BinaryForm common = b_gcd(b_gcd(f, g), h);
    if (common.degree > 0) throw std::domain_error("syzygy gap undefined: common factor");
    const BinaryForm forms[] = {f, g, h};
    const std::uint64_t total = f.degree + g.degree + h.degree;
    std::uint64_t m = 0;
    bool found = false;
    for (unsigned s = 0; s <= total / 2; ++s) {
        if (graded_kernel_dim(forms, s) > 0) {
            m = s;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("no syzygy found below half the total degree");
    std::uint64_t n = total - m;
    std::uint64_t delta = n - m;

    // Hilbert consistency: the kernel in degree m is 1-dimensional, or
    // 2-dimensional when the resolution is balanced.
    std::size_t kdim = graded_kernel_dim(forms, static_cast<unsigned>(m));
    std::size_t expect = (m == n) ? 2 : 1;
    if (kdim != expect) throw std::logic_error("syzygy kernel dimension inconsistent with resolution");

    bool full = check == GapCheck::full ||
                (check == GapCheck::automatic && total <= TwoGenIdeal::kVerifyDegreeCap);
    if (full) {
        arith::Integer lhs = 4 * arith::Integer(static_cast<unsigned long>(colength(forms)));
        arith::Integer rhs = sg_quadratic(f.degree, g.degree, h.degree) +
                             arith::Integer(static_cast<unsigned long>(delta)) * static_cast<unsigned long>(delta);
        if (lhs != rhs) throw std::logic_error("syzygy gap fails the colength identity");
    }
    return delta;
}

bool member(std::span<const BinaryForm> gens, const BinaryForm& target) {
    require_same_field(gens);
    if (!gens.empty() && !gens[0].field->same_as(*target.field))
        throw std::domain_error("membership test across different fields");
    unsigned s = target.degree;
    std::size_t dim = domain_dim(gens, s);
    if (dim == 0) return false;
    // [A | target]: member iff no pivot lands in the last column
    Matrix m(target.field, s + 1, dim + 1);
    {
        Matrix a = evaluation_matrix(gens, s);
        for (std::size_t r = 0; r <= s; ++r)
            for (std::size_t c = 0; c < dim; ++c) target.field->fcopy(a.at(r, c), m.at(r, c));
    }
    for (unsigned l = 0; l <= s; ++l) target.field->fcopy(target.at(l), m.at(l, dim));
    auto pivots = rref(m);
    return pivots.empty() || pivots.back() != dim;
}

bool member(const TwoGenIdeal& ideal, const BinaryForm& f) {
    const BinaryForm gens[] = {ideal.u(), ideal.v()};
    return member(gens, f);
}

namespace {

/// Normalizes a form so its lowest-index nonzero coefficient is 1.
BinaryForm normalize_form(const BinaryForm& f) {
    const gf::Field& F = *f.field;
    for (std::size_t i = 0; i <= f.degree; ++i) {
        if (!F.fis_zero(f.at(i))) {
            gf::FieldElement lead = f.coeff(i);
            if (F.is_one(lead)) return f;
            return b_scale(f, F.inv(lead));
        }
    }
    throw std::logic_error("normalizing the zero form");
}

/// Extracts the component of `vec` belonging to form index `idx` as a form of
/// degree s - d_idx; returns nullopt when the component is identically zero.
std::optional<BinaryForm> component_form(std::span<const BinaryForm> forms, unsigned s,
                                         const std::vector<std::uint64_t>& vec, std::size_t idx) {
    const gf::FieldPtr& field = forms[0].field;
    const unsigned k = field->deg();
    std::size_t offset = 0;
    for (std::size_t i = 0; i < idx; ++i)
        if (forms[i].degree <= s) offset += s - forms[i].degree + 1;
    if (forms[idx].degree > s) return std::nullopt;
    unsigned comp_deg = s - forms[idx].degree;
    BinaryForm out;
    out.field = field;
    out.degree = comp_deg;
    out.data.assign((comp_deg + 1) * k, 0);
    bool nonzero = false;
    for (unsigned j = 0; j <= comp_deg; ++j) {
        const std::uint64_t* src = vec.data() + (offset + j) * k;
        if (!field->fis_zero(src)) nonzero = true;
        // column j is the monomial x^{comp_deg-j} y^j, which is coeff index j
        field->fcopy(src, out.at(j));
    }
    if (!nonzero) return std::nullopt;
    return out;
}

}  // namespace

std::optional<TwoGenIdeal> colon(const TwoGenIdeal& ideal, const BinaryForm& f) {
    if (!ideal.field()->same_as(*f.field)) throw std::domain_error("colon across different fields");
    const BinaryForm forms[] = {ideal.u(), ideal.v(), f};
    const std::uint64_t total = ideal.deg_uv() + f.degree;

    std::uint64_t m = 0;
    bool found = false;
    std::vector<std::vector<std::uint64_t>> kernel_m;
    for (unsigned s = 0; s <= total / 2; ++s) {
        if (domain_dim(forms, s) == 0) continue;
        kernel_m = kernel_basis(evaluation_matrix(forms, s));
        if (!kernel_m.empty()) {
            m = s;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("colon: no syzygy found");
    const std::uint64_t n = total - m;

    std::vector<std::vector<std::uint64_t>> generators;
    generators.push_back(kernel_m.front());
    std::vector<std::uint64_t> gen_degrees{m};

    if (m == n && kernel_m.size() >= 2) {
        generators.push_back(kernel_m[1]);
        gen_degrees.push_back(n);
    } else {
        // second generator: a degree-n kernel vector independent of the
        // R_{n-m}-multiples of the first syzygy
        auto kernel_n = kernel_basis(evaluation_matrix(forms, static_cast<unsigned>(n)));
        const gf::FieldPtr& field = ideal.field();
        const unsigned k = field->deg();
        std::size_t ncols = domain_dim(forms, static_cast<unsigned>(n));
        unsigned shift = static_cast<unsigned>(n - m);
        Matrix span(field, shift + 1, ncols);
        // row j: x^{shift-j} y^j * syz1, realized per component
        for (unsigned j = 0; j <= shift; ++j) {
            std::size_t off_m = 0, off_n = 0;
            for (std::size_t idx = 0; idx < 3; ++idx) {
                if (forms[idx].degree > m) {
                    if (forms[idx].degree <= n) off_n += n - forms[idx].degree + 1;
                    continue;
                }
                unsigned cm = static_cast<unsigned>(m) - forms[idx].degree;
                for (unsigned jm = 0; jm <= cm; ++jm) {
                    const std::uint64_t* src = generators[0].data() + (off_m + jm) * k;
                    if (!field->fis_zero(src)) {
                        // monomial y^j * (component monomial y^jm) = y^{j+jm}
                        field->fcopy(src, span.at(j, off_n + j + jm));
                    }
                }
                off_m += cm + 1;
                off_n += n - forms[idx].degree + 1;
            }
        }
        auto span_pivots = rref(span);
        bool appended = false;
        for (auto& cand : kernel_n) {
            reduce_against(span, span_pivots, cand);
            bool zero = true;
            for (std::size_t c = 0; c < ncols && zero; ++c)
                if (!field->fis_zero(cand.data() + c * k)) zero = false;
            if (!zero) {
                generators.push_back(cand);
                gen_degrees.push_back(n);
                appended = true;
                break;
            }
        }
        if (!appended) throw std::logic_error("colon: missing second syzygy generator");
    }

    // f-components (index 2) of the two generators
    std::vector<BinaryForm> comps;
    bool unit = false;
    for (std::size_t i = 0; i < 2; ++i) {
        auto comp = component_form(forms, static_cast<unsigned>(gen_degrees[i]), generators[i], 2);
        if (!comp) continue;
        if (comp->degree == 0) unit = true;
        comps.push_back(std::move(*comp));
    }
    if (unit) return std::nullopt;
    if (comps.size() != 2) throw std::logic_error("colon: degenerate syzygy components");
    return TwoGenIdeal::make(normalize_form(comps[0]), normalize_form(comps[1]));
}

TwoGenIdeal frobenius_power(const TwoGenIdeal& ideal) {
    std::uint64_t p = ideal.field()->p();
    return TwoGenIdeal(poly::b_pow(ideal.u(), p), poly::b_pow(ideal.v(), p));
}

TwoGenIdeal frobenius_power(const TwoGenIdeal& ideal, unsigned e) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) q *= ideal.field()->p();
    return TwoGenIdeal(poly::b_pow(ideal.u(), q), poly::b_pow(ideal.v(), q));
}

}  // namespace sgf::syzygy
