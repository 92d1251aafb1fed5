#include "sgf/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sgf::poly {

namespace {

// canonical order: x, then x + beta*y by beta's coefficient vector, then y
bool factor_less(const std::pair<LinearForm, std::uint64_t>& a, const std::pair<LinearForm, std::uint64_t>& b) {
    bool ay = a.first.alpha.c == std::vector<std::uint64_t>(a.first.alpha.c.size(), 0);
    bool by = b.first.alpha.c == std::vector<std::uint64_t>(b.first.alpha.c.size(), 0);
    if (ay != by) return by;  // y sorts last
    return a.first.beta.c < b.first.beta.c;
}

}  // namespace

LinearFactorization factor_linear(const BinaryForm& g, const FactorConfig& cfg) {
    if (g.degree == 0) throw std::domain_error("constant forms have no linear factorization");
    const FieldPtr base = g.field;
    const std::uint64_t p = base->p();

    unsigned y_mult = b_y_multiplicity(g);
    UniPoly f = dehomogenize(g);  // degree = deg g - y_mult
    unsigned x_mult = 0;
    while (base->fis_zero(f.at(0))) {
        // strip t-multiplicity (factors of x)
        f.coeffs.erase(f.coeffs.begin(), f.coeffs.begin() + f.k());
        ++x_mult;
        if (f.is_zero()) throw std::logic_error("dehomogenized form vanished");
    }

    FieldElement unit_base = f.lead();
    std::vector<std::pair<UniPoly, unsigned>> irreducibles;
    if (f.degree() > 0) irreducibles = u_factor(u_monic(f), cfg.seed);

    // splitting field degree: lcm of the irreducible factor degrees, relative
    // to the coefficient field
    std::uint64_t rel = 1;
    for (const auto& [h, m] : irreducibles) rel = std::lcm<std::uint64_t>(rel, static_cast<std::uint64_t>(h.degree()));

    FieldPtr split = base;
    if (rel > 1) split = gf::Field::extension(p, static_cast<unsigned>(base->deg() * rel), base->generator_symbol());
    gf::Embedding emb(base, split);

    LinearFactorization out;
    out.field = split;
    out.unit = emb.apply(unit_base);
    if (x_mult > 0)
        out.factors.emplace_back(LinearForm{split->one(), split->zero()}, x_mult);
    if (y_mult > 0)
        out.factors.emplace_back(LinearForm{split->zero(), split->one()}, y_mult);

    for (const auto& [h, mult] : irreducibles) {
        UniPoly hs(split);
        hs.resize_coeffs(h.ncoeffs());
        for (std::size_t i = 0; i < h.ncoeffs(); ++i) {
            FieldElement c = emb.apply(h.coeff(i));
            split->fcopy(c.c.data(), hs.at(i));
        }
        auto roots = roots_of_split_poly(hs, cfg.seed);
        if (roots.size() != static_cast<std::size_t>(h.degree()))
            throw std::logic_error("irreducible factor did not split in the computed extension");
        for (const auto& r : roots)
            out.factors.emplace_back(LinearForm{split->one(), split->neg(r)}, mult);
    }

    std::sort(out.factors.begin(), out.factors.end(), factor_less);

    // invariants: multiplicities sum to deg g, factors pairwise prime, and the
    // factorization reproduces the input over the splitting field
    std::uint64_t total = 0;
    for (const auto& [l, m] : out.factors) total += m;
    if (total != g.degree) throw std::logic_error("factor multiplicities do not sum to the degree");
    for (std::size_t i = 0; i < out.factors.size(); ++i)
        for (std::size_t j = i + 1; j < out.factors.size(); ++j)
            if (proportional(*split, out.factors[i].first, out.factors[j].first))
                throw std::logic_error("factorization produced proportional linear forms");
    BinaryForm expanded = expand(out);
    BinaryForm lifted;
    lifted.field = split;
    lifted.degree = g.degree;
    lifted.data.resize((g.degree + 1) * split->deg(), 0);
    for (std::size_t i = 0; i <= g.degree; ++i) {
        FieldElement c = emb.apply(g.coeff(i));
        split->fcopy(c.c.data(), lifted.at(i));
    }
    if (!b_eq(expanded, lifted)) throw std::logic_error("factorization does not reproduce the input form");
    return out;
}

}  // namespace sgf::poly
