#include "sgf/poly.hpp"

#include <stdexcept>

namespace sgf::poly {

bool BinaryForm::is_zero_vector() const {
    for (std::size_t i = 0; i < ncoeffs(); ++i)
        if (!field->fis_zero(at(i))) return false;
    return true;
}

BinaryForm BinaryForm::make(FieldPtr field, unsigned degree, const std::vector<FieldElement>& coeffs) {
    if (coeffs.size() != degree + 1) throw std::domain_error("binary form needs degree+1 coefficients");
    BinaryForm f;
    f.field = std::move(field);
    f.degree = degree;
    f.data.resize((degree + 1) * f.k(), 0);
    for (std::size_t i = 0; i <= degree; ++i) {
        f.field->check_tag(coeffs[i]);
        f.field->fcopy(coeffs[i].c.data(), f.at(i));
    }
    if (f.is_zero_vector()) throw std::domain_error("the zero form is not a valid BinaryForm");
    return f;
}

BinaryForm BinaryForm::monomial(FieldPtr field, unsigned xe, unsigned ye) {
    BinaryForm f;
    f.field = std::move(field);
    f.degree = xe + ye;
    f.data.resize((f.degree + 1) * f.k(), 0);
    f.field->fone(f.at(ye));
    return f;
}

BinaryForm BinaryForm::constant_one(FieldPtr field) { return monomial(std::move(field), 0, 0); }

namespace {

void require_same_field(const BinaryForm& a, const BinaryForm& b) {
    if (!a.field->same_as(*b.field)) throw std::domain_error("binary forms live in different fields");
}

}  // namespace

bool b_eq(const BinaryForm& a, const BinaryForm& b) {
    require_same_field(a, b);
    return a.degree == b.degree && a.data == b.data;
}

BinaryForm b_mul(const BinaryForm& a, const BinaryForm& b) {
    require_same_field(a, b);
    const Field& F = *a.field;
    const unsigned k = a.k();
    BinaryForm r;
    r.field = a.field;
    r.degree = a.degree + b.degree;
    r.data.resize((r.degree + 1) * k, 0);
    std::vector<std::uint64_t> tmp(k);
    for (std::size_t i = 0; i <= a.degree; ++i) {
        if (F.fis_zero(a.at(i))) continue;
        for (std::size_t j = 0; j <= b.degree; ++j) {
            F.fmul(a.at(i), b.at(j), tmp.data());
            F.fadd(r.at(i + j), tmp.data(), r.at(i + j));
        }
    }
    return r;
}

BinaryForm b_pow(const BinaryForm& a, std::uint64_t e) {
    if (e == 0) return BinaryForm::constant_one(a.field);
    BinaryForm base = a;
    BinaryForm result = BinaryForm::constant_one(a.field);
    while (e > 0) {
        if (e & 1) result = b_mul(result, base);
        e >>= 1;
        if (e > 0) base = b_mul(base, base);
    }
    return result;
}

BinaryForm b_scale(const BinaryForm& a, const FieldElement& c) {
    const Field& F = *a.field;
    F.check_tag(c);
    if (F.fis_zero(c.c.data())) throw std::domain_error("scaling a form by zero");
    BinaryForm r = a;
    for (std::size_t i = 0; i <= r.degree; ++i) F.fmul(a.at(i), c.c.data(), r.at(i));
    return r;
}

unsigned b_y_multiplicity(const BinaryForm& a) {
    for (std::size_t i = 0; i <= a.degree; ++i)
        if (!a.field->fis_zero(a.at(i))) return static_cast<unsigned>(i);
    throw std::domain_error("zero form");
}

unsigned b_x_multiplicity(const BinaryForm& a) {
    for (std::size_t i = a.degree + 1; i-- > 0;)
        if (!a.field->fis_zero(a.at(i))) return static_cast<unsigned>(a.degree - i);
    throw std::domain_error("zero form");
}

UniPoly dehomogenize(const BinaryForm& a) {
    // f(t) = F(t,1): coefficient of t^j is the x^j y^{d-j} coefficient
    UniPoly f(a.field);
    f.resize_coeffs(a.degree + 1);
    for (std::size_t i = 0; i <= a.degree; ++i) a.field->fcopy(a.at(i), f.at(a.degree - i));
    f.trim();
    return f;
}

BinaryForm homogenize(const UniPoly& u, unsigned y_mult) {
    if (u.is_zero()) throw std::domain_error("cannot homogenize the zero polynomial");
    BinaryForm r;
    r.field = u.field;
    r.degree = static_cast<unsigned>(u.degree()) + y_mult;
    r.data.resize((r.degree + 1) * r.k(), 0);
    for (std::size_t j = 0; j < u.ncoeffs(); ++j) r.field->fcopy(u.at(j), r.at(r.degree - j));
    return r;
}

BinaryForm b_gcd(const BinaryForm& a, const BinaryForm& b) {
    require_same_field(a, b);
    unsigned ym = std::min(b_y_multiplicity(a), b_y_multiplicity(b));
    UniPoly g = u_gcd(dehomogenize(a), dehomogenize(b));
    return homogenize(g, ym);
}

bool b_coprime(const BinaryForm& a, const BinaryForm& b) { return b_gcd(a, b).degree == 0; }

FieldElement b_evaluate(const BinaryForm& a, const FieldElement& x0, const FieldElement& y0) {
    const Field& F = *a.field;
    F.check_tag(x0);
    F.check_tag(y0);
    // Horner in y0, multiplying through by x0 as the x-exponent drops
    FieldElement acc = F.zero();
    for (std::size_t i = 0; i <= a.degree; ++i) {
        acc = F.mul(acc, x0);
        acc = F.add(acc, F.mul(a.coeff(i), F.pow(y0, arith::Integer(static_cast<unsigned long>(i)))));
    }
    return acc;
}

std::string b_to_string(const BinaryForm& a, const std::string& vx, const std::string& vy) {
    const Field& F = *a.field;
    std::string out;
    for (std::size_t i = 0; i <= a.degree; ++i) {
        if (F.fis_zero(a.at(i))) continue;
        if (!out.empty()) out += "+";
        std::string c = F.to_string(a.coeff(i));
        unsigned xe = a.degree - static_cast<unsigned>(i), ye = static_cast<unsigned>(i);
        std::string mono;
        if (xe > 0) mono += vx + (xe > 1 ? "^" + std::to_string(xe) : "");
        if (ye > 0) {
            if (!mono.empty()) mono += "*";
            mono += vy + (ye > 1 ? "^" + std::to_string(ye) : "");
        }
        if (mono.empty()) {
            out += c;
        } else if (c == "1") {
            out += mono;
        } else {
            bool simple = c.find('+') == std::string::npos && c.find('-') == std::string::npos;
            out += (simple ? c : "(" + c + ")") + "*" + mono;
        }
    }
    return out.empty() ? "0" : out;
}

LinearForm make_linear_form(const FieldPtr& field, const FieldElement& alpha, const FieldElement& beta) {
    const Field& F = *field;
    F.check_tag(alpha);
    F.check_tag(beta);
    if (F.is_zero(alpha)) {
        if (F.is_zero(beta)) throw std::domain_error("linear form requires a nonzero coefficient");
        return LinearForm{F.zero(), F.one()};
    }
    FieldElement inv = F.inv(alpha);
    return LinearForm{F.one(), F.mul(beta, inv)};
}

BinaryForm linear_to_form(const FieldPtr& field, const LinearForm& l) {
    return BinaryForm::make(field, 1, {l.alpha, l.beta});
}

bool proportional(const Field& field, const LinearForm& a, const LinearForm& b) {
    FieldElement det = field.sub(field.mul(a.alpha, b.beta), field.mul(a.beta, b.alpha));
    return field.is_zero(det);
}

std::string linear_to_string(const Field& field, const LinearForm& l) {
    if (field.is_zero(l.alpha)) return "y";
    if (field.is_zero(l.beta)) return "x";
    std::string b = field.to_string(l.beta);
    bool simple = b.find('+') == std::string::npos && b.find('-') == std::string::npos;
    return "x+" + (b == "1" ? std::string("y") : (simple ? b : "(" + b + ")") + "*y");
}

BinaryForm expand(const LinearFactorization& f) {
    BinaryForm acc = BinaryForm::constant_one(f.field);
    for (const auto& [l, mult] : f.factors) acc = b_mul(acc, b_pow(linear_to_form(f.field, l), mult));
    return b_scale(acc, f.unit);
}

std::optional<arith::Integer> Bivariate::weighted_degree(std::uint64_t u, std::uint64_t v) const {
    std::optional<arith::Integer> deg;
    for (const auto& [e, c] : terms) {
        arith::Integer d = arith::Integer(static_cast<unsigned long>(e.first)) * static_cast<unsigned long>(u) +
                           arith::Integer(static_cast<unsigned long>(e.second)) * static_cast<unsigned long>(v);
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

BinaryForm to_form(const Bivariate& g) {
    if (g.is_zero()) throw std::domain_error("the zero polynomial is not a form");
    std::optional<std::uint64_t> deg;
    for (const auto& [e, c] : g.terms) {
        std::uint64_t d = e.first + e.second;
        if (!deg) {
            deg = d;
        } else if (*deg != d) {
            throw std::domain_error("polynomial is not homogeneous: monomials of degree " +
                                    std::to_string(*deg) + " and " + std::to_string(d));
        }
    }
    BinaryForm r;
    r.field = g.field;
    r.degree = static_cast<unsigned>(*deg);
    r.data.resize((r.degree + 1) * r.k(), 0);
    for (const auto& [e, c] : g.terms) r.field->fcopy(c.c.data(), r.at(e.second));
    return r;
}

BinaryForm parse_form(const std::string& text, FieldPtr field, const std::string& vx, const std::string& vy) {
    return to_form(parse_polynomial(text, std::move(field), vx, vy));
}

BinaryForm psi_image(const Bivariate& g, std::uint64_t u, std::uint64_t v) {
    if (g.is_zero()) throw std::domain_error("the zero polynomial has no psi image");
    auto wdeg = g.weighted_degree(u, v);
    if (!wdeg) throw std::domain_error("polynomial is not homogeneous under the given weights");
    BinaryForm r;
    r.field = g.field;
    r.degree = static_cast<unsigned>(wdeg->get_ui());
    r.data.resize((r.degree + 1) * r.k(), 0);
    for (const auto& [e, c] : g.terms) r.field->fcopy(c.c.data(), r.at(e.second * v));
    return r;
}

}  // namespace sgf::poly
