#include "sgf/poly.hpp"

#include <cctype>
#include <stdexcept>

namespace sgf::poly {

namespace {

constexpr std::size_t kTermCap = 4'000'000;
constexpr std::uint64_t kExponentCap = 100'000'000;

struct Parser {
    FieldPtr field;
    const std::string& text;
    const std::string& vx;
    const std::string& vy;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::domain_error("parse error at position " + std::to_string(pos) + ": " + what);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    Bivariate make_zero() const { return Bivariate{field, {}}; }

    Bivariate make_const(const FieldElement& c) const {
        Bivariate r{field, {}};
        if (!field->is_zero(c)) r.terms.emplace(std::make_pair(0ull, 0ull), c);
        return r;
    }

    Bivariate make_var(bool is_y) const {
        Bivariate r{field, {}};
        r.terms.emplace(std::make_pair(is_y ? 0ull : 1ull, is_y ? 1ull : 0ull), field->one());
        return r;
    }

    static bool plain_degree(const Bivariate& a, std::uint64_t& deg) {
        bool first = true;
        for (const auto& [e, c] : a.terms) {
            std::uint64_t d = e.first + e.second;
            if (first) {
                deg = d;
                first = false;
            } else if (deg != d) {
                return false;
            }
        }
        return !first;
    }

    Bivariate add(Bivariate a, const Bivariate& b, bool subtract) const {
        const Field& F = *field;
        for (const auto& [e, c] : b.terms) {
            auto it = a.terms.find(e);
            FieldElement v = subtract ? F.neg(c) : c;
            if (it == a.terms.end()) {
                a.terms.emplace(e, std::move(v));
            } else {
                it->second = F.add(it->second, v);
                if (F.is_zero(it->second)) a.terms.erase(it);
            }
        }
        return a;
    }

    Bivariate mul(const Bivariate& a, const Bivariate& b) const {
        const Field& F = *field;
        if (a.is_zero() || b.is_zero()) return make_zero();
        std::uint64_t da = 0, db = 0;
        if (plain_degree(a, da) && plain_degree(b, db)) return mul_homogeneous(a, da, b, db);
        Bivariate r{field, {}};
        for (const auto& [ea, ca] : a.terms) {
            for (const auto& [eb, cb] : b.terms) {
                auto e = std::make_pair(ea.first + eb.first, ea.second + eb.second);
                FieldElement prod = F.mul(ca, cb);
                auto it = r.terms.find(e);
                if (it == r.terms.end()) {
                    if (!F.is_zero(prod)) r.terms.emplace(e, std::move(prod));
                } else {
                    it->second = F.add(it->second, prod);
                    if (F.is_zero(it->second)) r.terms.erase(it);
                }
                if (r.terms.size() > kTermCap) fail("expression expands to too many terms");
            }
        }
        return r;
    }

    // dense convolution on the y-exponents when both operands are homogeneous
    Bivariate mul_homogeneous(const Bivariate& a, std::uint64_t da, const Bivariate& b,
                              std::uint64_t db) const {
        const Field& F = *field;
        const unsigned k = F.deg();
        std::uint64_t dr = da + db;
        if (dr > kTermCap) fail("expression degree too large");
        std::vector<std::uint64_t> acc((dr + 1) * k, 0), tmp(k);
        for (const auto& [ea, ca] : a.terms) {
            for (const auto& [eb, cb] : b.terms) {
                std::uint64_t ye = ea.second + eb.second;
                F.fmul(ca.c.data(), cb.c.data(), tmp.data());
                F.fadd(acc.data() + ye * k, tmp.data(), acc.data() + ye * k);
            }
        }
        Bivariate r{field, {}};
        for (std::uint64_t ye = 0; ye <= dr; ++ye) {
            if (!F.fis_zero(acc.data() + ye * k))
                r.terms.emplace(std::make_pair(dr - ye, ye), F.wrap(acc.data() + ye * k));
        }
        return r;
    }

    Bivariate power(const Bivariate& a, std::uint64_t e) const {
        Bivariate result = make_const(field->one());
        Bivariate base = a;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            e >>= 1;
            if (e > 0) base = mul(base, base);
        }
        return result;
    }

    Bivariate parse_expr() {
        Bivariate acc = parse_term();
        while (true) {
            if (consume('+'))
                acc = add(std::move(acc), parse_term(), false);
            else if (consume('-'))
                acc = add(std::move(acc), parse_term(), true);
            else
                return acc;
        }
    }

    Bivariate parse_term() {
        Bivariate acc = parse_factor();
        while (true) {
            skip_ws();
            if (consume('*')) {
                acc = mul(acc, parse_factor());
            } else {
                char c = peek();
                if (c == '(' || std::isalnum(static_cast<unsigned char>(c)))
                    fail("implicit multiplication is not allowed; use '*'");
                return acc;
            }
        }
    }

    Bivariate parse_factor() {
        skip_ws();
        bool negate = false;
        while (consume('-')) negate = !negate;
        Bivariate base = parse_atom();
        while (consume('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) fail("expected a natural number exponent after '^'");
            std::uint64_t e = 0;
            for (std::size_t i = start; i < pos; ++i) {
                e = e * 10 + static_cast<std::uint64_t>(text[i] - '0');
                if (e > kExponentCap) fail("exponent too large");
            }
            base = power(base, e);
        }
        if (negate) {
            Bivariate neg{field, {}};
            return add(std::move(neg), base, true);
        }
        return base;
    }

    Bivariate parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (consume('(')) {
            Bivariate inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            return make_const(field->from_int(arith::Integer(text.substr(start, pos - start))));
        }
        if (matches(vx)) {
            pos += vx.size();
            return make_var(false);
        }
        if (matches(vy)) {
            pos += vy.size();
            return make_var(true);
        }
        const std::string& g = field->generator_symbol();
        if (field->deg() > 1 && matches(g)) {
            pos += g.size();
            return make_const(field->gen());
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
            std::string name = text.substr(start, pos - start);
            pos = start;
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    bool matches(const std::string& name) {
        if (name.empty() || text.compare(pos, name.size(), name) != 0) return false;
        // reject prefixes of longer identifiers: x matches in "x*y" but not "xy"
        std::size_t end = pos + name.size();
        return end >= text.size() || !std::isalnum(static_cast<unsigned char>(text[end]));
    }
};

}  // namespace

Bivariate parse_polynomial(const std::string& text, FieldPtr field, const std::string& vx,
                           const std::string& vy) {
    Parser p{std::move(field), text, vx, vy};
    Bivariate result = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return result;
}

}  // namespace sgf::poly
