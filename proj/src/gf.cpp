#include "sgf/gf.hpp"

#include "sgf/univariate.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace sgf::gf {

namespace {

constexpr std::uint64_t kMaxPrime = (1ull << 31);

// --- univariate arithmetic over F_p on bare vectors, used for modulus work ---

using PVec = std::vector<std::uint64_t>;  // coefficients low degree first, no trailing zeros

void pv_trim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pv_mulmod(const PVec& a, const PVec& b, const PVec& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // reduce by monic m
    const std::size_t k = m.size() - 1;
    for (std::size_t i = r.size(); i-- > k;) {
        std::uint64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (std::size_t j = 0; j < k; ++j) {
            std::uint64_t sub = (c * m[j]) % p;
            r[i - k + j] = (r[i - k + j] + p - sub) % p;
        }
    }
    r.resize(k);
    pv_trim(r);
    return r;
}

PVec pv_powmod(PVec base, arith::Integer e, const PVec& m, std::uint64_t p) {
    PVec result{1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = pv_mulmod(result, base, m, p);
        e >>= 1;
        if (e > 0) base = pv_mulmod(base, base, m, p);
    }
    return result;
}

PVec pv_sub(PVec a, const PVec& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    pv_trim(a);
    return a;
}

std::uint64_t pv_inv_scalar(std::uint64_t a, std::uint64_t p) {
    // extended Euclid on integers
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("non-invertible residue");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

PVec pv_divrem(PVec a, const PVec& b, std::uint64_t p, PVec* quot = nullptr) {
    pv_trim(a);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    PVec q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, 0);
    std::uint64_t lead_inv = pv_inv_scalar(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t c = (a.back() * lead_inv) % p;
        std::size_t shift = a.size() - b.size();
        if (c != 0) {
            q[shift] = c;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t sub = (c * b[j]) % p;
                a[shift + j] = (a[shift + j] + p - sub) % p;
            }
        }
        a.pop_back();
        pv_trim(a);
        if (a.size() >= b.size() && a.empty()) break;
    }
    if (quot) *quot = q;
    return a;
}

PVec pv_gcd(PVec a, PVec b, std::uint64_t p) {
    pv_trim(a);
    pv_trim(b);
    while (!b.empty()) {
        PVec r = pv_divrem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        std::uint64_t inv = pv_inv_scalar(a.back(), p);
        for (auto& c : a) c = (c * inv) % p;
    }
    return a;
}

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& monic) {
    if (monic.size() < 2 || monic.back() != 1) return false;
    unsigned k = static_cast<unsigned>(monic.size() - 1);
    if (k == 1) return true;
    PVec t{0, 1};
    // x^{p^j} mod m via iterated powering by p
    std::vector<PVec> frob(k + 1);
    frob[0] = t;
    for (unsigned j = 1; j <= k; ++j)
        frob[j] = pv_powmod(frob[j - 1], arith::Integer(static_cast<unsigned long>(p)), monic, p);
    if (pv_sub(frob[k], t, p) != PVec{}) return false;
    for (unsigned r = 2; r <= k; ++r) {
        if (k % r != 0) continue;
        bool r_prime = true;
        for (unsigned d = 2; d * d <= r; ++d)
            if (r % d == 0) r_prime = false;
        if (!r_prime) continue;
        PVec diff = pv_sub(frob[k / r], t, p);
        if (pv_gcd(diff, monic, p).size() != 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> find_irreducible(std::uint64_t p, unsigned k) {
    if (k == 0) throw std::domain_error("extension degree must be >= 1");
    if (k == 1) return {0, 1};
    std::vector<std::uint64_t> coeffs(k + 1, 0);
    coeffs[k] = 1;
    // enumerate constant-first lexicographic order: c0 varies slowest
    while (true) {
        if (is_irreducible_mod_p(p, coeffs)) return coeffs;
        // increment (c0,...,c_{k-1}) with c_{k-1} fastest
        unsigned i = k;
        while (i-- > 0) {
            if (++coeffs[i] < p) break;
            coeffs[i] = 0;
            if (i == 0) throw std::logic_error("no irreducible polynomial found");
        }
    }
}

Field::Field(std::uint64_t p, unsigned k, std::vector<std::uint64_t> mod, std::string gen)
    : p_(p), k_(k), mod_(std::move(mod)), gen_(std::move(gen)) {
    neg_mod_.resize(k_);
    for (unsigned i = 0; i < k_; ++i) neg_mod_[i] = (p_ - mod_[i] % p_) % p_;
    std::uint64_t h = 0xcbf29ce484222325ull;
    h = fnv_mix(h, p_);
    h = fnv_mix(h, k_);
    for (auto c : mod_) h = fnv_mix(h, c);
    tag_ = h;
}

FieldPtr Field::prime_field(std::uint64_t p) { return with_modulus(p, {0, 1}); }

FieldPtr Field::extension(std::uint64_t p, unsigned k, std::string gen) {
    return with_modulus(p, find_irreducible(p, k), std::move(gen));
}

FieldPtr Field::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus, std::string gen) {
    if (p < 2 || p >= kMaxPrime || !arith::is_prime(p)) throw std::domain_error("field characteristic must be a prime < 2^31");
    if (modulus.size() < 2) throw std::domain_error("modulus must have degree >= 1");
    for (auto& c : modulus) c %= p;
    if (modulus.back() != 1) throw std::domain_error("modulus must be monic");
    if (modulus.size() == 2 && modulus[0] != 0)
        throw std::domain_error("degree-1 modulus must be the polynomial t");
    if (!is_irreducible_mod_p(p, modulus)) throw std::domain_error("modulus is not irreducible over F_p");
    unsigned k = static_cast<unsigned>(modulus.size() - 1);
    return FieldPtr(new Field(p, k, std::move(modulus), std::move(gen)));
}

Integer Field::order() const {
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), p_, k_);
    return q;
}

bool Field::same_as(const Field& other) const {
    return p_ == other.p_ && k_ == other.k_ && mod_ == other.mod_;
}

FieldElement Field::zero() const { return FieldElement{std::vector<std::uint64_t>(k_, 0), tag_}; }

FieldElement Field::one() const {
    FieldElement e = zero();
    e.c[0] = 1 % p_;
    return e;
}

FieldElement Field::gen() const {
    if (k_ == 1) throw std::domain_error("prime field has no extension generator");
    FieldElement e = zero();
    e.c[1] = 1;
    return e;
}

FieldElement Field::from_int(const Integer& n) const {
    Integer r = n % Integer(static_cast<unsigned long>(p_));
    if (r < 0) r += static_cast<unsigned long>(p_);
    FieldElement e = zero();
    e.c[0] = r.get_ui();
    return e;
}

FieldElement Field::from_coeffs(std::vector<std::uint64_t> coeffs) const {
    if (coeffs.size() > k_) throw std::domain_error("coefficient vector longer than extension degree");
    coeffs.resize(k_, 0);
    for (auto& c : coeffs) c %= p_;
    return FieldElement{std::move(coeffs), tag_};
}

void Field::check_tag(const FieldElement& a) const {
    if (a.tag != tag_ || a.c.size() != k_) throw std::domain_error("field element does not belong to this field");
}

FieldElement Field::wrap(const std::uint64_t* a) const {
    return FieldElement{std::vector<std::uint64_t>(a, a + k_), tag_};
}

bool Field::is_zero(const FieldElement& a) const {
    check_tag(a);
    return fis_zero(a.c.data());
}

bool Field::is_one(const FieldElement& a) const { return eq(a, one()); }

bool Field::eq(const FieldElement& a, const FieldElement& b) const {
    check_tag(a);
    check_tag(b);
    return a.c == b.c;
}

#define SGF_BINOP(name, fname)                                                  \
    FieldElement Field::name(const FieldElement& a, const FieldElement& b) const { \
        check_tag(a);                                                           \
        check_tag(b);                                                           \
        FieldElement r = zero();                                                \
        fname(a.c.data(), b.c.data(), r.c.data());                              \
        return r;                                                               \
    }

SGF_BINOP(add, fadd)
SGF_BINOP(sub, fsub)
SGF_BINOP(mul, fmul)
#undef SGF_BINOP

FieldElement Field::div(const FieldElement& a, const FieldElement& b) const { return mul(a, inv(b)); }

FieldElement Field::neg(const FieldElement& a) const {
    check_tag(a);
    FieldElement r = zero();
    fneg(a.c.data(), r.c.data());
    return r;
}

FieldElement Field::inv(const FieldElement& a) const {
    check_tag(a);
    FieldElement r = zero();
    finv(a.c.data(), r.c.data());
    return r;
}

FieldElement Field::pow(const FieldElement& a, const Integer& e) const {
    check_tag(a);
    FieldElement r = zero();
    fpow(a.c.data(), e, r.c.data());
    return r;
}

FieldElement Field::frobenius(const FieldElement& a) const {
    check_tag(a);
    FieldElement r = zero();
    ffrobenius(a.c.data(), r.c.data());
    return r;
}

FieldElement Field::pth_root(const FieldElement& a) const {
    check_tag(a);
    FieldElement r = zero();
    fpth_root(a.c.data(), r.c.data());
    return r;
}

std::string Field::to_string(const FieldElement& a) const {
    check_tag(a);
    std::string out;
    for (unsigned i = k_; i-- > 0;) {
        std::uint64_t c = a.c[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c) + "*";
            out += gen_;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

void Field::fzero(std::uint64_t* r) const { std::fill(r, r + k_, 0); }

void Field::fone(std::uint64_t* r) const {
    fzero(r);
    r[0] = 1 % p_;
}

void Field::fcopy(const std::uint64_t* a, std::uint64_t* r) const { std::copy(a, a + k_, r); }

bool Field::fis_zero(const std::uint64_t* a) const {
    for (unsigned i = 0; i < k_; ++i)
        if (a[i] != 0) return false;
    return true;
}

bool Field::feq(const std::uint64_t* a, const std::uint64_t* b) const {
    return std::equal(a, a + k_, b);
}

void Field::fadd(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* r) const {
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t s = a[i] + b[i];
        r[i] = s >= p_ ? s - p_ : s;
    }
}

void Field::fsub(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* r) const {
    for (unsigned i = 0; i < k_; ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
}

void Field::fneg(const std::uint64_t* a, std::uint64_t* r) const {
    for (unsigned i = 0; i < k_; ++i) r[i] = a[i] == 0 ? 0 : p_ - a[i];
}

void Field::fmul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* r) const {
    if (k_ == 1) {
        r[0] = (a[0] * b[0]) % p_;
        return;
    }
    thread_local std::vector<std::uint64_t> scratch;
    scratch.assign(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j) scratch[i + j] = (scratch[i + j] + a[i] * b[j]) % p_;
    }
    for (unsigned i = 2 * k_ - 1; i-- > k_;) {
        std::uint64_t c = scratch[i];
        if (c == 0) continue;
        for (unsigned j = 0; j < k_; ++j)
            scratch[i - k_ + j] = (scratch[i - k_ + j] + c * neg_mod_[j]) % p_;
    }
    std::copy(scratch.begin(), scratch.begin() + k_, r);
}

void Field::fsubmul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* acc) const {
    if (k_ == 1) {
        std::uint64_t prod = (a[0] * b[0]) % p_;
        acc[0] = acc[0] >= prod ? acc[0] - prod : acc[0] + p_ - prod;
        return;
    }
    thread_local std::vector<std::uint64_t> tmp;
    tmp.assign(k_, 0);
    fmul(a, b, tmp.data());
    fsub(acc, tmp.data(), acc);
}

void Field::finv(const std::uint64_t* a, std::uint64_t* r) const {
    if (fis_zero(a)) throw std::domain_error("division by zero in finite field");
    if (k_ == 1) {
        r[0] = pv_inv_scalar(a[0], p_);
        return;
    }
    PVec u(a, a + k_);
    pv_trim(u);
    // extended Euclid: s*u + t*mod = gcd
    PVec v = mod_;
    PVec s1{1}, s2{};
    while (!v.empty()) {
        PVec q;
        PVec rem = pv_divrem(u, v, p_, &q);
        u = std::move(v);
        v = std::move(rem);
        // s1, s2 = s2, s1 - q*s2
        PVec qs2;
        if (!q.empty() && !s2.empty()) {
            qs2.assign(q.size() + s2.size() - 1, 0);
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s2.size(); ++j)
                    qs2[i + j] = (qs2[i + j] + q[i] * s2[j]) % p_;
        }
        PVec next = pv_sub(std::move(s1), qs2, p_);
        s1 = std::move(s2);
        s2 = std::move(next);
    }
    // u = gcd (constant), s1 its Bezout coefficient
    if (u.size() != 1) throw std::logic_error("modulus not irreducible in finv");
    std::uint64_t scale = pv_inv_scalar(u[0], p_);
    fzero(r);
    for (std::size_t i = 0; i < s1.size() && i < k_; ++i) r[i] = (s1[i] * scale) % p_;
}

void Field::fpow(const std::uint64_t* a, const Integer& e, std::uint64_t* r) const {
    if (e < 0) throw std::domain_error("negative field exponent");
    thread_local std::vector<std::uint64_t> base, acc;
    base.assign(a, a + k_);
    acc.assign(k_, 0);
    acc[0] = 1 % p_;
    Integer n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) fmul(acc.data(), base.data(), acc.data());
        n >>= 1;
        if (n > 0) fmul(base.data(), base.data(), base.data());
    }
    std::copy(acc.begin(), acc.end(), r);
}

void Field::ffrobenius(const std::uint64_t* a, std::uint64_t* r) const {
    if (k_ == 1) {
        r[0] = a[0];
        return;
    }
    fpow(a, Integer(static_cast<unsigned long>(p_)), r);
}

void Field::fpth_root(const std::uint64_t* a, std::uint64_t* r) const {
    // inverse of Frobenius: x -> x^{p^{k-1}}
    fcopy(a, r);
    for (unsigned i = 0; i + 1 < k_; ++i) ffrobenius(r, r);
}

// --- embedding ---

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p()) throw std::domain_error("embedding requires equal characteristic");
    if (dst_->deg() % src_->deg() != 0)
        throw std::domain_error("embedding requires source degree dividing target degree");
    if (src_->same_as(*dst_)) {
        root_ = src_->deg() > 1 ? dst_->gen() : dst_->one();
        return;
    }
    if (src_->deg() == 1) {
        root_ = dst_->zero();
        return;
    }
    // roots of the source modulus in the target; the modulus has prime-field
    // coefficients, so it transfers verbatim
    poly::UniPoly m(dst_);
    m.coeffs.resize(src_->modulus().size() * dst_->deg(), 0);
    for (std::size_t i = 0; i < src_->modulus().size(); ++i)
        m.coeffs[i * dst_->deg()] = src_->modulus()[i] % dst_->p();
    m.trim();
    auto roots = poly::roots_of_split_poly(m, 0x5eedf1e1du);
    if (roots.size() != src_->deg()) throw std::logic_error("source modulus does not split in target field");
    std::sort(roots.begin(), roots.end(),
              [](const FieldElement& x, const FieldElement& y) { return x.c < y.c; });
    root_ = roots.front();
}

FieldElement Embedding::apply(const FieldElement& x) const {
    src_->check_tag(x);
    // Horner in the chosen root
    FieldElement acc = dst_->zero();
    for (unsigned i = src_->deg(); i-- > 0;) {
        acc = dst_->mul(acc, root_);
        acc = dst_->add(acc, dst_->from_int(static_cast<unsigned long>(x.c[i])));
    }
    return acc;
}

// --- field spec + element parsing ---

namespace {

struct ElemParser {
    const Field& field;
    const std::string& text;
    std::size_t pos = 0;

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

    [[noreturn]] void fail(const std::string& what) {
        throw std::domain_error("element parse error at position " + std::to_string(pos) + ": " + what);
    }

    FieldElement parse_expr() {
        FieldElement acc = parse_term();
        while (true) {
            skip_ws();
            if (consume('+'))
                acc = field.add(acc, parse_term());
            else if (consume('-'))
                acc = field.sub(acc, parse_term());
            else
                return acc;
        }
    }

    FieldElement parse_term() {
        FieldElement acc = parse_factor();
        while (consume('*')) acc = field.mul(acc, parse_factor());
        return acc;
    }

    FieldElement parse_factor() {
        skip_ws();
        bool negate = false;
        while (consume('-')) negate = !negate;
        FieldElement base = parse_atom();
        if (consume('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) fail("expected exponent");
            Integer e(text.substr(start, pos - start));
            base = field.pow(base, e);
        }
        return negate ? field.neg(base) : base;
    }

    FieldElement parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (consume('(')) {
            FieldElement inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            return field.from_int(Integer(text.substr(start, pos - start)));
        }
        const std::string& g = field.generator_symbol();
        if (text.compare(pos, g.size(), g) == 0) {
            pos += g.size();
            if (field.deg() == 1) fail("generator symbol used in a prime field");
            return field.gen();
        }
        fail("unexpected character '" + std::string(1, text[pos]) + "'");
    }
};

// recursive-descent parser for a univariate polynomial in `var` over F_p,
// producing bare coefficients (no modulus reduction)
struct PrimePolyParser {
    std::uint64_t p;
    const std::string& var;
    const std::string& text;
    std::size_t pos = 0;

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

    [[noreturn]] void fail(const std::string& what) {
        throw std::domain_error("modulus parse error at position " + std::to_string(pos) + ": " + what);
    }

    PVec add(PVec a, const PVec& b, bool subtract) {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i] = subtract ? (a[i] + p - b[i]) % p : (a[i] + b[i]) % p;
        pv_trim(a);
        return a;
    }

    PVec mul(const PVec& a, const PVec& b) {
        if (a.empty() || b.empty()) return {};
        PVec r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        return r;
    }

    PVec parse_expr() {
        PVec acc = parse_term();
        while (true) {
            if (consume('+'))
                acc = add(std::move(acc), parse_term(), false);
            else if (consume('-'))
                acc = add(std::move(acc), parse_term(), true);
            else
                return acc;
        }
    }

    PVec parse_term() {
        PVec acc = parse_factor();
        while (consume('*')) acc = mul(acc, parse_factor());
        return acc;
    }

    PVec parse_factor() {
        skip_ws();
        bool negate = false;
        while (consume('-')) negate = !negate;
        PVec base = parse_atom();
        if (consume('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) fail("expected exponent");
            unsigned long e = std::stoul(text.substr(start, pos - start));
            if (e > 4096) fail("modulus exponent too large");
            PVec r{1};
            for (unsigned long i = 0; i < e; ++i) r = mul(r, base);
            base = std::move(r);
        }
        if (negate) {
            for (auto& c : base) c = c == 0 ? 0 : p - c;
        }
        return base;
    }

    PVec parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (consume('(')) {
            PVec inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            Integer n(text.substr(start, pos - start));
            n %= Integer(static_cast<unsigned long>(p));
            PVec r{n.get_ui()};
            pv_trim(r);
            return r;
        }
        if (text.compare(pos, var.size(), var) == 0) {
            pos += var.size();
            return PVec{0, 1};
        }
        fail("unexpected character '" + std::string(1, text[pos]) + "'");
    }
};

PVec parse_prime_poly(std::uint64_t p, const std::string& var, const std::string& text) {
    PrimePolyParser parser{p, var, text};
    PVec out = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return out;
}

}  // namespace

FieldElement parse_element(const Field& field, const std::string& text) {
    ElemParser p{field, text};
    FieldElement e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

FieldPtr parse_field_spec(const std::string& spec) {
    std::uint64_t p = 0;
    unsigned deg = 1;
    std::string mod_text, gen = "a";
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t end = spec.find(';', pos);
        if (end == std::string::npos) end = spec.size();
        std::string part = spec.substr(pos, end - pos);
        pos = end + 1;
        auto eq = part.find('=');
        if (eq == std::string::npos) throw std::domain_error("field spec entries must be key=value: " + part);
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "p")
            p = std::stoull(val);
        else if (key == "deg")
            deg = static_cast<unsigned>(std::stoul(val));
        else if (key == "mod")
            mod_text = val;
        else if (key == "gen")
            gen = val;
        else
            throw std::domain_error("unknown field spec key: " + key);
    }
    if (p == 0) throw std::domain_error("field spec requires p=<prime>");
    if (deg == 1 && mod_text.empty()) return Field::prime_field(p);
    if (mod_text.empty()) return Field::extension(p, deg, gen);
    PVec coeffs = parse_prime_poly(p, gen, mod_text);
    if (coeffs.size() != deg + 1)
        throw std::domain_error("field modulus degree does not match deg=" + std::to_string(deg));
    auto out = Field::with_modulus(p, coeffs, gen);
    return out;
}

}  // namespace sgf::gf
