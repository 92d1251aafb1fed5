#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgf/gf.hpp"

#include <random>

using namespace sgf::gf;
using sgf::arith::Integer;

namespace {

FieldElement random_element(const Field& f, std::mt19937_64& rng) {
    std::vector<std::uint64_t> c(f.deg());
    for (auto& x : c) x = rng() % f.p();
    return f.from_coeffs(std::move(c));
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    auto f7 = Field::prime_field(7);
    CHECK(f7->eq(f7->inv(f7->from_int(3)), f7->from_int(5)));
    CHECK(f7->eq(f7->mul(f7->from_int(3), f7->from_int(5)), f7->one()));
    CHECK_THROWS_AS(f7->inv(f7->zero()), std::domain_error);
    // Fermat: frobenius is the identity on the prime field
    for (int i = 1; i < 7; ++i) CHECK(f7->eq(f7->frobenius(f7->from_int(i)), f7->from_int(i)));
}

TEST_CASE("extension arithmetic and modulus reduction") {
    // F_5[a]/(a^3 + a + 1): a * a^2 = a^3 = -a - 1 = 4a + 4
    auto f = Field::with_modulus(5, {1, 1, 0, 1});
    FieldElement a = f->gen();
    FieldElement a2 = f->mul(a, a);
    FieldElement a3 = f->mul(a, a2);
    CHECK(f->eq(a3, f->from_coeffs({4, 4, 0})));
    CHECK(f->eq(f->pow(a, Integer(0)), f->one()));
    // mismatched fields are rejected
    auto f7 = Field::prime_field(7);
    CHECK_THROWS_AS(f->add(a, f7->one()), std::domain_error);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(2024);
    for (auto field : {Field::prime_field(13), Field::extension(3, 3), Field::extension(2, 4)}) {
        for (int trial = 0; trial < 60; ++trial) {
            FieldElement x = random_element(*field, rng);
            FieldElement y = random_element(*field, rng);
            FieldElement z = random_element(*field, rng);
            CHECK(field->eq(field->mul(x, field->mul(y, z)), field->mul(field->mul(x, y), z)));
            CHECK(field->eq(field->mul(x, field->add(y, z)),
                            field->add(field->mul(x, y), field->mul(x, z))));
            CHECK(field->eq(field->add(x, field->neg(x)), field->zero()));
            if (!field->is_zero(x)) CHECK(field->eq(field->mul(x, field->inv(x)), field->one()));
        }
    }
}

TEST_CASE("frobenius and p-th roots") {
    std::mt19937_64 rng(5);
    // F_4 = F_2[a]/(a^2+a+1): frobenius(a) = a^2 = a + 1
    auto f4 = Field::with_modulus(2, {1, 1, 1});
    CHECK(f4->eq(f4->frobenius(f4->gen()), f4->add(f4->gen(), f4->one())));

    for (auto field : {Field::extension(5, 3), Field::extension(2, 4), Field::extension(7, 2)}) {
        // frobenius is additive, multiplicative, and inverted by pth_root
        for (int trial = 0; trial < 100; ++trial) {
            FieldElement x = random_element(*field, rng);
            FieldElement y = random_element(*field, rng);
            CHECK(field->eq(field->pth_root(field->frobenius(x)), x));
            CHECK(field->eq(field->frobenius(field->pth_root(x)), x));
            CHECK(field->eq(field->frobenius(field->mul(x, y)),
                            field->mul(field->frobenius(x), field->frobenius(y))));
            CHECK(field->eq(field->frobenius(field->add(x, y)),
                            field->add(field->frobenius(x), field->frobenius(y))));
        }
        // the automorphism order divides the extension degree
        FieldElement g = field->gen();
        FieldElement it = g;
        for (unsigned i = 0; i < field->deg(); ++i) it = field->frobenius(it);
        CHECK(field->eq(it, g));
    }
}

TEST_CASE("find_irreducible is deterministic and canonical") {
    CHECK(find_irreducible(2, 1) == std::vector<std::uint64_t>{0, 1});
    CHECK(find_irreducible(2, 2) == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(find_irreducible(2, 2) == find_irreducible(2, 2));
    // a^3 + a + 1 is irreducible over F_5 (no roots)
    CHECK(is_irreducible_mod_p(5, {1, 1, 0, 1}));
    CHECK_FALSE(is_irreducible_mod_p(5, {0, 0, 1}));  // t^2
    for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{3, 4}, {5, 2}, {7, 3}, {2, 8}}) {
        auto m = find_irreducible(p, k);
        CHECK(m.size() == k + 1);
        CHECK(m.back() == 1);
        CHECK(is_irreducible_mod_p(p, m));
    }
}

TEST_CASE("embedding is a ring homomorphism fixing the prime field") {
    std::mt19937_64 rng(11);
    auto f4 = Field::with_modulus(2, {1, 1, 1});
    auto f16 = Field::extension(2, 4);
    Embedding emb(f4, f16);
    // the image of the generator is a root of a^2+a+1 in F_16
    FieldElement r = emb.apply(f4->gen());
    CHECK(f16->eq(f16->add(f16->mul(r, r), f16->add(r, f16->one())), f16->zero()));
    for (int trial = 0; trial < 100; ++trial) {
        FieldElement x = random_element(*f4, rng);
        FieldElement y = random_element(*f4, rng);
        CHECK(f16->eq(emb.apply(f4->mul(x, y)), f16->mul(emb.apply(x), emb.apply(y))));
        CHECK(f16->eq(emb.apply(f4->add(x, y)), f16->add(emb.apply(x), emb.apply(y))));
    }
    CHECK(f16->eq(emb.apply(f4->one()), f16->one()));
    // prime-field constants embed as the same residue
    auto f5 = Field::prime_field(5);
    auto f25 = Field::extension(5, 2);
    Embedding c(f5, f25);
    CHECK(f25->eq(c.apply(f5->from_int(3)), f25->from_int(3)));
    // injectivity on a small field
    CHECK_FALSE(f16->eq(emb.apply(f4->gen()), emb.apply(f4->one())));
    // non-divisible degrees are rejected
    CHECK_THROWS_AS(Embedding(Field::extension(2, 3), f16), std::domain_error);
}

TEST_CASE("field spec parsing") {
    auto f5 = parse_field_spec("p=5");
    CHECK(f5->p() == 5);
    CHECK(f5->deg() == 1);
    auto f125 = parse_field_spec("p=5;deg=3;mod=a^3+a+1");
    CHECK(f125->deg() == 3);
    CHECK(f125->modulus() == std::vector<std::uint64_t>{1, 1, 0, 1});
    auto fdet = parse_field_spec("p=5;deg=2");
    CHECK(fdet->modulus() == find_irreducible(5, 2));
    CHECK_THROWS_AS(parse_field_spec("p=6"), std::domain_error);
    CHECK_THROWS_AS(parse_field_spec("p=5;deg=3;mod=a^2+1"), std::domain_error);
    CHECK_THROWS_AS(parse_field_spec("p=5;deg=2;mod=a^2+1"), std::domain_error);  // reducible
    // element parsing round trip
    auto e = parse_element(*f125, "4*a^2+a+3");
    CHECK(f125->to_string(e) == "4*a^2+a+3");
}
