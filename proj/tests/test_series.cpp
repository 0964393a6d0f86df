#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "septimal/eta_quotient.hpp"
#include "septimal/series.hpp"
#include "support.hpp"

using namespace septimal;
using testing::random_series;
using testing::random_unit_series;

namespace {

const CoeffRing ZZ = CoeffRing::integers();

Series S(std::int64_t offset, std::initializer_list<long> c, const CoeffRing &ring = ZZ)
{
    return Series::from_coeffs(ring, offset, c);
}

std::vector<CoeffRing> rings()
{
    return {CoeffRing::integers(), CoeffRing::mod_seven_power(1), CoeffRing::mod_seven_power(6),
            CoeffRing::mod_seven_power(22), CoeffRing::mod_seven_power(30)};
}

} // namespace

TEST_CASE("coefficient rings")
{
    CHECK(CoeffRing::integers().is_exact());
    CHECK(CoeffRing::mod_seven_power(3).modulus() == 343);
    CHECK(CoeffRing::mod_seven_power(22).word_sized());
    CHECK_FALSE(CoeffRing::mod_seven_power(23).word_sized());
    CHECK_THROWS_AS(CoeffRing::mod_seven_power(0), DomainError);
    CHECK(CoeffRing::mod_seven_power(2).reduce(-1) == 48);
    CHECK(CoeffRing::mod_seven_power(2).is_unit(3));
    CHECK_FALSE(CoeffRing::mod_seven_power(2).is_unit(14));
    CHECK(CoeffRing::integers().is_unit(-1));
    CHECK_FALSE(CoeffRing::integers().is_unit(2));
    CHECK(CoeffRing::mod_seven_power(4).name() == "ZZ/7^4");
}

TEST_CASE("add")
{
    CHECK(add(S(0, {1, 1}), S(0, {-1, 1})) == S(1, {2}));
    const Series f = S(0, {3, 1, 4, 1, 5});
    CHECK(add(f, Series::zero(ZZ, 5)) == f);

    const Series merged = add(Series::monomial(ZZ, 1, -2, 3), Series::monomial(ZZ, 1, 2, 3));
    CHECK(merged.offset() == -2);
    CHECK(merged.prec() == 3);
    CHECK(merged.coeff(-2) == 1);
    CHECK(merged.coeff(0) == 0);
    CHECK(merged.coeff(2) == 1);

    CHECK(add(S(0, {1, 2, 3}), S(0, {1})).prec() == 1);
    CHECK_THROWS_AS(add(S(0, {1}), S(0, {1}, CoeffRing::mod_seven_power(2))), RingMismatch);
}

TEST_CASE("mul")
{
    CHECK(mul(S(0, {1, 1, 0, 0}), S(0, {1, -1, 0, 0})) == S(0, {1, 0, -1, 0}));
    const Series prod = mul(Series::monomial(ZZ, 1, -2, 5), Series::monomial(ZZ, 1, 3, 8));
    CHECK(prod.offset() == 1);
    CHECK(prod.coeff(1) == 1);

    const Series geometric = S(0, {1, 1, 1, 1, 1, 1, 1, 1});
    const Series tele = mul(S(0, {1, -1, 0, 0, 0, 0, 0, 0}), geometric);
    CHECK(tele == Series::one(ZZ, 8));
    CHECK(tele.prec() == 8);

    // prec = min(a.prec + b.offset, b.prec + a.offset)
    const Series a = S(-1, {1, 2, 3}); // prec 2
    const Series b = S(3, {1, 1});     // prec 5
    CHECK(mul(a, b).prec() == std::min(2 + 3, 5 - 1));
    CHECK_THROWS_AS(mul(a, S(0, {1}, CoeffRing::mod_seven_power(1))), RingMismatch);
}

TEST_CASE("sparse mul agrees with the dense product")
{
    for (const auto &ring : rings()) {
        const Series dense = random_series(ring, -3, 40);
        const Series sparse = eta_series(3, 40, ring);
        const Series laurent = Series::from_coeffs(ring, -1, {1, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 3});
        for (const auto &s : {sparse, laurent}) {
            const Series p = mul(dense, s);
            for (std::int64_t n = p.offset(); n < p.prec(); ++n) {
                mpz_class acc = 0;
                for (std::int64_t i = dense.offset(); i < dense.prec(); ++i)
                    if (n - i >= s.offset() && n - i < s.prec())
                        acc += dense.coeff(i) * s.coeff(n - i);
                CHECK(p.coeff(n) == ring.reduce(acc));
            }
        }
    }
}

TEST_CASE("invert")
{
    const Series inv = invert(S(0, {1, -1, 0, 0, 0, 0}));
    CHECK(inv == S(0, {1, 1, 1, 1, 1, 1}));
    CHECK(inv.prec() == 6);

    const Series laurent = invert(S(1, {1, 1, 0, 0, 0, 0}));
    CHECK(laurent.offset() == -1);
    CHECK(laurent == S(-1, {1, -1, 1, -1, 1, -1}));

    const Series f = random_unit_series(ZZ, 2, 30);
    CHECK(invert(invert(f)) == f);

    CHECK_THROWS_AS(invert(S(0, {2, 1})), NonUnit);
    CHECK_THROWS_AS(invert(S(0, {7, 1}, CoeffRing::mod_seven_power(3))), NonUnit);
    CHECK_NOTHROW(invert(S(0, {2, 1}, CoeffRing::mod_seven_power(3))));
}

TEST_CASE("pow")
{
    CHECK(pow(S(0, {1, 1, 0, 0}), 2) == S(0, {1, 2, 1, 0}));
    const Series f = random_unit_series(ZZ, 1, 20);
    CHECK(pow(f, 0) == Series::one(ZZ, 20));
    CHECK(pow(f, -1) == invert(f));
    CHECK(pow(f, 5) == f * f * f * f * f);
    CHECK(pow(f, -3) == invert(f * f * f));
    CHECK_THROWS_AS(pow(S(0, {3, 1}), -1), NonUnit);
}

TEST_CASE("substitute_qk")
{
    const Series s = substitute_qk(S(0, {1, 1}), 7);
    CHECK(s.prec() == 14);
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(7) == 1);
    CHECK(s.nonzero_count() == 2);

    const Series f = random_series(ZZ, -2, 15);
    CHECK(substitute_qk(f, 1) == f);
    CHECK(substitute_qk(f, 1).prec() == f.prec());

    const Series inv = substitute_qk(Series::monomial(ZZ, 1, -1, 0), 7);
    CHECK(inv.offset() == -7);
    CHECK(inv.prec() == 0);
    CHECK_THROWS_AS(substitute_qk(f, 0), DomainError);
}

TEST_CASE("extract_progression")
{
    const Series geo = S(0, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
    const Series e = extract_progression(geo, 7, 0);
    CHECK(e.prec() == 3);
    CHECK(e == S(0, {1, 1, 1}));

    const Series one = extract_progression(Series::monomial(ZZ, 1, 2, 10), 7, 2);
    CHECK(one.coeff(0) == 1);
    CHECK(one.prec() == (10 - 2 - 1) / 7 + 1);

    const Series a = gen_a(7 * 300, ZZ);
    const Series prog = extract_progression(a, 7, 2);
    CHECK(prog.prec() == 300);
    for (std::int64_t n = 0; n < prog.prec(); ++n)
        CHECK(prog.coeff(n) % 7 == 0);

    // negative offsets: n ranges over all integers with m n + r >= offset
    const Series laurent = S(-9, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    const Series lp = extract_progression(laurent, 7, 0);
    CHECK(lp.offset() == -1);
    CHECK(lp.coeff(-1) == 3);
    CHECK(lp.coeff(0) == 10);
    CHECK(lp.prec() == 1);
}

TEST_CASE("divexact_scalar")
{
    CHECK(divexact_scalar(S(1, {7, 49}), 7) == S(1, {1, 7}));
    try {
        divexact_scalar(S(1, {1}), 7);
        FAIL("expected NonExactDivision");
    } catch (const NonExactDivision &e) {
        CHECK(e.exponent() == 1);
    }
    CHECK_THROWS_AS(divexact_scalar(S(0, {1}), 0), DomainError);

    // p_1 from its definition, checked against a brute-force product.
    const std::int64_t N = 60;
    const auto numer = testing::product_oracle({{14, 1}, {1, 7}, {7, -1}, {2, -7}}, N);
    std::vector<mpz_class> shifted = numer;
    shifted[0] -= 8;
    const Series p1 = divexact_scalar(Series::from_coeffs(ZZ, 0, shifted), 7);
    CHECK(p1 == p1_series(N, ZZ));
    for (std::int64_t n = 0; n < N; ++n)
        CHECK(shifted[static_cast<std::size_t>(n)] % 7 == 0);

    // In Z/7^e division by 7^k lands in Z/7^(e-k).
    const Series m = divexact_scalar(S(0, {49, 98, 0, 147}, CoeffRing::mod_seven_power(5)), 49);
    CHECK(m.ring() == CoeffRing::mod_seven_power(3));
    CHECK(m == S(0, {1, 2, 0, 3}, CoeffRing::mod_seven_power(3)));
    CHECK(divexact_scalar(S(0, {7}, CoeffRing::mod_seven_power(2)), 2).coeff(0) == 28); // 7 * 2^-1 mod 49
    CHECK_THROWS_AS(divexact_scalar(S(0, {49}, CoeffRing::mod_seven_power(2)), 49), DomainError);
}

TEST_CASE("val7")
{
    CHECK(val7(mpz_class(98)) == 2);
    CHECK(val7(mpz_class(0)) == kInfiniteValuation);
    CHECK(val7(mpz_class(3)) == 0);
    CHECK(val7(mpz_class(-343)) == 3);
    CHECK(val7(mpz_class(98), CoeffRing::mod_seven_power(4)) == 2);
    CHECK_THROWS_AS(val7(mpz_class(0), CoeffRing::mod_seven_power(4)), IndeterminateValuation);
    CHECK_THROWS_AS(val7(mpz_class(2401), CoeffRing::mod_seven_power(4)), IndeterminateValuation);
    CHECK(val7(mpz_class(0), CoeffRing::integers()) == kInfiniteValuation);
}

TEST_CASE("comparison and precision")
{
    CHECK_THROWS_AS(first_mismatch(S(5, {1}), Series::zero(ZZ, 5)), EmptyOverlap);
    CHECK(first_mismatch(S(5, {1}), S(7, {1})) == 5);
    CHECK(first_mismatch(S(0, {1, 2, 3}), S(0, {1, 2, 4})) == 2);
    CHECK(first_mismatch(S(0, {1, 2, 3}), S(0, {1, 2})) == std::nullopt);
    CHECK_THROWS_AS(S(0, {1, 2}).coeff(2), InsufficientPrecision);
    CHECK(S(0, {1, 2}).coeff(-4) == 0);
    CHECK_THROWS_AS(S(0, {1, 2}).truncated(5), InsufficientPrecision);

    // interior zeros are known zeros and are kept
    const Series z = S(0, {0, 0, 1, 0, 0});
    CHECK(z.offset() == 2);
    CHECK(z.prec() == 5);
    CHECK(Series::zero(ZZ, 4).is_zero());
    CHECK(Series::zero(ZZ, 4).prec() == 4);
}

TEST_CASE("ring laws on random series")
{
    for (const auto &ring : rings()) {
        for (int trial = 0; trial < 10; ++trial) {
            const Series a = random_series(ring, testing::uniform(-3, 3), 25);
            const Series b = random_series(ring, testing::uniform(-3, 3), 25);
            const Series c = random_series(ring, testing::uniform(-3, 3), 25);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("invert is a two-sided inverse; divexact undoes mul_scalar")
{
    for (const auto &ring : rings()) {
        for (int trial = 0; trial < 10; ++trial) {
            const Series f = random_unit_series(ring, testing::uniform(-4, 4), 30);
            const Series one = Series::one(ring, 30);
            CHECK(f * invert(f) == one);
            CHECK(invert(f) * f == one);
            CHECK(divide(f, f) == one);
        }
    }
    for (int trial = 0; trial < 10; ++trial) {
        const Series f = random_series(ZZ, testing::uniform(-4, 4), 30, 1000);
        const mpz_class d = testing::uniform(2, 10000) * (trial % 2 == 0 ? 1 : -1);
        CHECK(divexact_scalar(mul_scalar(f, d), d) == f);
    }
}

TEST_CASE("extract_progression is linear")
{
    for (const auto &ring : rings()) {
        for (int trial = 0; trial < 10; ++trial) {
            const Series a = random_series(ring, testing::uniform(-10, 10), 80);
            const Series b = random_series(ring, testing::uniform(-10, 10), 80);
            const std::int64_t m = testing::uniform(1, 9);
            const std::int64_t r = testing::uniform(-5, 12);
            CHECK(extract_progression(a + b, m, r) == extract_progression(a, m, r) + extract_progression(b, m, r));
        }
    }
}

TEST_CASE("U_7 product rule")
{
    for (int trial = 0; trial < 20; ++trial) {
        const Series f = random_series(ZZ, testing::uniform(-10, 10), 400);
        const Series h = random_series(ZZ, testing::uniform(0, 5), 50);
        const Series lhs = extract_progression(mul(f, substitute_qk(h, 7)), 7, 0);
        const Series rhs = mul(h, extract_progression(f, 7, 0));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exact computations reduce to modular ones")
{
    for (const int e : {1, 4, 22, 23, 40}) {
        const CoeffRing R = CoeffRing::mod_seven_power(e);
        for (int trial = 0; trial < 5; ++trial) {
            const Series a = random_unit_series(ZZ, testing::uniform(-3, 3), 40);
            const Series b = random_series(ZZ, testing::uniform(-3, 3), 40, 100000);
            CHECK((a * b).reduced(R) == a.reduced(R) * b.reduced(R));
            CHECK(invert(a).reduced(R) == invert(a.reduced(R)));
            CHECK(pow(a, 7).reduced(R) == pow(a.reduced(R), 7));
            CHECK(divide(b, a).reduced(R) == divide(b.reduced(R), a.reduced(R)));
            CHECK((a - b).reduced(R) == a.reduced(R) - b.reduced(R));
        }
        CHECK(gen_a(500, ZZ).reduced(R) == gen_a(500, R));
    }
    CHECK(Series::from_coeffs(CoeffRing::mod_seven_power(5), 0, {100000}).reduced(CoeffRing::mod_seven_power(2)) ==
          Series::from_coeffs(CoeffRing::mod_seven_power(2), 0, {100000 % 49}));
    CHECK_THROWS_AS(S(0, {1}, CoeffRing::mod_seven_power(2)).reduced(CoeffRing::mod_seven_power(3)), DomainError);
}
