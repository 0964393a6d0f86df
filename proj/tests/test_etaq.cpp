#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "septimal/eta_quotient.hpp"
#include "septimal/partitions.hpp"
#include "support.hpp"

using namespace septimal;
namespace P = septimal::partitions;

namespace {

const CoeffRing ZZ = CoeffRing::integers();

void check_against_oracle(const EtaQuotient &eq, std::int64_t N, const CoeffRing &ring = ZZ)
{
    const auto oracle = testing::product_oracle(eq.factors(), N - eq.qexp());
    const Series s = expand(eq, N, ring);
    REQUIRE(s.prec() == N);
    for (std::int64_t n = eq.qexp(); n < N; ++n)
        CHECK(s.coeff(n) == ring.reduce(oracle[static_cast<std::size_t>(n - eq.qexp())]));
}

} // namespace

TEST_CASE("eta_series")
{
    const Series j1 = eta_series(1, 8, ZZ);
    CHECK(j1 == Series::from_coeffs(ZZ, 0, {1, -1, -1, 0, 0, 1, 0, 1}));
    CHECK(j1.prec() == 8);
    const Series j7 = eta_series(7, 8, ZZ);
    CHECK(j7 == Series::from_coeffs(ZZ, 0, {1, 0, 0, 0, 0, 0, 0, -1}));
    for (const std::int64_t N : {0, -3}) {
        const Series empty = eta_series(1, N, ZZ);
        CHECK(empty.size() == 0);
        CHECK(empty.prec() == N);
    }
    for (const std::int64_t k : {1, 2, 3, 7, 14, 49, 98})
        check_against_oracle(EtaQuotient::J(k), 500);
}

TEST_CASE("EtaQuotient algebra")
{
    const EtaQuotient t = t_quotient();
    CHECK(t.qexp() == 1);
    CHECK(t.exponent_of(7) == 4);
    CHECK(t.exponent_of(1) == -4);
    CHECK(t.exponent_of(2) == 0);
    CHECK((t * t.inverse()) == EtaQuotient{});
    CHECK(t.pow(3) == t * t * t);
    CHECK(t.substitute_qk(7) == EtaQuotient(7, {{49, 4}, {7, -4}}));
    CHECK(EtaQuotient(0, {{3, 0}}).factors().empty());
    CHECK_THROWS_AS(EtaQuotient(0, {{0, 1}}), DomainError);
    CHECK_THROWS_AS(t.substitute_qk(0), DomainError);
}

TEST_CASE("expand")
{
    CHECK(expand(EtaQuotient::J(1, -1), 6, ZZ) == Series::from_coeffs(ZZ, 0, {1, 1, 2, 3, 5, 7}));
    for (int n = 0; n <= 5; ++n)
        CHECK(expand(EtaQuotient::J(1, -1), 6, ZZ).coeff(n) == P::enumerate_partitions(n).size());

    const Series t = expand(EtaQuotient(1, {{7, 4}, {1, -4}}), 3, ZZ);
    CHECK(t.offset() == 1);
    CHECK(t.coeff(1) == 1);
    CHECK(t.coeff(2) == 4);
    CHECK(t.prec() == 3);

    CHECK(expand(EtaQuotient::J(1), 50, ZZ) == eta_series(1, 50, ZZ));
    CHECK_THROWS_AS(expand(t_quotient(), 1, ZZ), InsufficientPrecision);

    for (const auto &eq : {t_quotient(), p0_quotient(), p1_numerator_quotient(), A_quotient(), t_quotient().pow(-3)})
        check_against_oracle(eq, 300);
    for (int trial = 0; trial < 20; ++trial) {
        const EtaQuotient eq = testing::random_eta_quotient(20, 4, -3, 3);
        check_against_oracle(eq, 150);
        check_against_oracle(eq, 150, CoeffRing::mod_seven_power(3));
    }
}

TEST_CASE("multiply keeps relative precision")
{
    for (int trial = 0; trial < 20; ++trial) {
        const EtaQuotient eq = testing::random_eta_quotient(15, 3, -2, 2);
        const Series f = testing::random_series(ZZ, testing::uniform(-3, 3), 120);
        const Series direct = mul(f, expand(eq, eq.qexp() + 120, ZZ));
        const Series sparse = multiply(f, eq);
        CHECK(sparse.prec() == f.prec() + eq.qexp());
        CHECK(sparse == direct);
    }
}

TEST_CASE("generating functions")
{
    const Series a = gen_a(60, ZZ);
    CHECK(a.coeff(0) == 1);
    CHECK(a.coeff(1) == 3);
    CHECK(a == gen_ar(3, 60, ZZ));
    CHECK_THROWS_AS(gen_a(0, ZZ), InsufficientPrecision);

    const auto p = P::count_colored_table(60, 1);
    const Series a1 = gen_ar(1, 61, ZZ);
    for (int n = 0; n <= 60; ++n)
        CHECK(a1.coeff(n) == p[static_cast<std::size_t>(n)]);
    CHECK(gen_ar(2, 5, ZZ).coeff(1) == 2);
    CHECK_THROWS_AS(gen_ar(0, 5, ZZ), DomainError);

    for (int r = 1; r <= 4; ++r) {
        const auto dp = P::count_colored_table(40, r);
        const Series s = gen_ar(r, 41, ZZ);
        for (int n = 0; n <= 40; ++n)
            CHECK(s.coeff(n) == dp[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("gen_M matches crank counts")
{
    const Series M = gen_M(26, ZZ);
    CHECK(M.coeff(0) == 1);
    CHECK(M.coeff(1) == -1);
    for (int n = 2; n <= 25; ++n)
        CHECK(M.coeff(n) == P::M_counts(n).difference());
    CHECK_THROWS_AS(gen_M(1, ZZ), InsufficientPrecision);
}

TEST_CASE("(-q;q) equals J_2/J_1")
{
    const std::int64_t N = 200;
    std::vector<mpz_class> prod(N, 0);
    prod[0] = 1;
    for (std::int64_t k = 1; k < N; ++k)
        for (std::int64_t i = N - 1; i >= k; --i)
            prod[static_cast<std::size_t>(i)] += prod[static_cast<std::size_t>(i - k)];
    const Series direct = Series::from_coeffs(ZZ, 0, prod);
    CHECK(direct == expand(EtaQuotient(0, {{2, 1}, {1, -1}}), N, ZZ));
}

TEST_CASE("auxiliary functions")
{
    const Series t = hauptmodul_t(40, ZZ);
    CHECK(t.offset() == 1);
    CHECK(t.coeff(1) == 1);
    CHECK(t.coeff(2) == 4);
    CHECK(substitute_qk(t, 7).offset() == 7);

    const Series p0 = p0_series(40, ZZ);
    CHECK(p0.offset() == 1);
    CHECK(p0.coeff(1) == 1);
    CHECK_THROWS_AS(p0_series(1, ZZ), InsufficientPrecision);

    const Series p1 = p1_series(40, ZZ);
    CHECK(p1.coeff(0) == -1);
    CHECK(p1.coeff(1) == -1);
    CHECK(mul_scalar(p1, 7) + Series::from_coeffs(ZZ, 0, {8}) == expand(p1_numerator_quotient(), 1, ZZ));
    CHECK(mul_scalar(p1, 7) + mul_scalar(Series::one(ZZ, 40), 8) == expand(p1_numerator_quotient(), 40, ZZ));
    CHECK_THROWS_AS(p1_series(0, ZZ), InsufficientPrecision);

    const Series A = A_series(40, ZZ);
    CHECK(A.offset() == -2);
    CHECK(A.shifted(2).coeff(0) == 1);
    CHECK_THROWS_AS(A_series(-2, ZZ), InsufficientPrecision);

    for (const int e : {1, 3, 23}) {
        const CoeffRing R = CoeffRing::mod_seven_power(e);
        CHECK(p1_series(200, R) == p1_series(200, ZZ).reduced(R));
        CHECK(p1_times(t_quotient().pow(-2), 200, R) == p1_times(t_quotient().pow(-2), 200, ZZ).reduced(R));
    }
}

TEST_CASE("gen_a in Z/7^6 agrees with the integers")
{
    const CoeffRing R = CoeffRing::mod_seven_power(6);
    CHECK(gen_a(3000, R) == gen_a(3000, ZZ).reduced(R));
    CHECK(gen_a(3000, CoeffRing::mod_seven_power(30)) == gen_a(3000, ZZ).reduced(CoeffRing::mod_seven_power(30)));
}
