#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "septimal/eta_quotient.hpp"
#include "septimal/series.hpp"

namespace septimal {

/// One coefficient polynomial a_l(t) of the level-7 modular equation
///     t(q)^7 = sum_{l=0}^{6} a_l(t(q^7)) t(q)^l.
struct ALPolynomial {
    int l = 0;
    /// power of t -> integer coefficient
    std::map<int, mpz_class> coeffs;

    int degree() const { return coeffs.empty() ? -1 : coeffs.rbegin()->first; }
    /// a_l(x) for a series x.
    Series evaluate(const Series &x) const;
};

/// a_0 .. a_6.
const std::array<ALPolynomial, 7> &modular_equation_coefficients();

/// Outcome of comparing two sides of an identity on a common precision.
struct IdentityReport {
    bool pass = false;
    std::int64_t checked_prec = 0;
    std::optional<std::int64_t> first_mismatch;
    mpz_class lhs_coeff;
    mpz_class rhs_coeff;
};

/// Compares lhs and rhs on q^n, n < prec (both must reach prec).
IdentityReport compare_series(const Series &lhs, const Series &rhs, std::int64_t prec);

// U operators ----------------------------------------------------------------

/// sum a(7n) q^n.
Series u7(const Series &f);
/// U_7(A f).
Series uA(const Series &f);
/// U_7(f).
Series uB(const Series &f);
/// Same, truncated to precision N; InsufficientPrecision if f is too short.
Series uA(const Series &f, std::int64_t N);
Series uB(const Series &f, std::int64_t N);

/// Input precision needed for uA / uB to produce precision N.
std::int64_t uA_input_prec(std::int64_t N);
std::int64_t uB_input_prec(std::int64_t N);

// L-chain ----------------------------------------------------------------------

inline constexpr std::int64_t kDefaultPrecisionBudget = 60'000'000;

/// L_0 = 1, L_{2a+1} = U_A(L_{2a}), L_{2a+2} = U_B(L_{2a+1}); returns
/// L_0 .. L_count, each truncated to precision N. The base precision is
/// computed from the operator chain first and must stay within `budget`.
std::vector<Series> l_sequence(int count, std::int64_t N, const CoeffRing &ring,
                               std::int64_t budget = kDefaultPrecisionBudget);

/// Precision of L_0 required to produce L_count at precision N.
std::int64_t l_sequence_base_prec(int count, std::int64_t N);

/// Prefactor in the closed form of L_index: J_7^3/J_14^2 for odd index,
/// J_1^3/J_2^2 for even index.
EtaQuotient l_prefactor(int index);

struct LFormulaReport {
    int index = 0;
    mpz_class lambda;
    IdentityReport identity;
};

/// Checks L_index = prefactor * sum_n a(7^index n + lambda_index) q^n to precision N.
LFormulaReport verify_l_formula(int index, std::int64_t N, const CoeffRing &ring = CoeffRing::integers());

// Modular equation ---------------------------------------------------------

/// t^7 - sum_l a_l(t(q^7)) t^l to precision N.
Series modular_equation_residual(std::int64_t N, const CoeffRing &ring = CoeffRing::integers());

/// s(j, l) with a_j(t) = sum_{l=1}^{7} s(j,l) 7^{floor((7l+j-4)/4)} t^l.
class STable
{
  public:
    const mpz_class &at(int j, int l) const { return values_.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(l - 1)); }
    static int seven_exponent(int j, int l);

  private:
    friend STable s_table();
    std::array<std::array<mpz_class, 7>, 7> values_;
};

/// NonExactDivision if a transcribed a_j coefficient is not divisible by its 7-power.
STable s_table();

/// U_7(u t^j) = sum_l a_l(t) U_7(u t^{j+l-7}) to precision N.
IdentityReport fundamental_lemma_check(const Series &u, std::int64_t j, std::int64_t N);
/// Same for every j in [j_lo, j_hi], sharing the powers u t^m.
std::vector<IdentityReport> fundamental_lemma_range(const Series &u, std::int64_t j_lo, std::int64_t j_hi,
                                                    std::int64_t N);
/// Precision u must have for fundamental_lemma_check(u, j, N).
std::int64_t fundamental_lemma_input_prec(std::int64_t j, std::int64_t N);

// Congruences ---------------------------------------------------------------

struct LambdaIndex {
    int alpha = 0;
    mpz_class lambda;
    int modexp = 0;

    mpz_class progression_modulus() const { return pow7(static_cast<unsigned long>(alpha)); }
};

/// Unique 0 <= lambda < 7^alpha with 24 lambda = -1 (mod 7^alpha).
LambdaIndex lambda_index(int alpha);

struct CongruenceReport {
    int alpha = 0;
    mpz_class lambda;
    int modexp = 0;
    int ring_exponent = 0;
    std::int64_t n_max = 0;
    /// a(7^alpha n + lambda) mod 7^modexp for n = 0..n_max.
    std::vector<mpz_class> residues;
    std::vector<std::int64_t> failures;

    bool pass() const { return failures.empty(); }
};

/// Default ring exponent for a family: modexp + 3.
int default_congruence_exponent(int alpha);

/// Checks a(7^alpha n + lambda_alpha) = 0 mod 7^modexp for n <= n_max in Z/7^e.
CongruenceReport check_congruence_family(int alpha, std::int64_t n_max, int e);
/// Same, reading coefficients from a precomputed gen_a series (any ring
/// Z/7^e with e > modexp, or the integers).
CongruenceReport check_congruence_family(int alpha, std::int64_t n_max, const Series &a_series);
/// Precision of gen_a needed for the family.
std::int64_t congruence_required_prec(int alpha, std::int64_t n_max);

struct ClassicReport {
    int modulus = 0;
    int shift = 0;
    std::int64_t n_max = 0;
    std::vector<std::int64_t> failures;

    bool pass() const { return failures.empty(); }
};

/// p(5n+4) = 0 mod 5, p(7n+5) = 0 mod 7, p(11n+6) = 0 mod 11 for n <= n_max.
std::vector<ClassicReport> check_classic_congruences(std::int64_t n_max);

} // namespace septimal
