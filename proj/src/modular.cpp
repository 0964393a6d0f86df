#include "septimal/modular.hpp"

#include <algorithm>
#include <limits>

#include "int_math.hpp"

namespace septimal {

namespace {

struct ModEqTerm {
    int l;
    int power;
    long c;
    int e7;
};

// a_l(t) = sum c * 7^e7 * t^power, transcribed term by term.
constexpr ModEqTerm kModularEquation[] = {
    {0, 1, 1, 0},
    {1, 2, 1, 2},     {1, 1, 4, 1},
    {2, 3, 1, 4},     {2, 2, 4, 3},   {2, 1, 46, 1},
    {3, 4, 1, 6},     {3, 3, 4, 5},   {3, 2, 46, 3},  {3, 1, 272, 1},
    {4, 5, 1, 8},     {4, 4, 4, 7},   {4, 3, 46, 5},  {4, 2, 272, 3}, {4, 1, 845, 1},
    {5, 6, 1, 10},    {5, 5, 4, 9},   {5, 4, 46, 7},  {5, 3, 272, 5}, {5, 2, 845, 3}, {5, 1, 176, 2},
    {6, 7, 1, 12},    {6, 6, 4, 11},  {6, 5, 46, 9},  {6, 4, 272, 7}, {6, 3, 845, 5}, {6, 2, 176, 4},
    {6, 1, 82, 2},
};

std::array<ALPolynomial, 7> build_modular_equation()
{
    std::array<ALPolynomial, 7> out;
    for (int l = 0; l < 7; ++l)
        out[static_cast<std::size_t>(l)].l = l;
    for (const auto &term : kModularEquation)
        out[static_cast<std::size_t>(term.l)].coeffs[term.power] += mpz_class(term.c) * pow7(static_cast<unsigned long>(term.e7));
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a)
        throw DomainError("precision budget overflows 64 bits");
    return a * b;
}

} // namespace

const std::array<ALPolynomial, 7> &modular_equation_coefficients()
{
    static const std::array<ALPolynomial, 7> table = build_modular_equation();
    return table;
}

Series ALPolynomial::evaluate(const Series &x) const
{
    // Powers of x up to the degree; x^0 is exact so it gets x's precision headroom.
    const std::int64_t headroom = x.prec() + std::max<std::int64_t>(0, degree()) * std::abs(x.offset()) + 1;
    Series result = Series::zero(x.ring(), headroom);
    Series power = Series::one(x.ring(), headroom);
    for (int p = 0; p <= degree(); ++p) {
        if (p > 0)
            power = mul(power, x);
        const auto it = coeffs.find(p);
        if (it != coeffs.end())
            result = add(result, mul_scalar(power, it->second));
    }
    return result;
}

IdentityReport compare_series(const Series &lhs, const Series &rhs, std::int64_t prec)
{
    if (lhs.prec() < prec)
        throw InsufficientPrecision(prec, lhs.prec(), "left-hand side");
    if (rhs.prec() < prec)
        throw InsufficientPrecision(prec, rhs.prec(), "right-hand side");
    IdentityReport r;
    r.checked_prec = prec;
    // Both sides reach prec, so two series storing nothing are both zero there.
    const Series l = lhs.truncated(prec);
    const Series r_ = rhs.truncated(prec);
    const auto mismatch = l.size() == 0 && r_.size() == 0 ? std::nullopt : first_mismatch(l, r_);
    r.pass = !mismatch.has_value();
    if (mismatch) {
        r.first_mismatch = mismatch;
        r.lhs_coeff = lhs.coeff(*mismatch);
        r.rhs_coeff = rhs.coeff(*mismatch);
    }
    return r;
}

Series u7(const Series &f) { return extract_progression(f, 7, 0); }

Series uA(const Series &f) { return u7(multiply(f, A_quotient())); }

Series uB(const Series &f) { return u7(f); }

std::int64_t uA_input_prec(std::int64_t N) { return 7 * N - 4; }

std::int64_t uB_input_prec(std::int64_t N) { return 7 * N - 6; }

Series uA(const Series &f, std::int64_t N)
{
    if (f.prec() < uA_input_prec(N))
        throw InsufficientPrecision(uA_input_prec(N), f.prec(), "U_A to precision " + std::to_string(N));
    return uA(f).truncated(N);
}

Series uB(const Series &f, std::int64_t N)
{
    if (f.prec() < uB_input_prec(N))
        throw InsufficientPrecision(uB_input_prec(N), f.prec(), "U_B to precision " + std::to_string(N));
    return uB(f).truncated(N);
}

std::int64_t l_sequence_base_prec(int count, std::int64_t N)
{
    std::int64_t need = N;
    for (int i = count; i >= 1; --i) {
        checked_mul(need, 7);
        need = (i % 2 == 1) ? uA_input_prec(need) : uB_input_prec(need);
    }
    return need;
}

std::vector<Series> l_sequence(int count, std::int64_t N, const CoeffRing &ring, std::int64_t budget)
{
    if (count < 1)
        throw DomainError("l_sequence needs count >= 1");
    const std::int64_t base = l_sequence_base_prec(count, N);
    if (base > budget)
        throw InsufficientPrecision(base, budget, "L-chain of length " + std::to_string(count));
    std::vector<Series> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    out.push_back(Series::one(ring, std::max<std::int64_t>(base, N)));
    for (int i = 1; i <= count; ++i)
        out.push_back((i % 2 == 1) ? uA(out.back()) : uB(out.back()));
    return out;
}

EtaQuotient l_prefactor(int index)
{
    if (index % 2 == 1)
        return EtaQuotient(0, {{7, 3}, {14, -2}});
    return EtaQuotient(0, {{1, 3}, {2, -2}});
}

LFormulaReport verify_l_formula(int index, std::int64_t N, const CoeffRing &ring)
{
    if (index < 1)
        throw DomainError("verify_l_formula needs index >= 1");
    const auto chain = l_sequence(index, N, ring);
    const LambdaIndex li = lambda_index(index);
    const std::int64_t step = pow7(static_cast<unsigned long>(index)).get_si();
    const std::int64_t lambda = li.lambda.get_si();
    const Series a = gen_a(step * (N - 1) + lambda + 1, ring);
    const Series rhs = multiply(extract_progression(a, step, lambda), l_prefactor(index));
    return LFormulaReport{index, li.lambda, compare_series(chain.back(), rhs, N)};
}

Series modular_equation_residual(std::int64_t N, const CoeffRing &ring)
{
    if (N < 1)
        throw DomainError("modular_equation_residual needs N >= 1");
    const Series t = hauptmodul_t(N + 1, ring);
    const Series t7 = substitute_qk(t, 7);
    Series rhs = Series::zero(ring, N + 7);
    Series t_power = Series::one(ring, N + 7);
    for (const auto &a : modular_equation_coefficients()) {
        if (a.l > 0)
            t_power = mul(t_power, t);
        rhs = add(rhs, mul(a.evaluate(t7), t_power));
    }
    return sub(mul(t_power, t), rhs).truncated(N);
}

int STable::seven_exponent(int j, int l) { return static_cast<int>(detail::floor_div(7 * l + j - 4, 4)); }

STable s_table()
{
    STable table;
    const auto &a = modular_equation_coefficients();
    for (int j = 0; j < 7; ++j) {
        for (int l = 1; l <= 7; ++l) {
            const auto it = a[static_cast<std::size_t>(j)].coeffs.find(l);
            const mpz_class c = it == a[static_cast<std::size_t>(j)].coeffs.end() ? mpz_class(0) : it->second;
            const mpz_class p = pow7(static_cast<unsigned long>(STable::seven_exponent(j, l)));
            if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()))
                throw NonExactDivision(l, "a_" + std::to_string(j) + " coefficient of t^" + std::to_string(l));
            mpz_divexact(table.values_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l - 1)].get_mpz_t(),
                         c.get_mpz_t(), p.get_mpz_t());
        }
    }
    return table;
}

std::int64_t fundamental_lemma_input_prec(std::int64_t j, std::int64_t N) { return 7 * N + 1 - j; }

std::vector<IdentityReport> fundamental_lemma_range(const Series &u, std::int64_t j_lo, std::int64_t j_hi,
                                                    std::int64_t N)
{
    if (j_hi < j_lo)
        return {};
    const std::int64_t need = fundamental_lemma_input_prec(j_lo, N);
    if (u.prec() < need)
        throw InsufficientPrecision(need, u.prec(), "fundamental lemma at j = " + std::to_string(j_lo));

    // U_7(u t^m) for m = j_lo - 7 .. j_hi, built by repeated multiplication by t.
    const std::int64_t m_lo = j_lo - 7;
    std::vector<Series> images;
    Series w = multiply(u, t_quotient().pow(m_lo));
    for (std::int64_t m = m_lo; m <= j_hi; ++m) {
        if (m > m_lo)
            w = multiply(w, t_quotient());
        images.push_back(u7(w));
    }
    std::int64_t lowest = 0;
    for (const auto &s : images)
        lowest = std::min(lowest, s.offset());

    const Series t = hauptmodul_t(N + 1 - lowest, u.ring());
    std::vector<Series> a_of_t;
    for (const auto &a : modular_equation_coefficients())
        a_of_t.push_back(a.evaluate(t));

    std::vector<IdentityReport> out;
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        const Series &lhs = images[static_cast<std::size_t>(j - m_lo)];
        Series rhs = Series::zero(u.ring(), N);
        for (int l = 0; l < 7; ++l)
            rhs = add(rhs, mul(a_of_t[static_cast<std::size_t>(l)], images[static_cast<std::size_t>(j + l - 7 - m_lo)]));
        out.push_back(compare_series(lhs, rhs, N));
    }
    return out;
}

IdentityReport fundamental_lemma_check(const Series &u, std::int64_t j, std::int64_t N)
{
    return fundamental_lemma_range(u, j, j, N).front();
}

LambdaIndex lambda_index(int alpha)
{
    if (alpha < 1)
        throw DomainError("lambda_index needs alpha >= 1");
    const mpz_class m = pow7(static_cast<unsigned long>(alpha));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), mpz_class(24).get_mpz_t(), m.get_mpz_t());
    mpz_class lambda = m - inv;
    mpz_fdiv_r(lambda.get_mpz_t(), lambda.get_mpz_t(), m.get_mpz_t());
    return LambdaIndex{alpha, lambda, (alpha + 1) / 2};
}

int default_congruence_exponent(int alpha) { return lambda_index(alpha).modexp + 3; }

std::int64_t congruence_required_prec(int alpha, std::int64_t n_max)
{
    const LambdaIndex li = lambda_index(alpha);
    const mpz_class need = li.progression_modulus() * n_max + li.lambda + 1;
    if (!need.fits_slong_p())
        throw DomainError("congruence family too large");
    return need.get_si();
}

CongruenceReport check_congruence_family(int alpha, std::int64_t n_max, const Series &a_series)
{
    const LambdaIndex li = lambda_index(alpha);
    const CoeffRing &ring = a_series.ring();
    if (!ring.is_exact() && ring.exponent() < li.modexp + 1)
        throw DomainError("ring " + ring.name() + " is too coarse for a congruence mod 7^" +
                          std::to_string(li.modexp) + "; need exponent >= " + std::to_string(li.modexp + 1));
    const std::int64_t need = congruence_required_prec(alpha, n_max);
    if (a_series.prec() < need)
        throw InsufficientPrecision(need, a_series.prec(), "congruence family alpha = " + std::to_string(alpha));

    CongruenceReport report;
    report.alpha = alpha;
    report.lambda = li.lambda;
    report.modexp = li.modexp;
    report.ring_exponent = ring.exponent();
    report.n_max = n_max;
    const mpz_class mod = pow7(static_cast<unsigned long>(li.modexp));
    const Series progression = extract_progression(a_series, li.progression_modulus().get_si(), li.lambda.get_si());
    for (std::int64_t n = 0; n <= n_max; ++n) {
        mpz_class r = progression.coeff(n);
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
        if (r != 0)
            report.failures.push_back(n);
        report.residues.push_back(std::move(r));
    }
    return report;
}

CongruenceReport check_congruence_family(int alpha, std::int64_t n_max, int e)
{
    const Series a = gen_a(congruence_required_prec(alpha, n_max), CoeffRing::mod_seven_power(e));
    return check_congruence_family(alpha, n_max, a);
}

std::vector<ClassicReport> check_classic_congruences(std::int64_t n_max)
{
    const Series p = gen_ar(1, 11 * n_max + 7, CoeffRing::integers());
    std::vector<ClassicReport> out;
    for (const auto &[mod, shift] : {std::pair{5, 4}, std::pair{7, 5}, std::pair{11, 6}}) {
        ClassicReport r{mod, shift, n_max, {}};
        for (std::int64_t n = 0; n <= n_max; ++n)
            if (mpz_divisible_ui_p(p.coeff(mod * n + shift).get_mpz_t(), static_cast<unsigned long>(mod)) == 0)
                r.failures.push_back(n);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace septimal
