#include "septimal/eta_quotient.hpp"

#include <sstream>

namespace septimal {

EtaQuotient::EtaQuotient(std::int64_t qexp, std::map<std::int64_t, std::int64_t> factors) : qexp_(qexp)
{
    for (const auto &[k, e] : factors) {
        if (k < 1)
            throw DomainError("eta factor scale must be positive, got " + std::to_string(k));
        if (e != 0)
            factors_.emplace(k, e);
    }
}

std::int64_t EtaQuotient::exponent_of(std::int64_t k) const
{
    const auto it = factors_.find(k);
    return it == factors_.end() ? 0 : it->second;
}

EtaQuotient EtaQuotient::pow(std::int64_t n) const
{
    std::map<std::int64_t, std::int64_t> f;
    for (const auto &[k, e] : factors_)
        f.emplace(k, e * n);
    return EtaQuotient(qexp_ * n, std::move(f));
}

EtaQuotient EtaQuotient::substitute_qk(std::int64_t k) const
{
    if (k < 1)
        throw DomainError("substitute_qk needs k >= 1");
    std::map<std::int64_t, std::int64_t> f;
    for (const auto &[s, e] : factors_)
        f.emplace(s * k, e);
    return EtaQuotient(qexp_ * k, std::move(f));
}

EtaQuotient operator*(const EtaQuotient &a, const EtaQuotient &b)
{
    auto f = a.factors_;
    for (const auto &[k, e] : b.factors_)
        f[k] += e;
    return EtaQuotient(a.qexp_ + b.qexp_, std::move(f));
}

std::string EtaQuotient::to_string() const
{
    std::ostringstream os;
    os << "q^" << qexp_;
    for (const auto &[k, e] : factors_)
        os << " J" << k << "^" << e;
    return os.str();
}

Series eta_series(std::int64_t k, std::int64_t N, const CoeffRing &ring)
{
    if (k < 1)
        throw DomainError("eta_series needs k >= 1");
    if (N <= 0)
        return Series::zero(ring, N);
    // prod (1 - q^{kn}) = sum_j (-1)^j q^{k j(3j-1)/2}, j over all integers.
    std::vector<mpz_class> c(static_cast<std::size_t>(N));
    c[0] = 1;
    for (std::int64_t j = 1;; ++j) {
        const std::int64_t e1 = k * (j * (3 * j - 1) / 2);
        const std::int64_t e2 = k * (j * (3 * j + 1) / 2);
        if (e1 >= N)
            break;
        const int sign = (j % 2) ? -1 : 1;
        c[static_cast<std::size_t>(e1)] = sign;
        if (e2 < N)
            c[static_cast<std::size_t>(e2)] = sign;
    }
    return Series::from_coeffs(ring, 0, std::move(c));
}

Series multiply(const Series &f, const EtaQuotient &eq)
{
    const auto len = static_cast<std::int64_t>(f.size());
    Series r = f;
    // Divisions first keeps intermediate coefficients small for the usual
    // quotients whose denominators dominate.
    for (const auto &[k, e] : eq.factors())
        if (e < 0) {
            const Series eta = eta_series(k, len, f.ring());
            for (std::int64_t i = 0; i < -e; ++i)
                r = divide(r, eta);
        }
    for (const auto &[k, e] : eq.factors())
        if (e > 0) {
            const Series eta = eta_series(k, len, f.ring());
            for (std::int64_t i = 0; i < e; ++i)
                r = mul(r, eta);
        }
    return r.shifted(eq.qexp());
}

Series expand(const EtaQuotient &eq, std::int64_t N, const CoeffRing &ring)
{
    if (N <= eq.qexp())
        throw InsufficientPrecision(eq.qexp() + 1, N, "expand " + eq.to_string());
    return multiply(Series::one(ring, N - eq.qexp()), eq);
}

EtaQuotient t_quotient() { return EtaQuotient(1, {{7, 4}, {1, -4}}); }
EtaQuotient p0_quotient() { return EtaQuotient(1, {{14, 4}, {1, 4}, {7, -4}, {2, -4}}); }
EtaQuotient p1_numerator_quotient() { return EtaQuotient(0, {{14, 1}, {1, 7}, {7, -1}, {2, -7}}); }
EtaQuotient A_quotient() { return EtaQuotient(-2, {{2, 2}, {49, 3}, {1, -3}, {98, -2}}); }

namespace {

void require_prec(std::int64_t N, std::int64_t min, const char *what)
{
    if (N < min)
        throw InsufficientPrecision(min, N, what);
}

} // namespace

Series gen_a(std::int64_t N, const CoeffRing &ring)
{
    require_prec(N, 1, "gen_a");
    return gen_ar(3, N, ring);
}

Series gen_ar(std::int64_t r, std::int64_t N, const CoeffRing &ring)
{
    if (r < 1)
        throw DomainError("gen_ar needs r >= 1");
    require_prec(N, 1, "gen_ar");
    return expand(EtaQuotient(0, {{2, r - 1}, {1, -r}}), N, ring);
}

Series gen_M(std::int64_t N, const CoeffRing &ring)
{
    require_prec(N, 2, "gen_M");
    return add(expand(EtaQuotient(0, {{1, 3}, {2, -2}}), N, ring), Series::monomial(ring, 2, 1, N));
}

Series hauptmodul_t(std::int64_t N, const CoeffRing &ring) { return expand(t_quotient(), N, ring); }

Series p0_series(std::int64_t N, const CoeffRing &ring)
{
    require_prec(N, 2, "p0_series");
    return expand(p0_quotient(), N, ring);
}

Series p1_series(std::int64_t N, const CoeffRing &ring)
{
    require_prec(N, 1, "p1_series");
    return p1_times(EtaQuotient{}, N, ring);
}

Series A_series(std::int64_t N, const CoeffRing &ring)
{
    require_prec(N, -1, "A_series");
    return expand(A_quotient(), N, ring);
}

Series p1_times(const EtaQuotient &g, std::int64_t N, const CoeffRing &ring)
{
    const CoeffRing work = ring.is_exact() ? ring : CoeffRing::mod_seven_power(ring.exponent() + 1);
    const Series x = expand(p1_numerator_quotient() * g, N, work);
    const Series base = expand(g, N, work);
    return divexact_scalar(sub(x, mul_scalar(base, 8)), 7);
}

} // namespace septimal
