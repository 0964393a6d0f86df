#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "septimal/series.hpp"

namespace septimal {

/// Symbolic product  q^qexp * prod_k J_k^{e_k},  J_k = prod_{n>=1} (1 - q^{kn}).
class EtaQuotient
{
  public:
    EtaQuotient() = default;
    /// Zero exponents are dropped; scales must be positive.
    EtaQuotient(std::int64_t qexp, std::map<std::int64_t, std::int64_t> factors);

    /// J_k^e.
    static EtaQuotient J(std::int64_t k, std::int64_t e = 1) { return EtaQuotient(0, {{k, e}}); }
    static EtaQuotient q_power(std::int64_t m) { return EtaQuotient(m, {}); }

    std::int64_t qexp() const noexcept { return qexp_; }
    const std::map<std::int64_t, std::int64_t> &factors() const noexcept { return factors_; }
    /// Exponent of J_k (0 if absent).
    std::int64_t exponent_of(std::int64_t k) const;

    EtaQuotient pow(std::int64_t n) const;
    EtaQuotient inverse() const { return pow(-1); }
    /// q -> q^k.
    EtaQuotient substitute_qk(std::int64_t k) const;

    std::string to_string() const;

    friend EtaQuotient operator*(const EtaQuotient &a, const EtaQuotient &b);
    friend EtaQuotient operator/(const EtaQuotient &a, const EtaQuotient &b) { return a * b.inverse(); }
    friend bool operator==(const EtaQuotient &, const EtaQuotient &) = default;

  private:
    std::int64_t qexp_ = 0;
    std::map<std::int64_t, std::int64_t> factors_;
};

/// J_k to precision N from the pentagonal number theorem.
Series eta_series(std::int64_t k, std::int64_t N, const CoeffRing &ring);

/// Expansion of eq to precision N (N > eq.qexp()).
Series expand(const EtaQuotient &eq, std::int64_t N, const CoeffRing &ring);

/// f * eq computed by sparse multiplication and division by the eta factors.
/// The result keeps the relative precision of f.
Series multiply(const Series &f, const EtaQuotient &eq);

// Named functions. All precisions are absolute truncation orders.

/// q t = q J_7^4 / J_1^4.
EtaQuotient t_quotient();
/// p_0 = q J_14^4 J_1^4 / (J_7^4 J_2^4).
EtaQuotient p0_quotient();
/// J_14 J_1^7 / (J_7 J_2^7) = 8 + 7 p_1.
EtaQuotient p1_numerator_quotient();
/// A = J_2^2 J_49^3 / (q^2 J_1^3 J_98^2). The appendix relations and the
/// closed form of the L-chain need the squared J_98 factor.
EtaQuotient A_quotient();

/// sum a(n) q^n = (-q;q)^2 / (q;q) = J_2^2 / J_1^3.
Series gen_a(std::int64_t N, const CoeffRing &ring);
/// sum a_r(n) q^n = J_2^{r-1} / J_1^r (odd parts in r colours).
Series gen_ar(std::int64_t r, std::int64_t N, const CoeffRing &ring);
/// sum M(n) q^n = 2q + J_1^3 / J_2^2.
Series gen_M(std::int64_t N, const CoeffRing &ring);
Series hauptmodul_t(std::int64_t N, const CoeffRing &ring);
Series p0_series(std::int64_t N, const CoeffRing &ring);
Series p1_series(std::int64_t N, const CoeffRing &ring);
Series A_series(std::int64_t N, const CoeffRing &ring);

/// p_1 * g to precision N, via (expand(X g) - 8 expand(g)) / 7 with X the
/// p_1 numerator. Computed one 7-power higher in modular rings so the result
/// lands in `ring`.
Series p1_times(const EtaQuotient &g, std::int64_t N, const CoeffRing &ring);

} // namespace septimal
