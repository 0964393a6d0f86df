#pragma once

#include <cstdint>
#include <random>

#include "septimal/eta_quotient.hpp"
#include "septimal/series.hpp"

namespace testing {

using septimal::CoeffRing;
using septimal::Series;

inline std::mt19937_64 &rng()
{
    static std::mt19937_64 gen(20240607);
    return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Random series with coefficients in [-bound, bound].
inline Series random_series(const CoeffRing &ring, std::int64_t offset, std::int64_t length, long bound = 50)
{
    std::vector<mpz_class> c;
    for (std::int64_t i = 0; i < length; ++i)
        c.emplace_back(uniform(-bound, bound));
    if (!c.empty() && c.front() == 0)
        c.front() = 1;
    return Series::from_coeffs(ring, offset, std::move(c));
}

/// Random series whose leading coefficient is 1 (invertible in every ring).
inline Series random_unit_series(const CoeffRing &ring, std::int64_t offset, std::int64_t length)
{
    Series s = random_series(ring, offset, length);
    auto c = s.coeffs();
    c.front() = 1;
    return Series::from_coeffs(ring, s.offset(), std::move(c));
}

/// Random eta quotient with scales up to max_scale and small exponents.
inline septimal::EtaQuotient random_eta_quotient(int max_scale, int max_exp, int qexp_lo, int qexp_hi)
{
    std::map<std::int64_t, std::int64_t> f;
    const int count = static_cast<int>(uniform(1, 3));
    for (int i = 0; i < count; ++i)
        f[uniform(1, max_scale)] += uniform(-max_exp, max_exp);
    return septimal::EtaQuotient(uniform(qexp_lo, qexp_hi), f);
}

/// Brute-force prod_{n>=1} (1 - q^{kn})^e to precision N with plain integers.
inline std::vector<mpz_class> product_oracle(const std::map<std::int64_t, std::int64_t> &factors, std::int64_t N)
{
    std::vector<mpz_class> c(static_cast<std::size_t>(N), 0);
    c[0] = 1;
    for (const auto &[k, e] : factors) {
        for (std::int64_t n = 1; k * n < N; ++n) {
            const std::int64_t s = k * n;
            for (std::int64_t rep = 0; rep < (e < 0 ? -e : e); ++rep) {
                if (e > 0) {
                    for (std::int64_t i = N - 1; i >= s; --i)
                        c[i] -= c[i - s];
                } else {
                    for (std::int64_t i = s; i < N; ++i)
                        c[i] += c[i - s];
                }
            }
        }
    }
    return c;
}

} // namespace testing
