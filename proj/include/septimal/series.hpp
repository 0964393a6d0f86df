#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "septimal/coeff_ring.hpp"
#include "septimal/errors.hpp"

namespace septimal {

/// Truncated Laurent series  sum_{offset <= n < prec} c_n q^n  over a CoeffRing.
///
/// Every coefficient of q^n with n < prec is determined; coefficients below
/// offset are zero. Values are immutable once built, and all operations
/// return fresh series normalized so that the lowest stored coefficient is
/// nonzero (or the series stores nothing, in which case offset == prec).
/// Zeros inside the stored range are kept: they mean "known to be zero".
class Series
{
  public:
    using BigCoeffs = std::vector<mpz_class>;
    using WordCoeffs = std::vector<std::uint64_t>;
    using Storage = std::variant<BigCoeffs, WordCoeffs>;

    /// The zero series known up to q^prec.
    static Series zero(const CoeffRing &ring, std::int64_t prec);
    /// The constant 1 known up to q^prec.
    static Series one(const CoeffRing &ring, std::int64_t prec);
    /// c q^exponent, known up to q^prec.
    static Series monomial(const CoeffRing &ring, const mpz_class &c, std::int64_t exponent, std::int64_t prec);
    /// coeffs[i] is the coefficient of q^(offset + i); prec = offset + coeffs.size().
    static Series from_coeffs(const CoeffRing &ring, std::int64_t offset, std::vector<mpz_class> coeffs);
    static Series from_coeffs(const CoeffRing &ring, std::int64_t offset, std::initializer_list<long> coeffs);

    Series(CoeffRing ring, std::int64_t offset, Storage storage);

    const CoeffRing &ring() const noexcept { return ring_; }
    std::int64_t offset() const noexcept { return offset_; }
    std::int64_t prec() const noexcept { return offset_ + static_cast<std::int64_t>(size()); }
    /// Number of stored coefficients (prec - offset).
    std::size_t size() const noexcept;
    std::size_t nonzero_count() const;
    bool is_zero() const;

    /// Coefficient of q^n as a canonical ring representative. Throws
    /// InsufficientPrecision when n >= prec.
    mpz_class coeff(std::int64_t n) const;
    std::vector<mpz_class> coeffs() const;

    /// Lowers the truncation order; raising it is an error.
    Series truncated(std::int64_t prec) const;
    /// q^m * f.
    Series shifted(std::int64_t m) const;
    /// Coefficient-wise image in a quotient ring (integers -> Z/7^e, or Z/7^e -> Z/7^f with f <= e).
    Series reduced(const CoeffRing &target) const;

    const Storage &storage() const noexcept { return coeffs_; }

    std::string to_string(std::size_t max_terms = 12) const;

  private:
    void normalize();

    CoeffRing ring_;
    std::int64_t offset_;
    Storage coeffs_;
};

Series add(const Series &a, const Series &b);
Series sub(const Series &a, const Series &b);
Series neg(const Series &a);
Series mul(const Series &a, const Series &b);
Series mul_scalar(const Series &a, const mpz_class &c);
/// a / b; the lowest coefficient of b must be a unit.
Series divide(const Series &a, const Series &b);
Series invert(const Series &a);
Series pow(const Series &a, long n);
/// f(q) -> f(q^k).
Series substitute_qk(const Series &a, std::int64_t k);
/// sum_n a(m n + r) q^n.
Series extract_progression(const Series &a, std::int64_t m, std::int64_t r);
/// Coefficient-wise exact quotient by d. In Z/7^e, d = 7^k * unit and the
/// result lives in Z/7^(e-k).
Series divexact_scalar(const Series &a, const mpz_class &d);

inline Series operator+(const Series &a, const Series &b) { return add(a, b); }
inline Series operator-(const Series &a, const Series &b) { return sub(a, b); }
inline Series operator-(const Series &a) { return neg(a); }
inline Series operator*(const Series &a, const Series &b) { return mul(a, b); }
inline Series operator*(const mpz_class &c, const Series &a) { return mul_scalar(a, c); }

/// First exponent (on the common precision) where a and b differ, or
/// nullopt if they agree there. Throws EmptyOverlap if there is nothing to
/// compare and RingMismatch for different rings.
std::optional<std::int64_t> first_mismatch(const Series &a, const Series &b);
/// Agreement on the common precision.
bool agrees(const Series &a, const Series &b);
inline bool operator==(const Series &a, const Series &b) { return agrees(a, b); }

} // namespace septimal
