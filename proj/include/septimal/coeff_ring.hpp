#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <gmpxx.h>

namespace septimal {

/// Exact coefficient ring of a series: the integers, or Z/7^e.
class CoeffRing
{
  public:
    enum class Kind { Integer, ModSevenPower };

    /// Largest exponent whose modulus 7^e fits in a signed 64-bit word.
    static constexpr int kMaxWordExponent = 22;

    static CoeffRing integers() { return CoeffRing(Kind::Integer, 0); }
    static CoeffRing mod_seven_power(int exponent);

    Kind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ == Kind::Integer; }
    /// e for Z/7^e; 0 for the integers.
    int exponent() const noexcept { return exponent_; }
    /// 7^e; throws for the integers.
    const mpz_class &modulus() const;
    /// Residues stored in machine words.
    bool word_sized() const noexcept { return kind_ == Kind::ModSevenPower && exponent_ <= kMaxWordExponent; }

    /// Canonical representative of x: x itself, or the residue in [0, 7^e).
    mpz_class reduce(const mpz_class &x) const;
    bool is_unit(const mpz_class &x) const;

    std::string name() const;

    friend bool operator==(const CoeffRing &a, const CoeffRing &b) noexcept
    {
        return a.kind_ == b.kind_ && a.exponent_ == b.exponent_;
    }

  private:
    CoeffRing(Kind kind, int exponent);

    Kind kind_;
    int exponent_;
    mpz_class modulus_;
};

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

/// 7-adic valuation of an integer; kInfiniteValuation for 0.
int val7(const mpz_class &x);

/// 7-adic valuation of a ring element. In Z/7^e the element must be nonzero
/// (IndeterminateValuation otherwise).
int val7(const mpz_class &x, const CoeffRing &ring);

mpz_class pow7(unsigned long e);

} // namespace septimal
