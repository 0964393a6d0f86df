#pragma once

// Coefficient arithmetic policies behind Series. Each policy names its
// stored value type and an accumulator type used by the convolution and
// division kernels; accumulators are reduced once per output coefficient.

#include <cstdint>
#include <optional>

#include <gmpxx.h>

#include "septimal/coeff_ring.hpp"
#include "septimal/series.hpp"

namespace septimal::detail {

struct ExactArith {
    using value_type = mpz_class;
    using acc_type = mpz_class;

    value_type from_mpz(const mpz_class &x) const { return x; }
    mpz_class to_mpz(const value_type &x) const { return x; }
    bool is_zero(const value_type &x) const { return x == 0; }
    bool is_one(const value_type &x) const { return x == 1; }
    bool is_minus_one(const value_type &x) const { return x == -1; }

    acc_type acc_init(const value_type &x) const { return x; }
    acc_type acc_zero() const { return 0; }
    void acc_add(acc_type &acc, const value_type &x) const { acc += x; }
    void acc_sub(acc_type &acc, const value_type &x) const { acc -= x; }
    void acc_fma(acc_type &acc, const value_type &a, const value_type &b) const
    {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    void acc_fms(acc_type &acc, const value_type &a, const value_type &b) const
    {
        mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    value_type finish(acc_type &acc) const { return std::move(acc); }

    value_type add(const value_type &a, const value_type &b) const { return a + b; }
    value_type sub(const value_type &a, const value_type &b) const { return a - b; }
    value_type neg(const value_type &a) const { return -a; }
    value_type mul(const value_type &a, const value_type &b) const { return a * b; }
    std::optional<value_type> inverse(const value_type &a) const
    {
        if (a == 1 || a == -1)
            return a;
        return std::nullopt;
    }
};

struct BigModArith {
    mpz_class m;

    using value_type = mpz_class;
    using acc_type = mpz_class;

    value_type reduce(const mpz_class &x) const
    {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        return r;
    }
    value_type from_mpz(const mpz_class &x) const { return reduce(x); }
    mpz_class to_mpz(const value_type &x) const { return x; }
    bool is_zero(const value_type &x) const { return x == 0; }
    bool is_one(const value_type &x) const { return x == 1; }
    bool is_minus_one(const value_type &x) const { return x == m - 1; }

    acc_type acc_init(const value_type &x) const { return x; }
    acc_type acc_zero() const { return 0; }
    void acc_add(acc_type &acc, const value_type &x) const { acc += x; }
    void acc_sub(acc_type &acc, const value_type &x) const { acc -= x; }
    void acc_fma(acc_type &acc, const value_type &a, const value_type &b) const
    {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    void acc_fms(acc_type &acc, const value_type &a, const value_type &b) const
    {
        mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    value_type finish(acc_type &acc) const { return reduce(acc); }

    value_type add(const value_type &a, const value_type &b) const { return reduce(a + b); }
    value_type sub(const value_type &a, const value_type &b) const { return reduce(a - b); }
    value_type neg(const value_type &a) const { return reduce(-a); }
    value_type mul(const value_type &a, const value_type &b) const { return reduce(a * b); }
    std::optional<value_type> inverse(const value_type &a) const
    {
        mpz_class r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
            return std::nullopt;
        return r;
    }
};

/// Residues in [0, m) with m = 7^e < 2^63. Below 2^32 products fit in 64
/// bits and are accumulated unreduced in 128 bits.
struct WordModArith {
    std::uint64_t m;
    bool small;

    using value_type = std::uint64_t;
    using acc_type = unsigned __int128;

    explicit WordModArith(std::uint64_t modulus) : m(modulus), small(modulus < (std::uint64_t{1} << 32)) {}

    value_type from_mpz(const mpz_class &x) const
    {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m);
        return r.get_ui();
    }
    mpz_class to_mpz(const value_type &x) const { return mpz_class(static_cast<unsigned long>(x)); }
    bool is_zero(value_type x) const { return x == 0; }
    bool is_one(value_type x) const { return x == 1; }
    bool is_minus_one(value_type x) const { return x == m - 1; }

    acc_type acc_init(value_type x) const { return x; }
    acc_type acc_zero() const { return 0; }
    void acc_add(acc_type &acc, value_type x) const { acc += x; }
    void acc_sub(acc_type &acc, value_type x) const { acc += m - x; }
    void acc_fma(acc_type &acc, value_type a, value_type b) const
    {
        const acc_type p = static_cast<acc_type>(a) * b;
        acc += small ? p : p % m;
    }
    void acc_fms(acc_type &acc, value_type a, value_type b) const
    {
        const auto p = static_cast<value_type>((static_cast<acc_type>(a) * b) % m);
        acc += m - p;
    }
    value_type finish(acc_type acc) const { return static_cast<value_type>(acc % m); }

    value_type add(value_type a, value_type b) const
    {
        const value_type s = a + b;
        return s >= m ? s - m : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (m - b); }
    value_type neg(value_type a) const { return a == 0 ? 0 : m - a; }
    value_type mul(value_type a, value_type b) const
    {
        return static_cast<value_type>((static_cast<acc_type>(a) * b) % m);
    }
    std::optional<value_type> inverse(value_type a) const
    {
        mpz_class r;
        const mpz_class am(static_cast<unsigned long>(a)), mm(static_cast<unsigned long>(m));
        if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t()) == 0)
            return std::nullopt;
        return r.get_ui();
    }
};

/// Calls f(arith) with the policy matching ring.
template <class F>
decltype(auto) with_arith(const CoeffRing &ring, F &&f)
{
    if (ring.is_exact())
        return f(ExactArith{});
    if (ring.word_sized())
        return f(WordModArith(ring.modulus().get_ui()));
    return f(BigModArith{ring.modulus()});
}

template <class Arith>
using coeff_vector = std::vector<typename Arith::value_type>;

template <class Arith>
const coeff_vector<Arith> &coeffs_of(const Series &s)
{
    return std::get<coeff_vector<Arith>>(s.storage());
}

} // namespace septimal::detail
