#include "septimal/coeff_ring.hpp"

#include "septimal/errors.hpp"

namespace septimal {

CoeffRing::CoeffRing(Kind kind, int exponent) : kind_(kind), exponent_(exponent)
{
    if (kind_ == Kind::ModSevenPower) {
        if (exponent_ < 1)
            throw DomainError("Z/7^e needs e >= 1, got " + std::to_string(exponent_));
        modulus_ = pow7(static_cast<unsigned long>(exponent_));
    }
}

CoeffRing CoeffRing::mod_seven_power(int exponent) { return CoeffRing(Kind::ModSevenPower, exponent); }

const mpz_class &CoeffRing::modulus() const
{
    if (kind_ == Kind::Integer)
        throw DomainError("the integer ring has no modulus");
    return modulus_;
}

mpz_class CoeffRing::reduce(const mpz_class &x) const
{
    if (kind_ == Kind::Integer)
        return x;
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
    return r;
}

bool CoeffRing::is_unit(const mpz_class &x) const
{
    if (kind_ == Kind::Integer)
        return x == 1 || x == -1;
    return mpz_divisible_ui_p(x.get_mpz_t(), 7) == 0;
}

std::string CoeffRing::name() const
{
    if (kind_ == Kind::Integer)
        return "ZZ";
    return "ZZ/7^" + std::to_string(exponent_);
}

int val7(const mpz_class &x)
{
    if (x == 0)
        return kInfiniteValuation;
    mpz_class y = x;
    int v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), 7)) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), 7);
        ++v;
    }
    return v;
}

int val7(const mpz_class &x, const CoeffRing &ring)
{
    if (ring.is_exact())
        return val7(x);
    const mpz_class r = ring.reduce(x);
    if (r == 0)
        throw IndeterminateValuation("element is 0 mod " + ring.name() + "; raise the modulus exponent");
    return val7(r);
}

mpz_class pow7(unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 7, e);
    return r;
}

} // namespace septimal
