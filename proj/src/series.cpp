#include "septimal/series.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "arith.hpp"
#include "int_math.hpp"

namespace septimal {

using detail::coeffs_of;
using detail::coeff_vector;
using detail::with_arith;

namespace {

void require_same_ring(const Series &a, const Series &b)
{
    if (!(a.ring() == b.ring()))
        throw RingMismatch(a.ring().name(), b.ring().name());
}

template <class Arith>
Series make(const CoeffRing &ring, std::int64_t offset, coeff_vector<Arith> v)
{
    return Series(ring, offset, Series::Storage(std::move(v)));
}

template <class Arith>
Series convert(const Arith &ar, const CoeffRing &ring, std::int64_t offset, const std::vector<mpz_class> &coeffs)
{
    coeff_vector<Arith> v;
    v.reserve(coeffs.size());
    for (const auto &c : coeffs)
        v.push_back(ar.from_mpz(c));
    return make<Arith>(ring, offset, std::move(v));
}

} // namespace

Series::Series(CoeffRing ring, std::int64_t offset, Storage storage)
    : ring_(std::move(ring)), offset_(offset), coeffs_(std::move(storage))
{
    const bool words = std::holds_alternative<WordCoeffs>(coeffs_);
    if (words != ring_.word_sized())
        throw DomainError("coefficient storage does not match ring " + ring_.name());
    normalize();
}

Series Series::zero(const CoeffRing &ring, std::int64_t prec)
{
    return with_arith(ring, [&](const auto &ar) {
        using A = std::decay_t<decltype(ar)>;
        return make<A>(ring, prec, {});
    });
}

Series Series::one(const CoeffRing &ring, std::int64_t prec) { return monomial(ring, 1, 0, prec); }

Series Series::monomial(const CoeffRing &ring, const mpz_class &c, std::int64_t exponent, std::int64_t prec)
{
    if (prec <= exponent)
        return zero(ring, prec);
    std::vector<mpz_class> v(static_cast<std::size_t>(prec - exponent));
    v[0] = c;
    return from_coeffs(ring, exponent, std::move(v));
}

Series Series::from_coeffs(const CoeffRing &ring, std::int64_t offset, std::vector<mpz_class> coeffs)
{
    return with_arith(ring, [&](const auto &ar) { return convert(ar, ring, offset, coeffs); });
}

Series Series::from_coeffs(const CoeffRing &ring, std::int64_t offset, std::initializer_list<long> coeffs)
{
    std::vector<mpz_class> v;
    v.reserve(coeffs.size());
    for (long c : coeffs)
        v.emplace_back(c);
    return from_coeffs(ring, offset, std::move(v));
}

std::size_t Series::size() const noexcept
{
    return std::visit([](const auto &v) { return v.size(); }, coeffs_);
}

std::size_t Series::nonzero_count() const
{
    return std::visit(
        [](const auto &v) {
            return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const auto &x) { return x != 0; }));
        },
        coeffs_);
}

bool Series::is_zero() const { return nonzero_count() == 0; }

void Series::normalize()
{
    std::visit(
        [this](auto &v) {
            auto first = std::find_if(v.begin(), v.end(), [](const auto &x) { return x != 0; });
            const auto skip = std::distance(v.begin(), first);
            if (skip > 0) {
                v.erase(v.begin(), first);
                offset_ += skip;
            }
        },
        coeffs_);
}

mpz_class Series::coeff(std::int64_t n) const
{
    if (n >= prec())
        throw InsufficientPrecision(n + 1, prec(), "coefficient of q^" + std::to_string(n));
    if (n < offset_)
        return 0;
    const auto i = static_cast<std::size_t>(n - offset_);
    return with_arith(ring_, [&](const auto &ar) {
        using A = std::decay_t<decltype(ar)>;
        return ar.to_mpz(coeffs_of<A>(*this)[i]);
    });
}

std::vector<mpz_class> Series::coeffs() const
{
    return with_arith(ring_, [&](const auto &ar) {
        using A = std::decay_t<decltype(ar)>;
        std::vector<mpz_class> out;
        const auto &v = coeffs_of<A>(*this);
        out.reserve(v.size());
        for (const auto &x : v)
            out.push_back(ar.to_mpz(x));
        return out;
    });
}

Series Series::truncated(std::int64_t new_prec) const
{
    if (new_prec > prec())
        throw InsufficientPrecision(new_prec, prec(), "truncate");
    return std::visit(
        [&](const auto &v) {
            using V = std::decay_t<decltype(v)>;
            if (new_prec <= offset_)
                return Series(ring_, new_prec, Storage(V{}));
            V w(v.begin(), v.begin() + (new_prec - offset_));
            return Series(ring_, offset_, Storage(std::move(w)));
        },
        coeffs_);
}

Series Series::shifted(std::int64_t m) const { return Series(ring_, offset_ + m, coeffs_); }

Series Series::reduced(const CoeffRing &target) const
{
    if (target == ring_)
        return *this;
    if (target.is_exact() || (!ring_.is_exact() && target.exponent() > ring_.exponent()))
        throw DomainError("cannot reduce " + ring_.name() + " to " + target.name());
    return from_coeffs(target, offset_, coeffs());
}

std::string Series::to_string(std::size_t max_terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    const auto c = coeffs();
    for (std::size_t i = 0; i < c.size() && shown < max_terms; ++i) {
        if (c[i] == 0)
            continue;
        const std::int64_t e = offset_ + static_cast<std::int64_t>(i);
        mpz_class v = c[i];
        if (shown > 0)
            os << (v < 0 ? " - " : " + ");
        else if (v < 0)
            os << "-";
        v = abs(v);
        if (v != 1 || e == 0)
            os << v.get_str();
        if (e != 0)
            os << "q" << (e != 1 ? "^" + std::to_string(e) : "");
        ++shown;
    }
    if (shown < static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](const auto &x) { return x != 0; })))
        os << (shown ? " + ..." : "...");
    os << (shown ? " + " : "") << "O(q^" << prec() << ")";
    return os.str();
}

Series add(const Series &a, const Series &b)
{
    require_same_ring(a, b);
    const std::int64_t prec = std::min(a.prec(), b.prec());
    const std::int64_t off = std::min({a.offset(), b.offset(), prec});
    return with_arith(a.ring(), [&](const auto &ar) {
        using A = std::decay_t<decltype(ar)>;
        coeff_vector<A> r(static_cast<std::size_t>(prec - off));
        for (const Series *s : {&a, &b}) {
            const auto &v = coeffs_of<A>(*s);
            for (std::size_t i = 0; i < v.size(); ++i) {
                const std::int64_t e = s->offset() + static_cast<std::int64_t>(i);
                if (e >= prec)
                    break;
                auto &slot = r[static_cast<std::size_t>(e - off)];
                slot = ar.add(slot, v[i]);
            }
        }
        return make<A>(a.ring(), off, std::move(r));
    });
}

Series neg(const Series &a)
{
    return with_arith(a.ring(), [&](const auto &ar) {
        using A = std::decay_t<decltype(ar)>;
        coeff_vector<A> r = coeffs_of<A>(a);
        for (auto &x : r)
            x = ar.neg(x);
        return make<A>(a.ring(), a.offset(), std::move(r));
    });
}

Series sub(const Series &a, const Series &b) { return add(a, neg(b)); }

Series mul_scalar(const Series &a, const mpz_class &c)
{
    return with_arith(a.ring(), [&](const auto &ar) {
        using A = std::decay_t<decltype(ar)>;
        const auto k = ar.from_mpz(c);
        coeff_vector<A> r = coeffs_of<A>(a);
        for (auto &x : r)
            x = ar.mul(x, k);
        return make<A>(a.ring(), a.offset(), std::move(r));
    });
}

Series mul(const Series &a, const Series &b)
{
    require_same_ring(a, b);
    const std::int64_t off = a.offset() + b.offset();
    const std::int64_t len = static_cast<std::int64_t>(std::min(a.size(), b.size()));
    if (len == 0)
        return Series::zero(a.ring(), std::min(a.prec() + b.offset(), b.prec() + a.offset()));
    // Rows are taken from the factor with fewer nonzero terms, so products
    // with eta factors cost O(len * nnz).
    const bool a_sparser = a.nonzero_count() <= b.nonzero_count();
    const Series &x = a_sparser ? a : b;
    const Series &y = a_sparser ? b : a;
    return with_arith(a.ring(), [&](const auto &ar) {
        using A = std::decay_t<decltype(ar)>;
        const auto &xv = coeffs_of<A>(x);
        const auto &yv = coeffs_of<A>(y);
        const auto n = static_cast<std::size_t>(len);
        std::vector<typename A::acc_type> acc(n, ar.acc_zero());
        for (std::size_t i = 0; i < n && i < xv.size(); ++i) {
            const auto &xi = xv[i];
            if (ar.is_zero(xi))
                continue;
            const std::size_t lim = std::min(yv.size(), n - i);
            auto *out = acc.data() + i;
            if (ar.is_one(xi)) {
                for (std::size_t j = 0; j < lim; ++j)
                    ar.acc_add(out[j], yv[j]);
            } else if (ar.is_minus_one(xi)) {
                for (std::size_t j = 0; j < lim; ++j)
                    ar.acc_sub(out[j], yv[j]);
            } else {
                for (std::size_t j = 0; j < lim; ++j)
                    ar.acc_fma(out[j], xi, yv[j]);
            }
        }
        coeff_vector<A> r;
        r.reserve(n);
        for (auto &c : acc)
            r.push_back(ar.finish(c));
        return make<A>(a.ring(), off, std::move(r));
    });
}

Series divide(const Series &a, const Series &b)
{
    require_same_ring(a, b);
    if (b.size() == 0)
        throw NonUnit("division by a series with no known nonzero coefficient");
    const std::int64_t off = a.offset() - b.offset();
    const auto n = std::min(a.size(), b.size());
    return with_arith(a.ring(), [&](const auto &ar) {
        using A = std::decay_t<decltype(ar)>;
        const auto &av = coeffs_of<A>(a);
        const auto &bv = coeffs_of<A>(b);
        const auto lead_inv = ar.inverse(bv[0]);
        if (!lead_inv)
            throw NonUnit("leading coefficient " + ar.to_mpz(bv[0]).get_str() + " of divisor is not a unit in " +
                          a.ring().name());
        struct Term {
            std::size_t j;
            typename A::value_type v;
            int sign; // +1 / -1 for unit entries, 0 otherwise
        };
        std::vector<Term> terms;
        for (std::size_t j = 1; j < n; ++j)
            if (!ar.is_zero(bv[j]))
                terms.push_back({j, bv[j], ar.is_one(bv[j]) ? 1 : (ar.is_minus_one(bv[j]) ? -1 : 0)});
        const bool lead_one = ar.is_one(*lead_inv);
        coeff_vector<A> r;
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto acc = ar.acc_init(av[i]);
            for (const auto &t : terms) {
                if (t.j > i)
                    break;
                const auto &prev = r[i - t.j];
                if (t.sign > 0)
                    ar.acc_sub(acc, prev);
                else if (t.sign < 0)
                    ar.acc_add(acc, prev);
                else
                    ar.acc_fms(acc, t.v, prev);
            }
            auto c = ar.finish(acc);
            r.push_back(lead_one ? std::move(c) : ar.mul(c, *lead_inv));
        }
        return make<A>(a.ring(), off, std::move(r));
    });
}

Series invert(const Series &a)
{
    return divide(Series::one(a.ring(), static_cast<std::int64_t>(a.size())), a);
}

Series pow(const Series &a, long n)
{
    if (n < 0)
        return pow(invert(a), -n);
    Series result = Series::one(a.ring(), static_cast<std::int64_t>(a.size()));
    Series base = a;
    while (n > 0) {
        if (n & 1)
            result = mul(result, base);
        n >>= 1;
        if (n > 0)
            base = mul(base, base);
    }
    return result;
}

Series substitute_qk(const Series &a, std::int64_t k)
{
    if (k < 1)
        throw DomainError("substitute_qk needs k >= 1");
    if (k == 1)
        return a;
    return std::visit(
        [&](const auto &v) {
            using V = std::decay_t<decltype(v)>;
            V r(v.size() * static_cast<std::size_t>(k));
            for (std::size_t i = 0; i < v.size(); ++i)
                r[i * static_cast<std::size_t>(k)] = v[i];
            return Series(a.ring(), a.offset() * k, Series::Storage(std::move(r)));
        },
        a.storage());
}

Series extract_progression(const Series &a, std::int64_t m, std::int64_t r)
{
    if (m < 1)
        throw DomainError("extract_progression needs m >= 1");
    const std::int64_t prec = detail::floor_div(a.prec() - r - 1, m) + 1;
    const std::int64_t off = std::min(detail::ceil_div(a.offset() - r, m), prec);
    return std::visit(
        [&](const auto &v) {
            using V = std::decay_t<decltype(v)>;
            V out(static_cast<std::size_t>(prec - off));
            for (std::int64_t n = off; n < prec; ++n)
                out[static_cast<std::size_t>(n - off)] = v[static_cast<std::size_t>(m * n + r - a.offset())];
            return Series(a.ring(), off, Series::Storage(std::move(out)));
        },
        a.storage());
}

Series divexact_scalar(const Series &a, const mpz_class &d)
{
    if (d == 0)
        throw DomainError("division by zero");
    const auto c = a.coeffs();
    std::vector<mpz_class> q(c.size());
    if (a.ring().is_exact()) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!mpz_divisible_p(c[i].get_mpz_t(), d.get_mpz_t()))
                throw NonExactDivision(a.offset() + static_cast<std::int64_t>(i), "divisor " + d.get_str());
            mpz_divexact(q[i].get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
        }
        return Series::from_coeffs(a.ring(), a.offset(), std::move(q));
    }
    const int k = val7(d);
    const int e = a.ring().exponent();
    if (k >= e)
        throw DomainError("dividing by 7^" + std::to_string(k) + " leaves nothing of " + a.ring().name());
    const mpz_class p = pow7(static_cast<unsigned long>(k));
    const CoeffRing target = CoeffRing::mod_seven_power(e - k);
    mpz_class unit = d / p, unit_inv;
    mpz_invert(unit_inv.get_mpz_t(), unit.get_mpz_t(), target.modulus().get_mpz_t());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!mpz_divisible_p(c[i].get_mpz_t(), p.get_mpz_t()))
            throw NonExactDivision(a.offset() + static_cast<std::int64_t>(i), "divisor " + d.get_str());
        mpz_divexact(q[i].get_mpz_t(), c[i].get_mpz_t(), p.get_mpz_t());
        q[i] *= unit_inv;
    }
    return Series::from_coeffs(target, a.offset(), std::move(q));
}

std::optional<std::int64_t> first_mismatch(const Series &a, const Series &b)
{
    require_same_ring(a, b);
    const std::int64_t hi = std::min(a.prec(), b.prec());
    const std::int64_t lo = std::min(a.offset(), b.offset());
    if (hi <= lo)
        throw EmptyOverlap("no tracked coefficient below the common precision q^" + std::to_string(hi));
    return with_arith(a.ring(), [&](const auto &ar) -> std::optional<std::int64_t> {
        using A = std::decay_t<decltype(ar)>;
        const auto &av = coeffs_of<A>(a);
        const auto &bv = coeffs_of<A>(b);
        const typename A::value_type zero{};
        auto at = [&](const auto &v, std::int64_t off, std::int64_t n) -> const typename A::value_type & {
            return n < off ? zero : v[static_cast<std::size_t>(n - off)];
        };
        for (std::int64_t n = lo; n < hi; ++n)
            if (at(av, a.offset(), n) != at(bv, b.offset(), n))
                return n;
        return std::nullopt;
    });
}

bool agrees(const Series &a, const Series &b) { return !first_mismatch(a, b).has_value(); }

} // namespace septimal
