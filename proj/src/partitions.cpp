#include "septimal/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "septimal/errors.hpp"

namespace septimal::partitions {

namespace {

void check_cap(int n, int cap)
{
    if (n < 0)
        throw DomainError("negative weight " + std::to_string(n));
    if (n > cap)
        throw CapExceeded("n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

void require_nonempty(const Partition &p, const char *what)
{
    if (p.parts.empty())
        throw DomainError(std::string(what) + " of the empty partition is undefined");
}

// Parts are emitted largest first, each at most `max_part`.
void enumerate_into(int remaining, int max_part, std::vector<int> &prefix, std::vector<Partition> &out)
{
    if (remaining == 0) {
        out.push_back(Partition{prefix});
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        prefix.push_back(part);
        enumerate_into(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

int Partition::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int Partition::ones() const { return static_cast<int>(std::count(parts.begin(), parts.end(), 1)); }

std::vector<Partition> enumerate_partitions(int n, int cap)
{
    check_cap(n, cap);
    std::vector<Partition> out;
    std::vector<int> prefix;
    enumerate_into(n, n, prefix, out);
    return out;
}

int rank(const Partition &p)
{
    require_nonempty(p, "rank");
    return p.largest() - p.length();
}

int crank(const Partition &p)
{
    require_nonempty(p, "crank");
    const int omega = p.ones();
    if (omega == 0)
        return p.largest();
    const int mu = static_cast<int>(std::count_if(p.parts.begin(), p.parts.end(), [&](int x) { return x > omega; }));
    return mu - omega;
}

CrankParity M_counts(int n, int cap)
{
    if (n < 2)
        throw DomainError("M_counts is defined for n >= 2 only");
    CrankParity out;
    for (const auto &p : enumerate_partitions(n, cap)) {
        if (crank(p) % 2 == 0)
            ++out.even;
        else
            ++out.odd;
    }
    return out;
}

std::vector<mpz_class> count_colored_table(int n, int r, int cap)
{
    check_cap(n, cap);
    if (r < 1)
        throw DomainError("colour count must be positive");
    std::vector<mpz_class> ways(static_cast<std::size_t>(n) + 1);
    ways[0] = 1;
    for (int size = 1; size <= n; ++size) {
        const int types = (size % 2 == 1) ? r : 1;
        for (int t = 0; t < types; ++t)
            for (int m = size; m <= n; ++m)
                ways[static_cast<std::size_t>(m)] += ways[static_cast<std::size_t>(m - size)];
    }
    return ways;
}

mpz_class count_colored(int n, int r, int cap) { return count_colored_table(n, r, cap).back(); }

} // namespace septimal::partitions
