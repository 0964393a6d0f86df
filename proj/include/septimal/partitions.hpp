#pragma once

// Brute-force combinatorics used as ground truth for the series code. Nothing
// here depends on Series.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace septimal::partitions {

inline constexpr int kDefaultCap = 60;

/// Parts in non-increasing order.
struct Partition {
    std::vector<int> parts;

    int weight() const;
    int largest() const { return parts.empty() ? 0 : parts.front(); }
    int length() const { return static_cast<int>(parts.size()); }
    /// Number of parts equal to 1.
    int ones() const;

    friend bool operator==(const Partition &, const Partition &) = default;
};

/// All partitions of n in descending lexicographic order.
std::vector<Partition> enumerate_partitions(int n, int cap = kDefaultCap);

/// Largest part minus number of parts.
int rank(const Partition &p);

/// Largest part if there are no 1s; otherwise (#parts larger than the number
/// of 1s) minus (number of 1s).
int crank(const Partition &p);

struct CrankParity {
    std::uint64_t even = 0;
    std::uint64_t odd = 0;

    std::int64_t difference() const { return static_cast<std::int64_t>(even) - static_cast<std::int64_t>(odd); }
};

/// Partitions of n (2 <= n <= cap) counted by crank parity.
CrankParity M_counts(int n, int cap = kDefaultCap);

/// Partitions of n where each odd part carries one of r colours (colour
/// multisets unordered) and even parts are uncoloured. Dynamic programming
/// over part types.
mpz_class count_colored(int n, int r, int cap = kDefaultCap);

/// Same count for every weight 0..n in one pass.
std::vector<mpz_class> count_colored_table(int n, int r, int cap = kDefaultCap);

} // namespace septimal::partitions
