#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ustat {

using BigInt = mpz_class;

// Thrown when a request exceeds the configured table / enumeration caps.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kStirlingCap = 64;     // largest n for exact integer tables
inline constexpr int kEnumerationCap = 16;  // largest m*ell for subpartition streams

// Row diagram with ell rows of m nodes. Elements are 1..m*ell and element
// (i-1)*m + j sits at (row i, column j), both 1-based.
struct RowDiagram {
    int m = 1;
    int ell = 1;

    int size() const { return m * ell; }
    int row_of(int element) const { return (element - 1) / m + 1; }
    int col_of(int element) const { return (element - 1) % m + 1; }
    int element(int row, int col) const { return (row - 1) * m + col; }
};

// A family of disjoint non-empty blocks over a row diagram. Blocks are kept
// canonical: each block sorted ascending, blocks ordered by smallest element.
struct Subpartition {
    RowDiagram diagram;
    std::vector<std::vector<int>> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }
    int covered() const;                                   // ||sigma||
    int k() const;                                         // m*ell + |sigma| - ||sigma||
};

struct ClassFlags {
    bool all_blocks_ge2 = false;      // condition (i)
    bool row_meets_block_le1 = false; // condition (ii)
    bool every_row_hit = false;       // condition (iii)

    bool in_star2() const { return all_blocks_ge2 && row_meets_block_le1 && every_row_hit; }
};

ClassFlags classify(const Subpartition& sp);

BigInt factorial(int n);
BigInt binomial(int n, int k);

// Stirling number of the second kind S(n,k), exact.
BigInt stirling2(int n, int k, int cap = kStirlingCap);

// Sum over all partitions of [n] into k blocks of the product of block-size
// factorials: (n-1)!/(k-1)! * C(n,k).
BigInt faa_di_bruno_sum(int n, int k);

// Streams every subpartition in Pi**_{>=2}(m;ell) exactly once, in a fixed
// deterministic order (depth-first over elements; for each element the
// branches are: leave uncovered, join existing blocks in creation order,
// open a new block). Single consumer.
void enumerate_star2(int m, int ell, const std::function<void(const Subpartition&)>& visit,
                     int cap = kEnumerationCap);

std::vector<Subpartition> enumerate_star2(int m, int ell, int cap = kEnumerationCap);

// |Pi**_{>=2}(m;ell,k)| for every k, as a vector indexed by k (size m*ell+1).
// Counts are produced by direct enumeration for small diagrams and by an
// exact row-by-row recursion for larger ones; the two routes agree on the
// overlap (tested).
std::vector<BigInt> count_star2_by_k(int m, int ell);
BigInt count_star2(int m, int ell, int k);

// Both internal routes, exposed for testing and benchmarking.
std::vector<BigInt> count_star2_by_k_enum(int m, int ell, bool parallel = false,
                                          int cap = kEnumerationCap);
std::vector<BigInt> count_star2_by_k_dp(int m, int ell, int cap = kStirlingCap);

// h-completion: adds a singleton block for every uncovered element, giving a
// partition of [m*ell]. h_inverse drops all singletons.
std::vector<std::vector<int>> h_complete(const Subpartition& sp);
Subpartition h_inverse(const RowDiagram& diagram, const std::vector<std::vector<int>>& partition);

}  // namespace ustat
