#include "ustat/combinat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ustat {

int Subpartition::covered() const {
    int c = 0;
    for (const auto& b : blocks) c += static_cast<int>(b.size());
    return c;
}

int Subpartition::k() const { return diagram.size() + block_count() - covered(); }

ClassFlags classify(const Subpartition& sp) {
    ClassFlags f;
    f.all_blocks_ge2 = std::all_of(sp.blocks.begin(), sp.blocks.end(),
                                   [](const auto& b) { return b.size() >= 2; });
    f.row_meets_block_le1 = true;
    std::vector<char> row_hit_by_ge2(sp.diagram.ell + 1, 0);
    for (const auto& b : sp.blocks) {
        std::vector<char> seen(sp.diagram.ell + 1, 0);
        for (int e : b) {
            int r = sp.diagram.row_of(e);
            if (seen[r]) f.row_meets_block_le1 = false;
            seen[r] = 1;
            if (b.size() >= 2) row_hit_by_ge2[r] = 1;
        }
    }
    f.every_row_hit = true;
    for (int r = 1; r <= sp.diagram.ell; ++r)
        if (!row_hit_by_ge2[r]) f.every_row_hit = false;
    return f;
}

BigInt factorial(int n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BigInt stirling2(int n, int k, int cap) {
    if (n < 0 || k < 0) throw std::invalid_argument("stirling2: negative argument");
    if (n > cap) throw CapExceeded("stirling2: table overflow, n=" + std::to_string(n) +
                                   " exceeds cap " + std::to_string(cap));
    if (k > n) return 0;
    if (n == 0) return 1;  // S(0,0) = 1
    if (k == 0) return 0;
    // S(n,k) = k*S(n-1,k) + S(n-1,k-1)
    std::vector<BigInt> row(n + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, n); j >= 1; --j) row[j] = BigInt(j) * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

BigInt faa_di_bruno_sum(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("faa_di_bruno_sum: need 1 <= k <= n");
    if (n > kStirlingCap) throw CapExceeded("faa_di_bruno_sum: table overflow");
    return factorial(n - 1) / factorial(k - 1) * binomial(n, k);
}

namespace {

// Shared depth-first engine. Elements are assigned in increasing order; each
// element is left uncovered, joins an existing block with no element in its
// row yet, or opens a new block. Prunes branches that cannot end with all
// blocks >= 2 or with some row left unhit.
struct Star2Walker {
    RowDiagram dg;
    // per block: elements (only kept when emitting), size, bitmask of rows hit
    std::vector<std::vector<int>> blocks;
    std::vector<int> sizes;
    std::vector<uint32_t> rowmask;
    int singletons = 0;
    int covered = 0;
    uint32_t rows_ge2 = 0;  // rows hit by some block that already reached size 2
    const std::function<void(const Subpartition&)>* visit = nullptr;
    std::vector<BigInt>* counts_by_k = nullptr;  // when counting only

    void run() { descend(1); }

    void descend(int e) {
        const int n = dg.size();
        if (e > n) {
            if (singletons == 0 && rows_ge2 == (uint32_t(1) << dg.ell) - 1) emit();
            return;
        }
        const int row = dg.row_of(e);
        const uint32_t rowbit = uint32_t(1) << (row - 1);
        const int remaining = n - e + 1;
        if (singletons > remaining) return;
        // rows strictly before this element's row are complete; each must
        // already be hit by a >=2 block or contain an open singleton that can
        // still grow. Cheap necessary check: a completed row not covered by
        // rows_ge2 must intersect some open block.
        if (!rows_prefix_ok(row)) return;

        // 1) leave uncovered
        descend(e + 1);

        // 2) join an existing block whose rows do not include this one
        for (size_t i = 0; i < sizes.size(); ++i) {
            if (rowmask[i] & rowbit) continue;
            const uint32_t saved_ge2 = rows_ge2;
            sizes[i] += 1;
            rowmask[i] |= rowbit;
            if (visit) blocks[i].push_back(e);
            if (sizes[i] == 2) {
                --singletons;
                rows_ge2 |= rowmask[i];
            } else {
                rows_ge2 |= rowbit;
            }
            ++covered;
            descend(e + 1);
            --covered;
            if (sizes[i] == 2) ++singletons;
            rows_ge2 = saved_ge2;
            if (visit) blocks[i].pop_back();
            rowmask[i] &= ~rowbit;
            sizes[i] -= 1;
        }

        // 3) open a new block with e as its smallest element
        sizes.push_back(1);
        rowmask.push_back(rowbit);
        if (visit) blocks.emplace_back(1, e);
        ++singletons;
        ++covered;
        descend(e + 1);
        --covered;
        --singletons;
        if (visit) blocks.pop_back();
        rowmask.pop_back();
        sizes.pop_back();
    }

    bool rows_prefix_ok(int current_row) const {
        // every fully processed row must still be able to satisfy (iii)
        for (int r = 1; r < current_row; ++r) {
            const uint32_t bit = uint32_t(1) << (r - 1);
            if (rows_ge2 & bit) continue;
            bool open = false;
            for (size_t i = 0; i < sizes.size() && !open; ++i)
                if (sizes[i] == 1 && (rowmask[i] & bit)) open = true;
            if (!open) return false;
        }
        return true;
    }

    void emit() {
        if (counts_by_k) {
            const int k = dg.size() + static_cast<int>(sizes.size()) - covered;
            (*counts_by_k)[k] += 1;
        }
        if (visit) {
            Subpartition sp;
            sp.diagram = dg;
            sp.blocks = blocks;
            (*visit)(sp);
        }
    }
};

void check_star2_args(int m, int ell, int cap) {
    if (m < 1 || ell < 1) throw std::invalid_argument("star2: need m >= 1 and ell >= 1");
    if (m * ell > cap) {
        std::string est;
        try {
            BigInt total = 0;
            for (const auto& c : count_star2_by_k_dp(m, ell)) total += c;
            est = ", estimated count " + total.get_str();
        } catch (const CapExceeded&) {
        }
        throw CapExceeded("star2: m*ell=" + std::to_string(m * ell) + " exceeds enumeration cap " +
                          std::to_string(cap) + est);
    }
}

}  // namespace

void enumerate_star2(int m, int ell, const std::function<void(const Subpartition&)>& visit,
                     int cap) {
    check_star2_args(m, ell, cap);
    Star2Walker w;
    w.dg = RowDiagram{m, ell};
    w.visit = &visit;
    w.run();
}

std::vector<Subpartition> enumerate_star2(int m, int ell, int cap) {
    std::vector<Subpartition> out;
    enumerate_star2(
        m, ell, [&out](const Subpartition& sp) { out.push_back(sp); }, cap);
    return out;
}

std::vector<BigInt> count_star2_by_k_enum(int m, int ell, bool parallel, int cap) {
    check_star2_args(m, ell, cap);
    const int n = m * ell;
    std::vector<BigInt> counts(n + 1, 0);
    if (!parallel || n < 6) {
        Star2Walker w;
        w.dg = RowDiagram{m, ell};
        w.counts_by_k = &counts;
        w.run();
        return counts;
    }

    // Split the search on the assignment of the first few elements, then walk
    // each prefix independently. Reduction is a deterministic serial merge.
    struct Prefix {
        std::vector<int> sizes;
        std::vector<uint32_t> rowmask;
        int singletons, covered;
        uint32_t rows_ge2;
        int next_element;
    };
    std::vector<Prefix> prefixes;
    const int split_depth = std::min(4, n - 1);
    std::function<void(Star2Walker&, int)> expand = [&](Star2Walker& w, int e) {
        if (e > split_depth) {
            prefixes.push_back({w.sizes, w.rowmask, w.singletons, w.covered, w.rows_ge2, e});
            return;
        }
        const int row = w.dg.row_of(e);
        const uint32_t rowbit = uint32_t(1) << (row - 1);
        expand(w, e + 1);
        for (size_t i = 0; i < w.sizes.size(); ++i) {
            if (w.rowmask[i] & rowbit) continue;
            const uint32_t saved = w.rows_ge2;
            w.sizes[i] += 1;
            w.rowmask[i] |= rowbit;
            if (w.sizes[i] == 2) {
                --w.singletons;
                w.rows_ge2 |= w.rowmask[i];
            } else {
                w.rows_ge2 |= rowbit;
            }
            ++w.covered;
            expand(w, e + 1);
            --w.covered;
            if (w.sizes[i] == 2) ++w.singletons;
            w.rows_ge2 = saved;
            w.rowmask[i] &= ~rowbit;
            w.sizes[i] -= 1;
        }
        w.sizes.push_back(1);
        w.rowmask.push_back(rowbit);
        ++w.singletons;
        ++w.covered;
        expand(w, e + 1);
        --w.covered;
        --w.singletons;
        w.rowmask.pop_back();
        w.sizes.pop_back();
    };
    Star2Walker seed;
    seed.dg = RowDiagram{m, ell};
    expand(seed, 1);

    std::vector<std::vector<BigInt>> partial(prefixes.size());
#pragma omp parallel for schedule(dynamic)
    for (long long p = 0; p < static_cast<long long>(prefixes.size()); ++p) {
        const Prefix& pre = prefixes[p];
        std::vector<BigInt> local(n + 1, 0);
        Star2Walker w;
        w.dg = RowDiagram{m, ell};
        w.sizes = pre.sizes;
        w.rowmask = pre.rowmask;
        w.singletons = pre.singletons;
        w.covered = pre.covered;
        w.rows_ge2 = pre.rows_ge2;
        w.counts_by_k = &local;
        w.descend(pre.next_element);
        partial[p] = std::move(local);
    }
    for (const auto& local : partial)
        for (int k = 0; k <= n; ++k) counts[k] += local[k];
    return counts;
}

std::vector<BigInt> count_star2_by_k_dp(int m, int ell, int cap) {
    if (m < 1 || ell < 1) throw std::invalid_argument("star2: need m >= 1 and ell >= 1");
    const int n = m * ell;
    if (n > cap) throw CapExceeded("count_star2: m*ell exceeds cap");

    // Row-by-row recursion over states (s1, s2, covered): s1 open blocks of
    // size 1, s2 blocks of size >= 2, covered elements so far. Processing a
    // row of m labelled elements, j1 of them extend distinct size-1 blocks,
    // j2 extend distinct size->=2 blocks, j3 open new blocks, the rest stay
    // uncovered; condition (iii) forces j1+j2+j3 >= 1. The multiplicity is
    // m!/(j1! j2! j3! u!) * (s1)_j1 * (s2)_j2.
    using Key = std::tuple<int, int, int>;
    std::map<Key, BigInt> dp;
    dp[{0, 0, 0}] = 1;
    const BigInt m_fact = factorial(m);
    for (int row = 0; row < ell; ++row) {
        std::map<Key, BigInt> next;
        for (const auto& [key, ways] : dp) {
            const auto [s1, s2, cov] = key;
            for (int j1 = 0; j1 <= std::min(m, s1); ++j1)
                for (int j2 = 0; j2 + j1 <= m && j2 <= s2; ++j2)
                    for (int j3 = 0; j1 + j2 + j3 <= m; ++j3) {
                        if (j1 + j2 + j3 == 0) continue;
                        const int u = m - j1 - j2 - j3;
                        BigInt mult = m_fact / (factorial(j1) * factorial(j2) * factorial(j3) *
                                                factorial(u));
                        for (int i = 0; i < j1; ++i) mult *= s1 - i;
                        for (int i = 0; i < j2; ++i) mult *= s2 - i;
                        const Key nk{s1 - j1 + j3, s2 + j1, cov + j1 + j2 + j3};
                        next[nk] += ways * mult;
                    }
        }
        dp.swap(next);
    }
    std::vector<BigInt> counts(n + 1, 0);
    for (const auto& [key, ways] : dp) {
        const auto [s1, s2, cov] = key;
        if (s1 != 0) continue;  // a leftover singleton violates (i)
        const int k = n + s2 - cov;
        counts[k] += ways;
    }
    return counts;
}

std::vector<BigInt> count_star2_by_k(int m, int ell) {
    if (m * ell <= 12) return count_star2_by_k_enum(m, ell, /*parallel=*/false);
    return count_star2_by_k_dp(m, ell);
}

BigInt count_star2(int m, int ell, int k) {
    const int n = m * ell;
    // empty outside m <= k <= floor(m*ell - ell/2)
    if (k < m || 2 * k > 2 * n - ell) return 0;
    return count_star2_by_k(m, ell).at(k);
}

std::vector<std::vector<int>> h_complete(const Subpartition& sp) {
    std::vector<char> seen(sp.diagram.size() + 1, 0);
    for (const auto& b : sp.blocks)
        for (int e : b) seen[e] = 1;
    std::vector<std::vector<int>> partition = sp.blocks;
    for (int e = 1; e <= sp.diagram.size(); ++e)
        if (!seen[e]) partition.push_back({e});
    std::sort(partition.begin(), partition.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return partition;
}

Subpartition h_inverse(const RowDiagram& diagram, const std::vector<std::vector<int>>& partition) {
    Subpartition sp;
    sp.diagram = diagram;
    for (const auto& b : partition)
        if (b.size() >= 2) sp.blocks.push_back(b);
    std::sort(sp.blocks.begin(), sp.blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return sp;
}

}  // namespace ustat
