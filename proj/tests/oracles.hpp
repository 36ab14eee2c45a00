// Brute-force reference implementations used by unit and acceptance tests.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracles {

/// Maximum total over all partial one-to-one assignments of a rows x cols
/// matrix, counting only cells >= min_score. Permutes the larger side.
inline double brute_force_assignment(const std::vector<std::vector<double>>& m, double min_score)
{
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::size_t n = std::max(rows, cols);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0.0;
    do {
        double total = 0.0;
        for (std::size_t r = 0; r < rows; ++r)
            if (perm[r] < cols && m[r][perm[r]] >= min_score) total += m[r][perm[r]];
        best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// LCS length by enumerating every subsequence of `a` (|a| <= ~16).
inline int exhaustive_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    int best = 0;
    const auto n = a.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int count = std::popcount(mask);
        if (count <= best) continue;
        std::size_t j = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            while (j < b.size() && b[j] != a[i]) ++j;
            if (j == b.size()) ok = false;
            else ++j;
        }
        if (ok) best = count;
    }
    return best;
}

/// Quadratic dynamic-programming LCS, for inputs too long to enumerate.
inline int dp_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

struct RandomEdit {
    std::vector<std::string> pre;
    std::vector<std::string> post;
    /// kept[i] = 1-based post index of pre line i+1, or 0 when it was removed.
    std::vector<int> kept;
};

/// Unique-line file of up to `max_lines` lines, then random deletions,
/// replacements and insertions of fresh lines.
inline RandomEdit random_edit(std::mt19937_64& rng, int max_lines)
{
    RandomEdit e;
    int n = static_cast<int>(rng() % static_cast<std::uint64_t>(max_lines + 1));
    for (int i = 0; i < n; ++i) e.pre.push_back("line " + std::to_string(i));
    e.kept.assign(static_cast<std::size_t>(n), 0);
    int fresh = 0;
    auto add_fresh = [&] {
        int k = static_cast<int>(rng() % 3);
        for (int t = 0; t < k; ++t) e.post.push_back("new " + std::to_string(fresh++));
    };
    add_fresh();
    for (int i = 0; i < n; ++i) {
        auto roll = rng() % 10;
        if (roll < 6) {
            e.post.push_back(e.pre[static_cast<std::size_t>(i)]);
            e.kept[static_cast<std::size_t>(i)] = static_cast<int>(e.post.size());
        } else if (roll < 8) {
            e.post.push_back("new " + std::to_string(fresh++));
        }
        if (rng() % 5 == 0) add_fresh();
    }
    return e;
}

}  // namespace oracles
