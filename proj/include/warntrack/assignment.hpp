// assignment.hpp - score matrix and maximum-weight one-to-one assignment.
#pragma once

#include <warntrack/core_model.hpp>
#include <warntrack/strategies.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace warntrack {

/// Rows are pre warnings, columns post warnings; each cell keeps the best
/// candidate score and its strategy (no strategy: nobody proposed the pair).
class ScoreMatrix {
public:
    ScoreMatrix() = default;
    ScoreMatrix(std::vector<std::string> row_ids, std::vector<std::string> col_ids)
        : rows_(std::move(row_ids)), cols_(std::move(col_ids)),
          scores_(rows_.size() * cols_.size(), 0.0), tags_(rows_.size() * cols_.size())
    {
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_.size(); }
    const std::vector<std::string>& row_ids() const { return rows_; }
    const std::vector<std::string>& col_ids() const { return cols_; }

    double score(std::size_t r, std::size_t c) const { return scores_[r * cols_.size() + c]; }
    const std::optional<Strategy>& strategy(std::size_t r, std::size_t c) const
    {
        return tags_[r * cols_.size() + c];
    }

    void set(std::size_t r, std::size_t c, double score, std::optional<Strategy> tag)
    {
        scores_[r * cols_.size() + c] = score;
        tags_[r * cols_.size() + c] = tag;
    }

private:
    std::vector<std::string> rows_;
    std::vector<std::string> cols_;
    std::vector<double> scores_;
    std::vector<std::optional<Strategy>> tags_;
};

/// Cell = max score over candidates for that pair. Row/column order follows
/// the id lists (callers pass canonical warning order).
inline ScoreMatrix build_matrix(std::span<const CandidatePair> candidates,
                                std::vector<std::string> pre_ids, std::vector<std::string> post_ids)
{
    std::map<std::string, std::size_t> row_of, col_of;
    for (std::size_t i = 0; i < pre_ids.size(); ++i) row_of.emplace(pre_ids[i], i);
    for (std::size_t j = 0; j < post_ids.size(); ++j) col_of.emplace(post_ids[j], j);
    ScoreMatrix m(std::move(pre_ids), std::move(post_ids));
    for (const auto& c : candidates) {
        auto r = row_of.find(c.pre_id);
        if (r == row_of.end()) throw UnknownId("candidate references unknown pre id " + c.pre_id);
        auto k = col_of.find(c.post_id);
        if (k == col_of.end()) throw UnknownId("candidate references unknown post id " + c.post_id);
        if (c.score < 0.0 || c.score > 1.0)
            throw SchemaViolation("candidate score out of [0,1]: " + std::to_string(c.score));
        if (!m.strategy(r->second, k->second) || c.score > m.score(r->second, k->second))
            m.set(r->second, k->second, c.score, c.strategy);
    }
    return m;
}

struct Assignment {
    std::size_t row = 0;
    std::size_t col = 0;
    std::string pre_id;
    std::string post_id;
    double score = 0.0;
    Strategy strategy = Strategy::Location;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Scores compare at this resolution; equal-total optima are decided by the
/// lexicographic tie-break.
inline constexpr double kScoreQuantum = 1e-9;

namespace detail {

/// Square min-cost assignment (Kuhn-Munkres with potentials). Returns the
/// column of each row and leaves duals with u[i] + v[j] <= cost[i][j],
/// equality on every edge of any optimal assignment.
struct HungarianResult {
    std::vector<int> col_of_row;
    std::vector<std::int64_t> u, v;  // 1-based, index 0 unused
};

inline HungarianResult hungarian_min(const std::vector<std::int64_t>& cost, int n)
{
    constexpr auto inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    auto at = [&](int i, int j) { return cost[static_cast<std::size_t>((i - 1) * n + (j - 1))]; };

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0];
            int j1 = 0;
            std::int64_t delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                auto cur = at(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    HungarianResult r;
    r.col_of_row.assign(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] != 0) r.col_of_row[static_cast<std::size_t>(p[j] - 1)] = j - 1;
    r.u = std::move(u);
    r.v = std::move(v);
    return r;
}

/// Among all perfect matchings on tight edges (= all optimal assignments),
/// moves to the lexicographically smallest column sequence, row by row.
inline void lexicographic_refine(const std::vector<std::int64_t>& cost, int n, HungarianResult& h)
{
    auto tight = [&](int i, int j) {
        return cost[static_cast<std::size_t>(i * n + j)] == h.u[i + 1] + h.v[j + 1];
    };
    auto& col = h.col_of_row;
    std::vector<int> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(col[i])] = i;

    std::vector<int> next_col(static_cast<std::size_t>(n));
    std::vector<char> good(static_cast<std::size_t>(n));
    std::vector<int> queue;
    for (int i = 0; i < n; ++i) {
        const int c0 = col[i];
        // Rows below i that can hand their column on, ending with one taking c0.
        std::fill(good.begin(), good.end(), 0);
        queue.clear();
        for (int r = i + 1; r < n; ++r)
            if (tight(r, c0)) {
                good[r] = 1;
                next_col[r] = c0;
                queue.push_back(r);
            }
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int freed = col[queue[q]];
            for (int r = i + 1; r < n; ++r)
                if (!good[r] && tight(r, freed)) {
                    good[r] = 1;
                    next_col[r] = freed;
                    queue.push_back(r);
                }
        }
        for (int j = 0; j < c0; ++j) {
            int owner = row[j];
            if (owner <= i || !good[owner] || !tight(i, j)) continue;
            // Rotate: i takes j, owner moves along its chain until c0 is taken.
            std::vector<std::pair<int, int>> moves{{i, j}};
            for (int r = owner;;) {
                int c = next_col[r];
                moves.emplace_back(r, c);
                if (c == c0) break;
                r = row[c];
            }
            for (auto [r, c] : moves) {
                col[r] = c;
                row[c] = r;
            }
            break;
        }
    }
}

}  // namespace detail

/// Maximum-total one-to-one assignment over the cells scoring at least
/// `min_score`. Rectangular matrices are padded with zero rows/columns;
/// padded pairs and pairs nobody proposed are never reported. Among equal-total optima the assignment
/// with the lexicographically smallest (row, column) sequence wins.
inline std::vector<Assignment> solve_assignment(const ScoreMatrix& m, double min_score = 0.5)
{
    const int n = static_cast<int>(std::max(m.rows(), m.cols()));
    std::vector<Assignment> out;
    if (n == 0) return out;

    constexpr std::int64_t scale = 1'000'000'000;
    std::vector<std::int64_t> cost(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), scale);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.strategy(r, c) && m.score(r, c) >= min_score)
                cost[r * static_cast<std::size_t>(n) + c] =
                    scale - std::llround(m.score(r, c) / kScoreQuantum);

    auto h = detail::hungarian_min(cost, n);
    detail::lexicographic_refine(cost, n, h);

    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto c = static_cast<std::size_t>(h.col_of_row[r]);
        if (c >= m.cols()) continue;
        const auto& tag = m.strategy(r, c);
        double s = m.score(r, c);
        if (!tag || s < min_score) continue;
        out.push_back({r, c, m.row_ids()[r], m.col_ids()[c], s, *tag});
    }
    return out;
}

inline double total_score(std::span<const Assignment> as)
{
    double t = 0.0;
    for (const auto& a : as) t += a.score;
    return t;
}

}  // namespace warntrack
