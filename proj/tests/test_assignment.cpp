#include "oracles.hpp"

#include <warntrack/assignment.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace warntrack;

namespace {

std::vector<std::string> ids(const std::string& prefix, std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

ScoreMatrix dense(const std::vector<std::vector<double>>& m, Strategy tag = Strategy::Location)
{
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    ScoreMatrix out(ids("p", rows), ids("q", cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.set(r, c, m[r][c], tag);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> cells(const std::vector<Assignment>& as)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& a : as) out.emplace_back(a.row, a.col);
    return out;
}

}  // namespace

TEST(BuildMatrix, EmptySingleAndMaxRule)
{
    auto empty = build_matrix({}, ids("p", 2), ids("q", 2));
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            EXPECT_EQ(empty.score(r, c), 0.0);
            EXPECT_FALSE(empty.strategy(r, c).has_value());
        }

    std::vector<CandidatePair> one{{"p0", "q1", Strategy::Snippet, 0.9}};
    auto m1 = build_matrix(one, ids("p", 2), ids("q", 2));
    EXPECT_EQ(m1.score(0, 1), 0.9);
    EXPECT_EQ(m1.score(0, 0) + m1.score(1, 0) + m1.score(1, 1), 0.0);

    std::vector<CandidatePair> two{{"p0", "q0", Strategy::Location, 0.6}, {"p0", "q0", Strategy::Snippet, 0.9},
                                   {"p0", "q0", Strategy::Location, 0.7}};
    auto m2 = build_matrix(two, ids("p", 1), ids("q", 1));
    EXPECT_EQ(m2.score(0, 0), 0.9);
    EXPECT_EQ(m2.strategy(0, 0), Strategy::Snippet);
}

TEST(BuildMatrix, Errors)
{
    std::vector<CandidatePair> bad_id{{"zz", "q0", Strategy::Location, 0.6}};
    EXPECT_THROW(build_matrix(bad_id, ids("p", 1), ids("q", 1)), UnknownId);
    std::vector<CandidatePair> bad_col{{"p0", "zz", Strategy::Location, 0.6}};
    EXPECT_THROW(build_matrix(bad_col, ids("p", 1), ids("q", 1)), UnknownId);
    std::vector<CandidatePair> bad_score{{"p0", "q0", Strategy::Location, 1.5}};
    EXPECT_THROW(build_matrix(bad_score, ids("p", 1), ids("q", 1)), SchemaViolation);
}

TEST(SolveAssignment, DiagonalMatrix)
{
    auto as = solve_assignment(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(cells(as), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}, {2, 2}}));
    EXPECT_EQ(as[1].pre_id, "p1");
    EXPECT_EQ(as[1].post_id, "q1");
}

TEST(SolveAssignment, GreedyTrapTwoByTwo)
{
    auto as = solve_assignment(dense({{0.9, 0.85}, {0.8, 0.0}}));
    EXPECT_EQ(cells(as), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}}));
    EXPECT_NEAR(total_score(as), 1.65, 1e-12);
}

TEST(SolveAssignment, MinScoreDropsWeakCells)
{
    auto as = solve_assignment(dense({{0.4, 0.0}, {0.0, 0.6}}), 0.5);
    EXPECT_EQ(cells(as), (std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}}));
    // A weak cell must not steal a row that a strong cell elsewhere needs.
    auto bs = solve_assignment(dense({{0.45, 0.6}, {0.9, 0.45}}), 0.5);
    EXPECT_EQ(cells(bs), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}}));
}

TEST(SolveAssignment, UntaggedCellsAreNeverReported)
{
    ScoreMatrix m(ids("p", 2), ids("q", 2));
    m.set(0, 0, 0.9, Strategy::Snippet);
    auto as = solve_assignment(m, 0.0);
    EXPECT_EQ(cells(as), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}}));
    EXPECT_EQ(as[0].strategy, Strategy::Snippet);
}

TEST(SolveAssignment, RectangularBothWays)
{
    auto wide = solve_assignment(dense({{0.6, 0.9, 0.7}}));
    EXPECT_EQ(cells(wide), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
    auto tall = solve_assignment(dense({{0.6}, {0.9}, {0.7}}));
    EXPECT_EQ(cells(tall), (std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}}));
    EXPECT_TRUE(solve_assignment(ScoreMatrix(ids("p", 0), ids("q", 3))).empty());
}

TEST(SolveAssignment, TiesResolveLexicographically)
{
    auto as = solve_assignment(dense({{1, 1}, {1, 1}}));
    EXPECT_EQ(cells(as), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));
    auto bs = solve_assignment(dense({{0.5, 0.7, 0.7}, {0.7, 0.5, 0.7}}));
    EXPECT_NEAR(total_score(bs), 1.4, 1e-12);
    EXPECT_EQ(cells(bs), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}}));
}

TEST(SolveAssignment, MatchesBruteForceOnRandomMatrices)
{
    std::mt19937_64 rng(99);
    for (int round = 0; round < 300; ++round) {
        auto rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
        for (auto& row : m)
            for (auto& v : row) v = static_cast<double>(rng() % 11) / 10.0;
        double min_score = (rng() % 2) ? 0.0 : 0.5;
        auto as = solve_assignment(dense(m), min_score);
        EXPECT_NEAR(total_score(as), oracles::brute_force_assignment(m, min_score), 1e-9);
        std::vector<int> row_used(rows, 0), col_used(cols, 0);
        for (const auto& a : as) {
            EXPECT_EQ(row_used[a.row]++, 0);
            EXPECT_EQ(col_used[a.col]++, 0);
            EXPECT_GE(a.score, min_score);
        }
    }
}

TEST(SolveAssignment, InvariantUnderPositiveScaling)
{
    std::mt19937_64 rng(3);
    for (int round = 0; round < 100; ++round) {
        auto n = 1 + rng() % 5;
        std::vector<std::vector<double>> m(n, std::vector<double>(n)), half(n, std::vector<double>(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                m[r][c] = static_cast<double>(rng() % 11) / 10.0;
                half[r][c] = m[r][c] / 2.0;
            }
        EXPECT_EQ(cells(solve_assignment(dense(m), 0.0)), cells(solve_assignment(dense(half), 0.0)));
    }
}

TEST(SolveAssignment, Deterministic)
{
    auto m = dense({{0.7, 0.7, 0.6}, {0.7, 0.7, 0.6}, {0.6, 0.6, 0.6}});
    EXPECT_EQ(solve_assignment(m), solve_assignment(m));
}
