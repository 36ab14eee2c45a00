#include "fixtures.hpp"

#include <warntrack/corpus.hpp>
#include <warntrack/tracker.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace warntrack;

TEST(GenerateCorpus, ScenarioCountsFollowMix)
{
    ScenarioMix mix{{Scenario::MethodRename, 3}, {Scenario::GreedyTrap, 2}, {Scenario::LineShift, 1}};
    auto c = generate_corpus(5, mix);
    ASSERT_EQ(c.pairs.size(), 6u);
    std::map<Scenario, int> seen;
    for (const auto& p : c.pairs) ++seen[p.scenario];
    EXPECT_EQ(seen, (std::map<Scenario, int>{{Scenario::MethodRename, 3}, {Scenario::GreedyTrap, 2},
                                             {Scenario::LineShift, 1}}));
    EXPECT_EQ(generate_corpus(5).pairs.size(), 50u);
}

TEST(GenerateCorpus, RenamePairsCarryOneRenameRecord)
{
    auto c = generate_corpus(42, {{Scenario::MethodRename, 8}});
    for (const auto& p : c.pairs) {
        ASSERT_EQ(p.records.size(), 1u) << p.name;
        EXPECT_EQ(p.records[0].kind, RefactoringKind::RenameMethod);
        EXPECT_FALSE(p.refactoring_affected.empty());
    }
}

TEST(GenerateCorpus, LabelsCoverEveryWarningOnce)
{
    for (const auto& p : generate_corpus(9).pairs) {
        std::set<std::string> ids;
        for (const auto& w : p.pre) ids.insert(warning_id(w));
        for (const auto& w : p.post) ids.insert(warning_id(w));
        std::set<std::string> labeled;
        for (const auto& l : p.labels) EXPECT_TRUE(labeled.insert(l.warning_id).second);
        EXPECT_EQ(labeled, ids) << p.name;
    }
}

TEST(GenerateCorpus, SameSeedSameBytes)
{
    fixtures::TempDir a("corpus_a"), b("corpus_b");
    write_corpus(generate_corpus(42), a.path());
    write_corpus(generate_corpus(42), b.path());
    std::size_t files = 0;
    for (const auto& e : std::filesystem::recursive_directory_iterator(a.path())) {
        if (!e.is_regular_file()) continue;
        ++files;
        auto rel = std::filesystem::relative(e.path(), a.path());
        EXPECT_EQ(read_file(e.path()), read_file(b.path() / rel)) << rel;
    }
    EXPECT_GT(files, 50u * 6u);
    EXPECT_NE(read_file(a / "manifest.json"), "");
}

TEST(GenerateCorpus, DifferentSeedsDiffer)
{
    auto a = generate_corpus(1, {{Scenario::LineShift, 2}});
    auto b = generate_corpus(2, {{Scenario::LineShift, 2}});
    EXPECT_NE(a.pairs[0].pre_files, b.pairs[0].pre_files);
}

TEST(GenerateCorpus, WrittenWarningsParseBack)
{
    fixtures::TempDir dir("corpus_rt");
    auto c = generate_corpus(3, {{Scenario::FileMove, 2}});
    write_corpus(c, dir.path());
    for (const auto& p : c.pairs) {
        EXPECT_EQ(parse_generic_warnings(read_file(dir / (p.name + "/pre_warnings.json")), Side::Pre), p.pre);
        EXPECT_EQ(parse_refactorings(read_file(dir / (p.name + "/refactorings.json"))), p.records);
        EXPECT_EQ(parse_labels(read_file(dir / (p.name + "/labels.csv"))), p.labels);
        for (const auto& w : p.pre) EXPECT_TRUE(std::filesystem::exists(dir / (p.name + "/pre/" + w.file_path)));
    }
}

TEST(GenerateCorpus, EveryPairConservesUnderBothPipelines)
{
    for (const auto& p : generate_corpus(11).pairs) {
        auto a = SourceTree::from_files(p.pre_files);
        auto b = SourceTree::from_files(p.post_files);
        EXPECT_EQ(check_conservation(track_soa(p.pre, p.post, a, b), p.pre, p.post), "") << p.name;
        EXPECT_EQ(check_conservation(track_improved(p.pre, p.post, a, b, p.records), p.pre, p.post), "") << p.name;
    }
}

TEST(ParseScenario, KnownAndUnknownNames)
{
    for (auto s : kAllScenarios) EXPECT_EQ(parse_scenario(to_string(s)), s);
    EXPECT_THROW(parse_scenario("chaos"), SchemaViolation);
}
