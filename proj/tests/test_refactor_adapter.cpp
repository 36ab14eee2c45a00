#include "fixtures.hpp"

#include <warntrack/refactor_adapter.hpp>

#include <gtest/gtest.h>

using namespace warntrack;
using fixtures::warn;

namespace {

RefactoringRecord record(RefactoringKind kind, CodeElementRef before, CodeElementRef after)
{
    return {kind, std::string(to_string(kind)), std::move(before), std::move(after)};
}

CodeElementRef element(std::string file, std::string cls, std::string method, int start = 0, int end = 0)
{
    return {std::move(file), std::move(cls), std::move(method), "", start, end};
}

}  // namespace

TEST(RewriteWarning, MethodRenameUpdatesMethodName)
{
    auto w = warn("T", "a/B.java", 12, 14, Side::Pre, "B", "m1()");
    std::vector<RefactoringRecord> rs{record(RefactoringKind::RenameMethod, element("a/B.java", "B", "m1()", 10, 20),
                                             element("a/B.java", "B", "m2()", 10, 20))};
    auto r = rewrite_warning(w, rs);
    EXPECT_EQ(r.warning.method_name, "m2()");
    EXPECT_EQ(r.changed_fields, (std::vector<std::string>{"method_name"}));
    EXPECT_TRUE(r.conflicts.empty());
}

TEST(RewriteWarning, MethodRenameByRangeAndIdentifierShape)
{
    // Bare identifier in the warning, full signature in the record.
    auto w = warn("T", "a/B.java", 12, 14, Side::Pre, "B", "m1");
    std::vector<RefactoringRecord> rs{record(RefactoringKind::RenameMethod, element("a/B.java", "B", "m1(int)", 10, 20),
                                             element("a/B.java", "B", "m2(int)", 30, 40))};
    auto r = rewrite_warning(w, rs);
    EXPECT_EQ(r.warning.method_name, "m2");
    EXPECT_EQ(r.warning.start_line, 32);
    EXPECT_EQ(r.warning.end_line, 34);

    // Statement-level warning without a method name, enclosed by the range.
    auto s = warn("T", "a/B.java", 15, 15, Side::Pre, "B", "");
    EXPECT_EQ(rewrite_warning(s, rs).warning.method_name, "m2(int)");

    // Different file: untouched.
    auto other = warn("T", "a/C.java", 12, 14, Side::Pre, "C", "m1");
    EXPECT_TRUE(rewrite_warning(other, rs).changed_fields.empty());
}

TEST(RewriteWarning, EmptyRecordsLeaveWarningUnchanged)
{
    auto w = fixtures::sample_warning();
    auto r = rewrite_warning(w, {});
    EXPECT_EQ(r.warning, w);
    EXPECT_TRUE(r.changed_fields.empty());
}

TEST(RewriteWarning, FileMoveShiftsRange)
{
    auto w = warn("T", "a/B.java", 30, 35, Side::Pre, "B");
    std::vector<RefactoringRecord> rs{record(RefactoringKind::MoveRenameFile, element("a/B.java", "B", "", 10, 60),
                                             element("b/B.java", "B", "", 22, 72))};
    auto r = rewrite_warning(w, rs);
    EXPECT_EQ(r.warning.file_path, "b/B.java");
    EXPECT_EQ(r.warning.start_line, 42);
    EXPECT_EQ(r.warning.end_line, 47);
    EXPECT_EQ(r.changed_fields, (std::vector<std::string>{"file_path", "start_line", "end_line"}));
}

TEST(RewriteWarning, ClassRenameAndMove)
{
    auto w = warn("T", "a/B.java", 5, 6, Side::Pre, "B");
    std::vector<RefactoringRecord> rs{
        record(RefactoringKind::MoveClass, element("a/B.java", "a.B", ""), element("b/K.java", "b.K", ""))};
    auto r = rewrite_warning(w, rs);
    EXPECT_EQ(r.warning.class_name, "K");
    EXPECT_EQ(r.warning.file_path, "b/K.java");
    EXPECT_EQ(r.warning.start_line, 5);

    auto other = warn("T", "a/B.java", 5, 6, Side::Pre, "Inner");
    EXPECT_TRUE(rewrite_warning(other, rs).changed_fields.empty());
}

TEST(RewriteWarning, ExtractMethodOnlyForEnclosedRange)
{
    std::vector<RefactoringRecord> rs{record(RefactoringKind::ExtractMethod, element("a/B.java", "B", "big()", 20, 25),
                                             element("a/B.java", "B", "helper()", 50, 55))};
    auto inside = rewrite_warning(warn("T", "a/B.java", 21, 22, Side::Pre, "B", "big()"), rs);
    EXPECT_EQ(inside.warning.method_name, "helper()");
    EXPECT_EQ(inside.warning.start_line, 51);
    auto outside = rewrite_warning(warn("T", "a/B.java", 18, 22, Side::Pre, "B", "big()"), rs);
    EXPECT_TRUE(outside.changed_fields.empty());
}

TEST(RewriteWarning, OtherKindIsIgnored)
{
    auto w = warn("T", "a/B.java", 5, 6, Side::Pre, "B", "m()");
    std::vector<RefactoringRecord> rs{
        record(RefactoringKind::Other, element("a/B.java", "B", "m()", 1, 10), element("a/B.java", "B", "n()", 1, 10))};
    EXPECT_TRUE(rewrite_warning(w, rs).changed_fields.empty());
}

TEST(RewriteWarning, ConflictingRecordsFirstWins)
{
    auto w = warn("T", "a/B.java", 5, 6, Side::Pre, "B", "m()");
    std::vector<RefactoringRecord> rs{
        record(RefactoringKind::RenameMethod, element("a/B.java", "B", "m()"), element("a/B.java", "B", "x()")),
        record(RefactoringKind::RenameMethod, element("a/B.java", "B", "m()"), element("a/B.java", "B", "y()"))};
    auto r = rewrite_warning(w, rs);
    EXPECT_EQ(r.warning.method_name, "x()");
    ASSERT_EQ(r.conflicts.size(), 1u);
    EXPECT_EQ(r.conflicts[0].field, "method_name");
    EXPECT_EQ(r.conflicts[0].kept_record, 0u);
    EXPECT_EQ(r.conflicts[0].dropped_record, 1u);
    EXPECT_EQ(r.conflicts[0].dropped_value, "y()");
    EXPECT_EQ(r.conflicts[0].original_id, warning_id(w));
}

TEST(RewriteSet, CountsAndIdentity)
{
    std::vector<WarningInstance> ws;
    for (int i = 0; i < 10; ++i)
        ws.push_back(warn("T", "a/B.java", 10 * i + 1, 10 * i + 2, Side::Pre, "B", i < 3 ? "m1()" : "k" + std::to_string(i) + "()"));
    WarningSet set(Side::Pre, ws);

    auto none = rewrite_set(set, {});
    EXPECT_EQ(none.warnings, set.warnings());
    EXPECT_TRUE(none.log.empty());

    std::vector<RefactoringRecord> rename{
        record(RefactoringKind::RenameMethod, element("a/B.java", "B", "m1()"), element("a/B.java", "B", "m2()"))};
    auto r = rewrite_set(set, rename);
    EXPECT_EQ(r.log.size(), 3u);
    for (const auto& e : r.log) EXPECT_EQ(e.changed_fields, (std::vector<std::string>{"method_name"}));

    std::vector<RefactoringRecord> other{
        record(RefactoringKind::Other, element("a/B.java", "B", "m1()"), element("a/B.java", "B", "m2()"))};
    EXPECT_TRUE(rewrite_set(set, other).log.empty());
}
