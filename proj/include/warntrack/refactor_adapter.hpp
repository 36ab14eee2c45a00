// refactor_adapter.hpp - rewrites pre-commit warning metadata from refactoring records.
#pragma once

#include <warntrack/core_model.hpp>
#include <warntrack/ingest.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace warntrack {

/// A record that tried to set a field already set by an earlier record.
struct RecordConflict {
    std::string original_id;
    std::string field;
    std::size_t kept_record = 0;
    std::size_t dropped_record = 0;
    std::string kept_value;
    std::string dropped_value;

    friend bool operator==(const RecordConflict&, const RecordConflict&) = default;
};

struct RewriteResult {
    WarningInstance warning;
    std::vector<std::string> changed_fields;
    std::vector<RecordConflict> conflicts;
};

namespace detail {

/// Identifier part of a method signature: "void m1(int)" -> "m1".
inline std::string_view method_identifier(std::string_view sig)
{
    auto paren = sig.find('(');
    auto head = sig.substr(0, paren);
    while (!head.empty() && head.back() == ' ') head.remove_suffix(1);
    auto sp = head.rfind(' ');
    return sp == std::string_view::npos ? head : head.substr(sp + 1);
}

/// Renames the identifier inside `current` while keeping its shape, so a
/// warning that reports "m1" becomes "m2" and one that reports "m1()" picks
/// up the full "m2()" signature from the record.
inline std::string renamed_method(const std::string& current, const std::string& after)
{
    if (current.empty() || current.find('(') != std::string::npos || after.find('(') == std::string::npos)
        return after;
    return std::string(method_identifier(after));
}

inline bool class_matches(const std::string& warning_class, const std::string& record_class)
{
    if (warning_class.empty() || record_class.empty()) return false;
    return simple_class_name(warning_class) == simple_class_name(record_class);
}

inline std::string renamed_class(const std::string& current, const std::string& after)
{
    return current.find('.') == std::string::npos ? simple_class_name(after) : after;
}

inline bool range_within(const WarningInstance& w, const CodeElementRef& e)
{
    return e.has_range() && w.start_line >= e.start_line && w.end_line <= e.end_line;
}

}  // namespace detail

/// Applies every record whose before-element encloses `w`, in record order.
/// Enclosure is always tested against the original warning; when two records
/// set the same field to different values the first one wins and the clash is
/// reported in `conflicts`.
inline RewriteResult rewrite_warning(const WarningInstance& w,
                                     std::span<const RefactoringRecord> records)
{
    struct Proposal {
        std::optional<std::string> class_name, method_name, file_path;
        std::optional<int> shift;
        std::size_t class_src = 0, method_src = 0, file_src = 0, shift_src = 0;
    } p;
    RewriteResult r{w, {}, {}};
    std::string id;  // computed on first conflict

    auto propose = [&](std::optional<std::string>& slot, std::size_t& src, const char* field,
                       std::string value, std::size_t rec) {
        if (!slot) {
            slot = std::move(value);
            src = rec;
        } else if (*slot != value) {
            if (id.empty()) id = warning_id(w);
            r.conflicts.push_back({id, field, src, rec, *slot, value});
        }
    };

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        const auto& b = rec.before;
        const auto& a = rec.after;
        bool same_file = b.file_path == w.file_path;
        bool inside = same_file && detail::range_within(w, b);
        bool applies = false;

        switch (rec.kind) {
        case RefactoringKind::RenameMethod: {
            bool by_name = !w.method_name.empty() && !b.method_name.empty() &&
                           detail::method_identifier(w.method_name) ==
                               detail::method_identifier(b.method_name);
            applies = same_file && (by_name || inside);
            if (applies && !a.method_name.empty())
                propose(p.method_name, p.method_src, "method_name",
                        detail::renamed_method(w.method_name, a.method_name), i);
            break;
        }
        case RefactoringKind::RenameClass:
        case RefactoringKind::MoveClass:
            applies = same_file && detail::class_matches(w.class_name, b.class_name);
            if (applies) {
                if (!a.class_name.empty())
                    propose(p.class_name, p.class_src, "class_name",
                            detail::renamed_class(w.class_name, a.class_name), i);
                if (!a.file_path.empty())
                    propose(p.file_path, p.file_src, "file_path", a.file_path, i);
            }
            break;
        case RefactoringKind::MoveRenameFile:
            applies = same_file;
            if (applies) propose(p.file_path, p.file_src, "file_path", a.file_path, i);
            break;
        case RefactoringKind::ExtractMethod:
            applies = inside;
            if (applies) {
                if (!a.method_name.empty())
                    propose(p.method_name, p.method_src, "method_name",
                            detail::renamed_method(w.method_name, a.method_name), i);
                propose(p.file_path, p.file_src, "file_path", a.file_path, i);
            }
            break;
        case RefactoringKind::Other:
            break;
        }

        if (applies && inside && a.has_range()) {
            int shift = a.start_line - b.start_line;
            if (!p.shift) {
                p.shift = shift;
                p.shift_src = i;
            } else if (*p.shift != shift) {
                if (id.empty()) id = warning_id(w);
                r.conflicts.push_back({id, "lines", p.shift_src, i, std::to_string(*p.shift),
                                       std::to_string(shift)});
            }
        }
    }

    auto& out = r.warning;
    if (p.class_name && *p.class_name != out.class_name) {
        out.class_name = *p.class_name;
        r.changed_fields.emplace_back("class_name");
    }
    if (p.method_name && *p.method_name != out.method_name) {
        out.method_name = *p.method_name;
        r.changed_fields.emplace_back("method_name");
    }
    if (p.file_path && *p.file_path != out.file_path) {
        out.file_path = *p.file_path;
        r.changed_fields.emplace_back("file_path");
    }
    if (p.shift && *p.shift != 0 && out.start_line + *p.shift >= 1) {
        out.start_line += *p.shift;
        out.end_line += *p.shift;
        r.changed_fields.emplace_back("start_line");
        r.changed_fields.emplace_back("end_line");
    }
    return r;
}

struct RewriteSetResult {
    std::vector<WarningInstance> warnings;  // same order as the input
    std::vector<RewriteLogEntry> log;
    std::vector<RecordConflict> conflicts;
};

inline RewriteSetResult rewrite_set(std::span<const WarningInstance> pre,
                                    std::span<const RefactoringRecord> records)
{
    RewriteSetResult out;
    out.warnings.reserve(pre.size());
    for (const auto& w : pre) {
        auto r = rewrite_warning(w, records);
        if (!r.changed_fields.empty()) out.log.push_back({warning_id(w), r.changed_fields});
        out.conflicts.insert(out.conflicts.end(), r.conflicts.begin(), r.conflicts.end());
        out.warnings.push_back(std::move(r.warning));
    }
    return out;
}

inline RewriteSetResult rewrite_set(const WarningSet& pre, std::span<const RefactoringRecord> records)
{
    return rewrite_set(std::span<const WarningInstance>(pre.warnings()), records);
}

}  // namespace warntrack
