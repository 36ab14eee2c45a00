// core_model.hpp - warning representation, commit context and report types.
#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace warntrack {

// Error hierarchy. Every failure the library signals derives from Error so
// callers (the CLI in particular) can map it to an input-error exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedReport : public Error { using Error::Error; };
class MissingAttribute : public Error { using Error::Error; };
class SchemaViolation : public Error { using Error::Error; };
class FileMissing : public Error { using Error::Error; };
class UnknownId : public Error { using Error::Error; };
class DuplicateMatch : public Error { using Error::Error; };
class UnknownWarningId : public Error { using Error::Error; };
class IdCollision : public Error { using Error::Error; };

enum class Side { Pre, Post };

inline std::string_view to_string(Side s) { return s == Side::Pre ? "PRE" : "POST"; }

enum class EvolutionStatus { Persistent, Resolved, NewlyIntroduced };

inline std::string_view to_string(EvolutionStatus s)
{
    switch (s) {
    case EvolutionStatus::Persistent: return "persistent";
    case EvolutionStatus::Resolved: return "resolved";
    case EvolutionStatus::NewlyIntroduced: return "newly_introduced";
    }
    return "persistent";
}

inline EvolutionStatus parse_status(std::string_view s)
{
    if (s == "persistent") return EvolutionStatus::Persistent;
    if (s == "resolved") return EvolutionStatus::Resolved;
    if (s == "newly_introduced") return EvolutionStatus::NewlyIntroduced;
    throw SchemaViolation("unknown evolution status '" + std::string(s) + "'");
}

enum class Strategy { Exact, Location, Snippet, Hash, RefactorExact, Hungarian };

inline std::string_view to_string(Strategy s)
{
    switch (s) {
    case Strategy::Exact: return "EXACT";
    case Strategy::Location: return "LOCATION";
    case Strategy::Snippet: return "SNIPPET";
    case Strategy::Hash: return "HASH";
    case Strategy::RefactorExact: return "REFACTOR_EXACT";
    case Strategy::Hungarian: return "HUNGARIAN";
    }
    return "EXACT";
}

inline Strategy parse_strategy(std::string_view s)
{
    for (auto st : {Strategy::Exact, Strategy::Location, Strategy::Snippet, Strategy::Hash,
                    Strategy::RefactorExact, Strategy::Hungarian})
        if (to_string(st) == s) return st;
    throw SchemaViolation("unknown strategy '" + std::string(s) + "'");
}

enum class Approach { Soa, Improved };

inline std::string_view to_string(Approach a) { return a == Approach::Soa ? "SOA" : "IMPROVED"; }

/// Normalizes a report path: '\' becomes '/', leading "./" segments are
/// dropped and repeated separators collapse.
inline std::string canonicalize_path(std::string_view raw)
{
    std::string p(raw);
    std::replace(p.begin(), p.end(), '\\', '/');
    std::string out;
    out.reserve(p.size());
    for (char c : p) {
        if (c == '/' && !out.empty() && out.back() == '/') continue;
        out.push_back(c);
    }
    while (out.size() >= 2 && out[0] == '.' && out[1] == '/') out.erase(0, 2);
    return out;
}

/// One static-analysis warning. The commit it belongs to lives on CommitPair.
struct WarningInstance {
    std::string warning_type;
    std::string project;
    std::string class_name;
    std::string method_name;
    std::string field_name;
    std::string file_path;
    int start_line = 1;
    int end_line = 1;
    Side side = Side::Pre;
    int ordinal = 0;

    friend bool operator==(const WarningInstance&, const WarningInstance&) = default;
};

/// Throws SchemaViolation when `w` breaks a field invariant.
inline void validate(const WarningInstance& w)
{
    if (w.start_line < 1 || w.end_line < 1)
        throw SchemaViolation("line numbers must be >= 1 (" + w.file_path + ")");
    if (w.start_line > w.end_line)
        throw SchemaViolation("start_line " + std::to_string(w.start_line) + " > end_line " +
                              std::to_string(w.end_line) + " (" + w.file_path + ")");
    if (w.file_path.empty()) throw SchemaViolation("empty file_path");
    if (w.file_path.find('\\') != std::string::npos)
        throw SchemaViolation("non-canonical file_path '" + w.file_path + "'");
    if (w.ordinal < 0) throw SchemaViolation("negative ordinal");
}

namespace detail {

constexpr std::uint64_t fnv_offset = 14695981039346656037ull;
constexpr std::uint64_t fnv_prime = 1099511628211ull;

constexpr std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = fnv_offset)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= fnv_prime;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace detail

/// The canonical string hashed by warning_id.
inline std::string canonical_string(const WarningInstance& w)
{
    std::string s;
    s += to_string(w.side);
    for (const std::string* f : {&w.warning_type, &w.file_path}) {
        s += '|';
        s += *f;
    }
    s += '|' + std::to_string(w.start_line) + '|' + std::to_string(w.end_line);
    for (const std::string* f : {&w.class_name, &w.method_name, &w.field_name}) {
        s += '|';
        s += *f;
    }
    s += '|' + std::to_string(w.ordinal);
    return s;
}

/// Stable identifier: 16 lowercase hex digits of the 64-bit FNV-1a digest of
/// "side|warning_type|file_path|start_line|end_line|class|method|field|ordinal".
inline std::string warning_id(const WarningInstance& w)
{
    return detail::hex64(detail::fnv1a64(canonical_string(w)));
}

/// Exact-matching predicate: every metadata field except side and ordinal.
inline bool metadata_equal(const WarningInstance& a, const WarningInstance& b)
{
    return a.warning_type == b.warning_type && a.class_name == b.class_name &&
           a.method_name == b.method_name && a.field_name == b.field_name &&
           a.file_path == b.file_path && a.start_line == b.start_line &&
           a.end_line == b.end_line;
}

inline auto metadata_key(const WarningInstance& w)
{
    return std::tie(w.file_path, w.start_line, w.end_line, w.warning_type, w.class_name,
                    w.method_name, w.field_name, w.project);
}

/// Canonical order: (file_path, start_line, end_line, warning_type, ordinal),
/// remaining fields as tie-breakers so the order is total.
inline bool canonical_less(const WarningInstance& a, const WarningInstance& b)
{
    return std::tie(a.file_path, a.start_line, a.end_line, a.warning_type, a.ordinal,
                    a.class_name, a.method_name, a.field_name, a.project) <
           std::tie(b.file_path, b.start_line, b.end_line, b.warning_type, b.ordinal,
                    b.class_name, b.method_name, b.field_name, b.project);
}

/// Assigns ordinals in the given (report) order among metadata-identical
/// duplicates: the first occurrence gets 0, the next 1, and so on.
inline void assign_ordinals(std::vector<WarningInstance>& ws)
{
    std::map<decltype(metadata_key(ws.front())), int> seen;
    for (auto& w : ws) w.ordinal = seen[metadata_key(w)]++;
}

/// Warnings of one revision, kept in canonical order.
class WarningSet {
public:
    explicit WarningSet(Side side = Side::Pre) : side_(side) {}

    WarningSet(Side side, std::vector<WarningInstance> warnings)
        : side_(side), warnings_(std::move(warnings))
    {
        for (const auto& w : warnings_) {
            if (w.side != side_) throw SchemaViolation("warning side differs from set side");
            validate(w);
        }
        std::sort(warnings_.begin(), warnings_.end(), canonical_less);
        for (std::size_t i = 1; i < warnings_.size(); ++i) {
            const auto& a = warnings_[i - 1];
            const auto& b = warnings_[i];
            if (metadata_key(a) == metadata_key(b) && a.ordinal == b.ordinal)
                throw SchemaViolation("duplicate warning without distinct ordinal at " +
                                      a.file_path + ":" + std::to_string(a.start_line));
        }
    }

    Side side() const { return side_; }
    const std::vector<WarningInstance>& warnings() const { return warnings_; }
    std::size_t size() const { return warnings_.size(); }
    bool empty() const { return warnings_.empty(); }
    auto begin() const { return warnings_.begin(); }
    auto end() const { return warnings_.end(); }
    const WarningInstance& operator[](std::size_t i) const { return warnings_[i]; }

    friend bool operator==(const WarningSet&, const WarningSet&) = default;

private:
    Side side_;
    std::vector<WarningInstance> warnings_;
};

struct CommitPair {
    std::string pre_commit_id;
    std::string post_commit_id;
    std::filesystem::path pre_root;
    std::filesystem::path post_root;
};

/// Throws FileMissing if either root is not a readable directory.
inline void validate(const CommitPair& c)
{
    for (const auto* root : {&c.pre_root, &c.post_root}) {
        std::error_code ec;
        if (!std::filesystem::is_directory(*root, ec))
            throw FileMissing("source root '" + root->string() + "' is not a directory");
    }
}

struct Match {
    std::string pre_id;
    std::string post_id;
    Strategy strategy = Strategy::Exact;
    double score = 1.0;

    friend bool operator==(const Match&, const Match&) = default;
};

struct RewriteLogEntry {
    std::string original_id;
    std::vector<std::string> changed_fields;

    friend bool operator==(const RewriteLogEntry&, const RewriteLogEntry&) = default;
};

struct TrackingReport {
    Approach approach = Approach::Soa;
    std::string pre_commit_id;
    std::string post_commit_id;
    std::vector<Match> matches;
    std::vector<std::string> resolved;
    std::vector<std::string> newly_introduced;
    std::vector<RewriteLogEntry> rewrite_log;
    std::vector<std::string> notes;

    std::size_t persistent_count() const { return matches.size(); }

    friend bool operator==(const TrackingReport&, const TrackingReport&) = default;
};

}  // namespace warntrack
