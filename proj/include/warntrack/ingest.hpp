// ingest.hpp - report parsers, refactoring records and source trees.
#pragma once

#include <warntrack/core_model.hpp>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace warntrack {

// ---------------------------------------------------------------------------
// Source trees

/// Splits text into lines. "\n" and "\r\n" terminate a line; a trailing
/// terminator does not produce an extra empty line.
inline std::vector<std::string> split_lines(std::string_view text)
{
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(pos));
            break;
        }
        auto len = nl - pos;
        if (len > 0 && text[nl - 1] == '\r') --len;
        lines.emplace_back(text.substr(pos, len));
        pos = nl + 1;
    }
    return lines;
}

/// A revision's source files, either rooted on disk or held in memory.
/// Files are read lazily and cached; the cache is shared by copies.
class SourceTree {
public:
    using Lines = std::vector<std::string>;

    SourceTree() : state_(std::make_shared<State>()) {}

    explicit SourceTree(std::filesystem::path root) : SourceTree() { state_->root = std::move(root); }

    /// In-memory tree: file_path -> full text.
    static SourceTree from_files(const std::map<std::string, std::string>& files)
    {
        SourceTree t;
        t.state_->in_memory = true;
        for (const auto& [path, text] : files) {
            auto e = std::make_shared<Entry>();
            e->lines = split_lines(text);
            e->present = true;
            std::call_once(e->once, [] {});
            t.state_->entries.emplace(canonicalize_path(path), std::move(e));
        }
        return t;
    }

    const std::filesystem::path& root() const { return state_->root; }

    /// Returns the file's lines (index 0 holds line 1). Throws FileMissing.
    const Lines& load(const std::string& file_path) const
    {
        auto e = entry(file_path);
        if (!e->present) throw FileMissing("file '" + file_path + "' not found in source tree");
        return e->lines;
    }

    /// Like load() but returns nullptr for absent files.
    const Lines* find(const std::string& file_path) const
    {
        auto e = entry(file_path);
        return e->present ? &e->lines : nullptr;
    }

    bool contains(const std::string& file_path) const { return find(file_path) != nullptr; }

private:
    struct Entry {
        std::once_flag once;
        bool present = false;
        Lines lines;
    };
    struct State {
        std::filesystem::path root;
        bool in_memory = false;
        std::mutex mu;
        std::map<std::string, std::shared_ptr<Entry>> entries;
    };

    std::shared_ptr<Entry> entry(const std::string& file_path) const
    {
        auto key = canonicalize_path(file_path);
        std::shared_ptr<Entry> e;
        {
            std::lock_guard lock(state_->mu);
            auto& slot = state_->entries[key];
            if (!slot) slot = std::make_shared<Entry>();
            e = slot;
        }
        // Per-file single fill; distinct files load concurrently.
        std::call_once(e->once, [&] {
            if (state_->in_memory || key.empty()) return;
            std::ifstream in(state_->root / key, std::ios::binary);
            if (!in) return;
            std::ostringstream ss;
            ss << in.rdbuf();
            e->lines = split_lines(ss.str());
            e->present = true;
        });
        return e;
    }

    std::shared_ptr<State> state_;
};

/// Free-function form used by the pipelines.
inline const SourceTree::Lines& load_source(const SourceTree& tree, const std::string& file_path)
{
    return tree.load(file_path);
}

// ---------------------------------------------------------------------------
// Warning reports

struct ParseOptions {
    std::string project;
    /// Prefix stripped from reported paths (the analyzed root). PMD reports
    /// absolute paths; SpotBugs sourcepath is already root-relative.
    std::string source_prefix;
};

namespace detail {

using boost::property_tree::ptree;

inline ptree parse_xml(std::string_view bytes, std::string_view what)
{
    namespace bpt = boost::property_tree;
    std::istringstream in{std::string(bytes)};
    ptree tree;
    try {
        bpt::read_xml(in, tree, bpt::xml_parser::no_comments);
    } catch (const bpt::xml_parser_error& e) {
        throw MalformedReport(std::string(what) + ": invalid XML at line " +
                              std::to_string(e.line()) + ": " + e.message());
    }
    return tree;
}

inline std::optional<std::string> attr(const ptree& node, const char* name)
{
    if (auto a = node.get_child_optional(ptree::path_type(std::string("<xmlattr>.") + name, '.')))
        return a->data();
    return std::nullopt;
}

inline std::string required_attr(const ptree& node, const char* name, std::string_view element,
                                 std::size_t index)
{
    auto v = attr(node, name);
    if (!v)
        throw MissingAttribute("element <" + std::string(element) + "> #" +
                               std::to_string(index) + " lacks required attribute '" + name + "'");
    return *v;
}

inline int to_line(const std::string& s, std::string_view element, std::size_t index)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw MalformedReport("element <" + std::string(element) + "> #" + std::to_string(index) +
                              ": line number '" + s + "' is not an integer");
    }
}

inline std::string strip_prefix(std::string path, const std::string& prefix)
{
    path = canonicalize_path(path);
    if (prefix.empty()) return path;
    auto p = canonicalize_path(prefix);
    if (!p.empty() && p.back() != '/') p.push_back('/');
    if (path.compare(0, p.size(), p) == 0) path.erase(0, p.size());
    return path;
}

inline std::string file_stem(std::string_view path)
{
    auto slash = path.rfind('/');
    auto base = slash == std::string_view::npos ? path : path.substr(slash + 1);
    auto dot = base.rfind('.');
    return std::string(dot == std::string_view::npos ? base : base.substr(0, dot));
}

inline std::string simple_class_name(std::string_view qualified)
{
    auto dot = qualified.rfind('.');
    return std::string(dot == std::string_view::npos ? qualified : qualified.substr(dot + 1));
}

inline WarningSet finish(Side side, std::vector<WarningInstance> ws)
{
    if (!ws.empty()) assign_ordinals(ws);
    for (auto& w : ws) {
        w.side = side;
        validate(w);
    }
    return WarningSet(side, std::move(ws));
}

}  // namespace detail

/// PMD's XML reporter: <pmd><file name=...><violation .../></file></pmd>.
inline WarningSet parse_pmd_report(std::string_view bytes, Side side, const ParseOptions& opts = {})
{
    auto tree = detail::parse_xml(bytes, "PMD report");
    auto root = tree.get_child_optional("pmd");
    if (!root) throw MalformedReport("PMD report: missing <pmd> root element");

    std::vector<WarningInstance> out;
    std::size_t file_index = 0;
    std::size_t violation_index = 0;
    for (const auto& [tag, file] : *root) {
        if (tag != "file") continue;
        auto path = detail::strip_prefix(detail::required_attr(file, "name", "file", file_index++),
                                         opts.source_prefix);
        for (const auto& [vtag, v] : file) {
            if (vtag != "violation") continue;
            auto idx = violation_index++;
            WarningInstance w;
            w.warning_type = detail::required_attr(v, "rule", "violation", idx);
            w.project = opts.project;
            w.file_path = path;
            w.start_line = detail::to_line(detail::required_attr(v, "beginline", "violation", idx),
                                           "violation", idx);
            w.end_line = detail::to_line(detail::required_attr(v, "endline", "violation", idx),
                                         "violation", idx);
            w.class_name = detail::attr(v, "class").value_or(detail::file_stem(path));
            w.method_name = detail::attr(v, "method").value_or("");
            w.field_name = detail::attr(v, "variable").value_or("");
            w.side = side;
            out.push_back(std::move(w));
        }
    }
    return detail::finish(side, std::move(out));
}

/// SpotBugs' XML reporter: <BugCollection><BugInstance type=...>.
inline WarningSet parse_spotbugs_report(std::string_view bytes, Side side,
                                        const ParseOptions& opts = {})
{
    using detail::ptree;
    auto tree = detail::parse_xml(bytes, "SpotBugs report");
    auto root = tree.get_child_optional("BugCollection");
    if (!root) throw MalformedReport("SpotBugs report: missing <BugCollection> root element");

    std::string project = opts.project;
    if (project.empty()) {
        if (auto p = root->get_child_optional("Project"))
            project = detail::attr(*p, "projectName").value_or("");
        if (project.empty()) project = detail::attr(*root, "project").value_or("");
    }

    // The element flagged primary="true", else the first one.
    auto primary = [](const ptree& parent, const std::string& tag) -> const ptree* {
        const ptree* first = nullptr;
        for (const auto& [t, child] : parent) {
            if (t != tag) continue;
            if (detail::attr(child, "primary").value_or("") == "true") return &child;
            if (!first) first = &child;
        }
        return first;
    };

    std::vector<WarningInstance> out;
    std::size_t idx = 0;
    for (const auto& [tag, bug] : *root) {
        if (tag != "BugInstance") continue;
        auto i = idx++;
        WarningInstance w;
        w.warning_type = detail::required_attr(bug, "type", "BugInstance", i);
        w.project = project;
        w.side = side;

        const ptree* cls = primary(bug, "Class");
        const ptree* method = primary(bug, "Method");
        const ptree* field = primary(bug, "Field");
        if (cls) w.class_name = detail::simple_class_name(detail::required_attr(*cls, "classname", "Class", i));
        if (method) w.method_name = detail::required_attr(*method, "name", "Method", i);
        if (field) w.field_name = detail::required_attr(*field, "name", "Field", i);

        // Primary range: the BugInstance-level SourceLine, else the one nested
        // in the primary Method, Field or Class.
        const ptree* line = primary(bug, "SourceLine");
        for (const ptree* holder : {method, field, cls}) {
            if (line) break;
            if (holder) line = primary(*holder, "SourceLine");
        }
        if (!line)
            throw MissingAttribute("element <BugInstance> #" + std::to_string(i) +
                                   " has no <SourceLine>");
        auto path = detail::attr(*line, "sourcepath");
        if (!path) path = detail::attr(*line, "sourcefile");
        if (!path)
            throw MissingAttribute("element <SourceLine> of <BugInstance> #" + std::to_string(i) +
                                   " lacks required attribute 'sourcepath'");
        w.file_path = detail::strip_prefix(*path, opts.source_prefix);
        w.start_line = detail::to_line(detail::required_attr(*line, "start", "SourceLine", i),
                                       "SourceLine", i);
        w.end_line = detail::to_line(detail::required_attr(*line, "end", "SourceLine", i),
                                     "SourceLine", i);
        if (w.class_name.empty()) w.class_name = detail::file_stem(w.file_path);
        out.push_back(std::move(w));
    }
    return detail::finish(side, std::move(out));
}

namespace detail {

inline nlohmann::json parse_json(std::string_view bytes, std::string_view what)
{
    try {
        return nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedReport(std::string(what) + ": invalid JSON at byte " +
                              std::to_string(e.byte) + ": " + e.what());
    }
}

inline std::string json_string(const nlohmann::json& obj, const char* key, std::size_t index,
                               bool required = true)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required)
            throw SchemaViolation("record #" + std::to_string(index) + ": missing key '" + key + "'");
        return {};
    }
    if (!it->is_string())
        throw SchemaViolation("record #" + std::to_string(index) + ": '" + key + "' must be a string");
    return it->get<std::string>();
}

inline int json_int(const nlohmann::json& obj, const char* key, std::size_t index,
                    bool required = true)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required)
            throw SchemaViolation("record #" + std::to_string(index) + ": missing key '" + key + "'");
        return 0;
    }
    if (!it->is_number_integer())
        throw SchemaViolation("record #" + std::to_string(index) + ": '" + key +
                              "' must be an integer");
    return it->get<int>();
}

}  // namespace detail

/// Generic format: a JSON list of objects with keys warning_type, project,
/// class, method, field, file_path, start_line, end_line.
inline WarningSet parse_generic_warnings(std::string_view bytes, Side side)
{
    auto doc = detail::parse_json(bytes, "generic warnings");
    if (!doc.is_array()) throw SchemaViolation("generic warnings: top level must be a list");
    std::vector<WarningInstance> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& r = doc[i];
        if (!r.is_object()) throw SchemaViolation("record #" + std::to_string(i) + " is not an object");
        WarningInstance w;
        w.warning_type = detail::json_string(r, "warning_type", i);
        w.project = detail::json_string(r, "project", i, false);
        w.class_name = detail::json_string(r, "class", i, false);
        w.method_name = detail::json_string(r, "method", i, false);
        w.field_name = detail::json_string(r, "field", i, false);
        w.file_path = canonicalize_path(detail::json_string(r, "file_path", i));
        w.start_line = detail::json_int(r, "start_line", i);
        w.end_line = detail::json_int(r, "end_line", i);
        if (w.start_line > w.end_line)
            throw SchemaViolation("record #" + std::to_string(i) + ": start_line " +
                                  std::to_string(w.start_line) + " > end_line " +
                                  std::to_string(w.end_line));
        w.side = side;
        out.push_back(std::move(w));
    }
    return detail::finish(side, std::move(out));
}

/// Canonical serialization of the generic format: sorted keys, one record
/// per warning in canonical order, two-space indentation.
inline std::string serialize_generic_warnings(const WarningSet& set)
{
    auto doc = nlohmann::json::array();
    for (const auto& w : set) {
        doc.push_back({{"warning_type", w.warning_type},
                       {"project", w.project},
                       {"class", w.class_name},
                       {"method", w.method_name},
                       {"field", w.field_name},
                       {"file_path", w.file_path},
                       {"start_line", w.start_line},
                       {"end_line", w.end_line}});
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Refactoring records

enum class RefactoringKind { RenameMethod, RenameClass, MoveClass, MoveRenameFile, ExtractMethod, Other };

inline std::string_view to_string(RefactoringKind k)
{
    switch (k) {
    case RefactoringKind::RenameMethod: return "RENAME_METHOD";
    case RefactoringKind::RenameClass: return "RENAME_CLASS";
    case RefactoringKind::MoveClass: return "MOVE_CLASS";
    case RefactoringKind::MoveRenameFile: return "MOVE_RENAME_FILE";
    case RefactoringKind::ExtractMethod: return "EXTRACT_METHOD";
    case RefactoringKind::Other: return "OTHER";
    }
    return "OTHER";
}

/// Maps RefactoringMiner display names (and our enum spellings) to kinds.
inline RefactoringKind parse_refactoring_kind(std::string_view s)
{
    static const std::map<std::string, RefactoringKind, std::less<>> names{
        {"Rename Method", RefactoringKind::RenameMethod},
        {"RENAME_METHOD", RefactoringKind::RenameMethod},
        {"Rename Class", RefactoringKind::RenameClass},
        {"RENAME_CLASS", RefactoringKind::RenameClass},
        {"Move Class", RefactoringKind::MoveClass},
        {"Move And Rename Class", RefactoringKind::MoveClass},
        {"MOVE_CLASS", RefactoringKind::MoveClass},
        {"Move File", RefactoringKind::MoveRenameFile},
        {"Rename File", RefactoringKind::MoveRenameFile},
        {"Move And Rename File", RefactoringKind::MoveRenameFile},
        {"MOVE_RENAME_FILE", RefactoringKind::MoveRenameFile},
        {"Extract Method", RefactoringKind::ExtractMethod},
        {"Extract And Move Method", RefactoringKind::ExtractMethod},
        {"EXTRACT_METHOD", RefactoringKind::ExtractMethod},
    };
    auto it = names.find(s);
    return it == names.end() ? RefactoringKind::Other : it->second;
}

struct CodeElementRef {
    std::string file_path;
    std::string class_name;
    std::string method_name;
    std::string field_name;
    int start_line = 0;
    int end_line = 0;

    bool has_range() const { return start_line > 0 && end_line >= start_line; }

    friend bool operator==(const CodeElementRef&, const CodeElementRef&) = default;
};

struct RefactoringRecord {
    RefactoringKind kind = RefactoringKind::Other;
    std::string type_name;  // as spelled in the input
    CodeElementRef before;
    CodeElementRef after;

    friend bool operator==(const RefactoringRecord&, const RefactoringRecord&) = default;
};

namespace detail {

inline CodeElementRef element_from_simple(const nlohmann::json& j, std::size_t i)
{
    if (!j.is_object()) throw MalformedReport("refactoring #" + std::to_string(i) + ": element is not an object");
    CodeElementRef e;
    try {
        e.file_path = canonicalize_path(json_string(j, "file", i, false));
        e.class_name = json_string(j, "class", i, false);
        e.method_name = json_string(j, "method", i, false);
        e.field_name = json_string(j, "field", i, false);
        e.start_line = json_int(j, "start_line", i, false);
        e.end_line = json_int(j, "end_line", i, false);
    } catch (const SchemaViolation& ex) {
        throw MalformedReport(std::string("refactoring ") + ex.what());
    }
    return e;
}

/// "public m1(a int) : void" -> "m1(a int)".
inline std::string method_from_code_element(std::string_view ce)
{
    auto paren = ce.find('(');
    if (paren == std::string_view::npos) return std::string(ce);
    auto close = ce.find(')', paren);
    auto start = ce.rfind(' ', paren);
    start = start == std::string_view::npos ? 0 : start + 1;
    auto stop = close == std::string_view::npos ? ce.size() : close + 1;
    return std::string(ce.substr(start, stop - start));
}

/// RefactoringMiner side locations: the first entry is the primary one; a
/// declaration entry fills the class/method name.
inline CodeElementRef element_from_locations(const nlohmann::json& locs, std::size_t i)
{
    CodeElementRef e;
    if (!locs.is_array() || locs.empty()) return e;
    const auto& first = locs.front();
    if (!first.is_object()) throw MalformedReport("refactoring #" + std::to_string(i) + ": bad location");
    e.file_path = canonicalize_path(first.value("filePath", ""));
    e.start_line = first.value("startLine", 0);
    e.end_line = first.value("endLine", 0);
    for (const auto& loc : locs) {
        auto type = loc.value("codeElementType", "");
        auto element = loc.value("codeElement", "");
        if (type == "METHOD_DECLARATION" && e.method_name.empty())
            e.method_name = method_from_code_element(element);
        else if (type == "TYPE_DECLARATION" && e.class_name.empty())
            e.class_name = simple_class_name(element);
        else if (type == "FIELD_DECLARATION" && e.field_name.empty())
            e.field_name = element.substr(0, element.find(' '));
    }
    return e;
}

}  // namespace detail

/// Accepts either a list of {type, before, after} objects or RefactoringMiner's
/// native {"commits":[{"refactorings":[...]}]} output. Unknown kinds map to
/// OTHER and are kept in input order.
inline std::vector<RefactoringRecord> parse_refactorings(std::string_view bytes)
{
    auto doc = detail::parse_json(bytes, "refactorings");
    std::vector<RefactoringRecord> out;

    auto add = [&](const nlohmann::json& r, bool native) {
        auto i = out.size();
        if (!r.is_object() || !r.contains("type") || !r["type"].is_string())
            throw MalformedReport("refactoring #" + std::to_string(i) + ": missing string 'type'");
        RefactoringRecord rec;
        rec.type_name = r["type"].get<std::string>();
        rec.kind = parse_refactoring_kind(rec.type_name);
        if (native) {
            rec.before = detail::element_from_locations(r.value("leftSideLocations", nlohmann::json::array()), i);
            rec.after = detail::element_from_locations(r.value("rightSideLocations", nlohmann::json::array()), i);
        } else {
            if (r.contains("before")) rec.before = detail::element_from_simple(r["before"], i);
            if (r.contains("after")) rec.after = detail::element_from_simple(r["after"], i);
        }
        if (rec.kind != RefactoringKind::Other &&
            (rec.before.file_path.empty() || rec.after.file_path.empty()))
            throw MalformedReport("refactoring #" + std::to_string(i) + " (" + rec.type_name +
                                  "): before/after file paths are required");
        out.push_back(std::move(rec));
    };

    if (doc.is_array()) {
        for (const auto& r : doc) add(r, false);
    } else if (doc.is_object() && doc.contains("commits") && doc["commits"].is_array()) {
        for (const auto& c : doc["commits"])
            for (const auto& r : c.value("refactorings", nlohmann::json::array())) add(r, true);
    } else {
        throw MalformedReport("refactorings: expected a list or a RefactoringMiner 'commits' object");
    }
    return out;
}

inline std::string serialize_refactorings(const std::vector<RefactoringRecord>& records)
{
    auto element = [](const CodeElementRef& e) {
        return nlohmann::json{{"file", e.file_path},         {"class", e.class_name},
                              {"method", e.method_name},     {"field", e.field_name},
                              {"start_line", e.start_line},  {"end_line", e.end_line}};
    };
    auto doc = nlohmann::json::array();
    for (const auto& r : records)
        doc.push_back({{"type", r.type_name.empty() ? std::string(to_string(r.kind)) : r.type_name},
                       {"before", element(r.before)},
                       {"after", element(r.after)}});
    return doc.dump(2) + "\n";
}

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FileMissing("cannot read '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace warntrack
