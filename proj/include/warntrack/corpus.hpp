// corpus.hpp - seeded synthetic commit pairs with known ground truth.
//
// Each pair is a tiny Java project in two revisions plus warnings on both
// sides, refactoring records and labels. Every pair carries one focus
// scenario on its main class and a support class where one or two warnings
// are truly resolved and one or two are truly introduced.
#pragma once

#include <warntrack/core_model.hpp>
#include <warntrack/evaluation.hpp>
#include <warntrack/ingest.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace warntrack {

enum class Scenario { LineShift, SnippetMove, MethodRename, FileMove, DrasticRewrite, GreedyTrap };

inline constexpr std::array kAllScenarios{Scenario::LineShift,      Scenario::SnippetMove,
                                          Scenario::MethodRename,   Scenario::FileMove,
                                          Scenario::DrasticRewrite, Scenario::GreedyTrap};

inline std::string_view to_string(Scenario s)
{
    switch (s) {
    case Scenario::LineShift: return "line_shift";
    case Scenario::SnippetMove: return "snippet_move";
    case Scenario::MethodRename: return "method_rename";
    case Scenario::FileMove: return "file_move";
    case Scenario::DrasticRewrite: return "drastic_rewrite";
    case Scenario::GreedyTrap: return "greedy_trap";
    }
    return "line_shift";
}

inline Scenario parse_scenario(std::string_view s)
{
    for (auto sc : kAllScenarios)
        if (to_string(sc) == s) return sc;
    throw SchemaViolation("unknown scenario '" + std::string(s) + "'");
}

/// Number of pairs per scenario.
using ScenarioMix = std::map<Scenario, int>;

inline ScenarioMix default_mix()
{
    return {{Scenario::MethodRename, 18}, {Scenario::FileMove, 14}, {Scenario::LineShift, 4},
            {Scenario::SnippetMove, 4},   {Scenario::GreedyTrap, 6}, {Scenario::DrasticRewrite, 4}};
}

struct CorpusPair {
    std::string name;
    Scenario scenario = Scenario::LineShift;
    std::map<std::string, std::string> pre_files;
    std::map<std::string, std::string> post_files;
    WarningSet pre{Side::Pre};
    WarningSet post{Side::Post};
    std::vector<RefactoringRecord> records;
    std::vector<GroundTruthLabel> labels;
    /// Pre warning ids whose metadata a refactoring changed.
    std::vector<std::string> refactoring_affected;
};

struct Corpus {
    std::uint64_t seed = 0;
    std::vector<CorpusPair> pairs;
};

namespace detail::gen {

inline const std::array<const char*, 24> kRuleNames{
    "SE_BAD_FIELD",         "NP_NULL_ON_SOME_PATH",  "DLS_DEAD_LOCAL_STORE", "EI_EXPOSE_REP",
    "EI_EXPOSE_REP2",       "URF_UNREAD_FIELD",      "UUF_UNUSED_FIELD",     "RV_RETURN_VALUE_IGNORED",
    "DM_DEFAULT_ENCODING",  "OBL_UNSATISFIED_OBLIGATION", "SF_SWITCH_NO_DEFAULT", "REC_CATCH_EXCEPTION",
    "UnusedLocalVariable",  "EmptyCatchBlock",       "AvoidDeeplyNestedIfStmts", "CollapsibleIfStatements",
    "UnnecessaryImport",    "UselessParentheses",    "GodClass",             "CyclomaticComplexity",
    "AvoidReassigningParameters", "CompareObjectsWithEquals", "ConfusingTernary", "SimplifyBooleanReturns"};

struct Warn {
    std::string key;   // logical identity shared by the pre and post twin
    std::string type;
    bool method_level = false;
    int first = 0;     // body offsets (0-based, inclusive) for statement-level warnings
    int last = 0;
};

struct Method {
    std::string name;
    std::vector<std::string> body;
    std::vector<Warn> warnings;

    int size() const { return static_cast<int>(body.size()) + 2; }
};

struct Class {
    std::string package;
    std::string name;
    std::vector<Method> methods;

    std::string path() const
    {
        std::string p = "src/main/java/";
        for (char c : package) p.push_back(c == '.' ? '/' : c);
        return p + "/" + name + ".java";
    }
};

struct MethodSpan {
    int decl = 0;
    int close = 0;
};

struct Rendered {
    std::string text;
    std::map<std::string, MethodSpan> spans;
    int line_count = 0;
};

inline Rendered render(const Class& c)
{
    std::vector<std::string> lines{"package " + c.package + ";", "", "public class " + c.name + " {", ""};
    Rendered r;
    for (const auto& m : c.methods) {
        MethodSpan s;
        s.decl = static_cast<int>(lines.size()) + 1;
        lines.push_back("    public void " + m.name + "() {");
        for (const auto& stmt : m.body) lines.push_back("        " + stmt);
        lines.push_back("    } // end " + m.name);
        s.close = static_cast<int>(lines.size());
        lines.emplace_back("");
        r.spans[m.name] = s;
    }
    lines.emplace_back("}");
    for (const auto& l : lines) r.text += l + "\n";
    r.line_count = static_cast<int>(lines.size());
    return r;
}

/// Emits WarningInstances for every warning in the class, keyed by Warn::key.
inline void collect(const Class& c, const Rendered& r, Side side, const std::string& project,
                    std::vector<std::pair<std::string, WarningInstance>>& out)
{
    for (const auto& m : c.methods) {
        const auto& s = r.spans.at(m.name);
        for (const auto& w : m.warnings) {
            WarningInstance wi;
            wi.warning_type = w.type;
            wi.project = project;
            wi.class_name = c.name;
            wi.method_name = m.name + "()";
            wi.file_path = c.path();
            wi.start_line = w.method_level ? s.decl : s.decl + 1 + w.first;
            wi.end_line = w.method_level ? s.close : s.decl + 1 + w.last;
            wi.side = side;
            out.emplace_back(w.key, wi);
        }
    }
}

class Builder {
public:
    explicit Builder(std::uint64_t seed) : rng_(seed) {}

    /// Uniform in [0, n); reduction of the raw engine output keeps corpora
    /// identical across standard libraries.
    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
    int range(int lo, int hi) { return lo + pick(hi - lo + 1); }
    bool coin() { return pick(2) == 0; }

    std::string statement()
    {
        int n = ++counter_;
        int k = pick(100);
        switch (pick(6)) {
        case 0: return "int v" + std::to_string(n) + " = compute(" + std::to_string(k) + ");";
        case 1: return "total" + std::to_string(n % 9) + " += weight(" + std::to_string(n) + ", " + std::to_string(k) + ");";
        case 2: return "log.debug(\"step " + std::to_string(n) + "\");";
        case 3: return "if (flag" + std::to_string(n) + ") { reset(" + std::to_string(k) + "); }";
        case 4: return "cache.put(\"k" + std::to_string(n) + "\", value" + std::to_string(k) + ");";
        default: return "String s" + std::to_string(n) + " = name.substring(" + std::to_string(k % 7) + ");";
        }
    }

    std::vector<std::string> statements(int count)
    {
        std::vector<std::string> out;
        for (int i = 0; i < count; ++i) out.push_back(statement());
        return out;
    }

    std::string method_name()
    {
        static constexpr std::array verbs{"load", "store", "parse", "render", "apply", "check",
                                          "update", "build", "merge", "resolve", "flush", "scan"};
        static constexpr std::array nouns{"Config", "Entry", "Token", "Frame", "Index", "Cache",
                                          "Batch", "Record", "Header", "Node", "Queue", "Slot"};
        return std::string(verbs[static_cast<std::size_t>(pick(static_cast<int>(verbs.size())))]) +
               nouns[static_cast<std::size_t>(pick(static_cast<int>(nouns.size())))] +
               std::to_string(++counter_);
    }

    std::string class_name()
    {
        static constexpr std::array names{"ContextBuilder", "BlobStore", "ComputeService", "Listener",
                                          "Partition", "Producer", "Registry", "Session"};
        return std::string(names[static_cast<std::size_t>(pick(static_cast<int>(names.size())))]) +
               std::to_string(++counter_);
    }

    std::string key() { return "w" + std::to_string(++keys_); }

    void reset_types()
    {
        types_.assign(kRuleNames.begin(), kRuleNames.end());
        for (std::size_t i = types_.size(); i > 1; --i)
            std::swap(types_[i - 1], types_[static_cast<std::size_t>(pick(static_cast<int>(i)))]);
        next_type_ = 0;
    }

    /// Rule names are distinct within a pair unless explicitly shared.
    std::string fresh_type() { return types_.at(next_type_++ % types_.size()); }

    Method method(int min_body, int max_body)
    {
        return Method{method_name(), statements(range(min_body, max_body)), {}};
    }

    /// Adds a warning of a fresh type: method-level or over 1-2 body lines.
    void add_warning(Method& m, bool method_level)
    {
        Warn w{key(), fresh_type(), method_level, 0, 0};
        if (!method_level) {
            int n = static_cast<int>(m.body.size());
            w.first = pick(n);
            w.last = std::min(n - 1, w.first + pick(2));
        }
        m.warnings.push_back(w);
    }

private:
    std::mt19937_64 rng_;
    int counter_ = 0;
    int keys_ = 0;
    std::vector<std::string> types_;
    std::size_t next_type_ = 0;
};

inline int lines_after(const Class& c, std::size_t index)
{
    int n = 0;
    for (std::size_t i = index + 1; i < c.methods.size(); ++i) n += c.methods[i].size() + 1;
    return n;
}

/// Index of a method in the first half whose successors outweigh it, so a
/// line diff keeps the successors and reports the method as moved.
inline std::size_t movable_method(Builder& b, const Class& c)
{
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i + 2 < c.methods.size(); ++i)
        if (lines_after(c, i) > c.methods[i].size() + 2) ok.push_back(i);
    return ok.at(static_cast<std::size_t>(b.pick(static_cast<int>(ok.size()))));
}

struct PairDraft {
    Class pre_main, post_main;
    Class pre_support, post_support;
    std::vector<RefactoringRecord> records;
    std::set<std::string> affected_keys;
};

inline Class base_class(Builder& b, int methods, int warned)
{
    Class c;
    static constexpr std::array packages{"org.jclouds.rest", "org.apache.kafka.clients", "org.springframework.boot",
                                         "com.google.common.collect"};
    c.package = packages[static_cast<std::size_t>(b.pick(static_cast<int>(packages.size())))];
    c.name = b.class_name();
    for (int i = 0; i < methods; ++i) c.methods.push_back(b.method(3, 6));
    std::vector<std::size_t> idx(c.methods.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[static_cast<std::size_t>(b.pick(static_cast<int>(i)))]);
    for (int i = 0; i < warned && i < methods; ++i) b.add_warning(c.methods[idx[static_cast<std::size_t>(i)]], b.coin());
    return c;
}

/// Support class: untouched warnings, 1-2 deleted methods with warnings
/// (truly resolved) and 1-2 appended methods with warnings (truly new).
inline void support_edit(Builder& b, PairDraft& d)
{
    d.pre_support = base_class(b, b.range(4, 5), 2);
    int removed = b.range(1, 2);
    for (int i = 0; i < removed; ++i) {
        auto m = b.method(3, 5);
        b.add_warning(m, b.coin());
        d.pre_support.methods.insert(d.pre_support.methods.begin(), std::move(m));
    }
    d.post_support = d.pre_support;
    d.post_support.methods.erase(d.post_support.methods.begin(), d.post_support.methods.begin() + removed);
    int added = b.range(1, 2);
    for (int i = 0; i < added; ++i) {
        auto m = b.method(3, 5);
        b.add_warning(m, b.coin());
        d.post_support.methods.push_back(std::move(m));
    }
}

inline RefactoringRecord method_record(RefactoringKind kind, const Class& pre, const Class& post,
                                       const std::string& before_name, const std::string& after_name)
{
    auto rp = render(pre);
    auto rq = render(post);
    RefactoringRecord r;
    r.kind = kind;
    r.type_name = kind == RefactoringKind::RenameMethod ? "Rename Method" : std::string(to_string(kind));
    r.before = {pre.path(), pre.name, before_name + "()", "", rp.spans.at(before_name).decl,
                rp.spans.at(before_name).close};
    r.after = {post.path(), post.name, after_name + "()", "", rq.spans.at(after_name).decl,
               rq.spans.at(after_name).close};
    return r;
}

inline void scenario_line_shift(Builder& b, PairDraft& d)
{
    d.pre_main = base_class(b, b.range(4, 6), 3);
    d.post_main = d.pre_main;
    auto& first = d.post_main.methods.front().body;
    auto extra = b.statements(b.range(2, 4));
    first.insert(first.begin(), extra.begin(), extra.end());
    // Touch one statement inside a statement-level warning, if any.
    for (std::size_t mi = 1; mi < d.post_main.methods.size(); ++mi) {
        auto& m = d.post_main.methods[mi];
        for (const auto& w : m.warnings)
            if (!w.method_level) {
                m.body[static_cast<std::size_t>(w.first)] += " // reviewed";
                return;
            }
    }
}

inline void scenario_snippet_move(Builder& b, PairDraft& d)
{
    d.pre_main = base_class(b, b.range(5, 6), 2);
    auto i = movable_method(b, d.pre_main);
    b.add_warning(d.pre_main.methods[i], false);
    d.post_main = d.pre_main;
    auto moved = d.post_main.methods[i];
    d.post_main.methods.erase(d.post_main.methods.begin() + static_cast<std::ptrdiff_t>(i));
    d.post_main.methods.push_back(std::move(moved));
}

inline void scenario_method_rename(Builder& b, PairDraft& d)
{
    d.pre_main = base_class(b, b.range(5, 6), 2);
    auto i = movable_method(b, d.pre_main);
    auto& target = d.pre_main.methods[i];
    target.warnings.clear();
    b.add_warning(target, true);
    b.add_warning(target, true);
    for (const auto& w : target.warnings) d.affected_keys.insert(w.key);

    d.post_main = d.pre_main;
    auto renamed = d.post_main.methods[i];
    auto old_name = renamed.name;
    renamed.name = b.method_name();
    d.post_main.methods.erase(d.post_main.methods.begin() + static_cast<std::ptrdiff_t>(i));
    d.post_main.methods.push_back(renamed);
    d.records.push_back(method_record(RefactoringKind::RenameMethod, d.pre_main, d.post_main, old_name,
                                      renamed.name));
}

inline void scenario_file_move(Builder& b, PairDraft& d)
{
    d.pre_main = base_class(b, b.range(4, 5), 0);
    for (auto& m : d.pre_main.methods) b.add_warning(m, true);
    for (const auto& m : d.pre_main.methods)
        for (const auto& w : m.warnings) d.affected_keys.insert(w.key);

    d.post_main = d.pre_main;
    d.post_main.package += ".internal";
    std::reverse(d.post_main.methods.begin(), d.post_main.methods.end());

    auto rp = render(d.pre_main);
    auto rq = render(d.post_main);
    RefactoringRecord r;
    bool as_class = b.coin();
    r.kind = as_class ? RefactoringKind::MoveClass : RefactoringKind::MoveRenameFile;
    r.type_name = as_class ? "Move Class" : "Move File";
    r.before = {d.pre_main.path(), as_class ? d.pre_main.name : "", "", "", 1, rp.line_count};
    r.after = {d.post_main.path(), as_class ? d.post_main.name : "", "", "", 1, rq.line_count};
    d.records.push_back(r);
}

inline void scenario_drastic(Builder& b, PairDraft& d)
{
    d.pre_main = base_class(b, b.range(4, 5), 2);
    auto i = static_cast<std::size_t>(b.pick(static_cast<int>(d.pre_main.methods.size()) - 1));
    auto& target = d.pre_main.methods[i];
    target.warnings.clear();
    b.add_warning(target, false);
    auto warn = target.warnings.front();

    d.post_main = d.pre_main;
    auto& rewritten = d.post_main.methods[i];
    rewritten.body = b.statements(b.range(3, 6));
    rewritten.warnings.clear();
    // The flagged code now lives, reworked, in a new helper at the end.
    auto helper = b.method(3, 4);
    warn.first = warn.last = 1;
    helper.body[1] = "int reworked" + std::to_string(b.range(1000, 9999)) + " = compute(0);";
    helper.warnings.push_back(warn);
    d.post_main.methods.push_back(std::move(helper));
}

/// Duplicate-snippet layout where the greedy cascade commits to the wrong
/// pair: pre method P holds X, Q holds Y (and R holds Z for the 3x3 case);
/// post P holds Y, [Z,] then a reworked X' while Q (and R) lose their blocks.
inline void scenario_greedy_trap(Builder& b, PairDraft& d, bool three)
{
    d.pre_main = base_class(b, 0, 0);
    auto type = b.fresh_type();
    auto x = b.statements(3);
    auto y = b.statements(4);
    auto z = b.statements(3);

    auto block_method = [&](const std::vector<std::string>& block, int lead, int tail) {
        Method m = b.method(0, 0);
        m.body = b.statements(lead);
        m.body.insert(m.body.end(), block.begin(), block.end());
        auto rest = b.statements(tail);
        m.body.insert(m.body.end(), rest.begin(), rest.end());
        return m;
    };
    Method p = block_method(x, 2, 2);
    Method q = block_method(y, 2, 2);
    Method r = block_method(z, 2, 1);
    Warn wx{b.key(), type, false, 2, 4};
    Warn wy{b.key(), type, false, 2, 5};
    Warn wz{b.key(), type, false, 2, 4};
    p.warnings.push_back(wx);
    q.warnings.push_back(wy);
    r.warnings.push_back(wz);

    d.pre_main.methods = {p, q};
    if (three) d.pre_main.methods.push_back(r);
    d.pre_main.methods.push_back(b.method(3, 4));

    // Post.
    Method p2 = p;
    p2.warnings.clear();
    std::vector<std::string> body{p.body[0], p.body[1]};
    body.insert(body.end(), y.begin(), y.end());
    int at = 2;
    p2.warnings.push_back({wy.key, type, false, at, at + 3});
    at += 4;
    if (three) {
        body.insert(body.end(), z.begin(), z.end());
        p2.warnings.push_back({wz.key, type, false, at, at + 2});
        at += 3;
    }
    body.push_back(x[0] + " // reworked");
    body.push_back(x[2] + " // reworked");
    p2.warnings.push_back({wx.key, type, false, at, at + 1});
    body.push_back(p.body[5]);
    body.push_back(p.body[6]);
    p2.body = body;

    Method q2 = q;
    q2.warnings.clear();
    q2.body = {q.body[0], q.body[1], q.body[6], q.body[7]};
    Method r2 = r;
    r2.warnings.clear();
    r2.body = {r.body[0], r.body[1], r.body[5]};

    d.post_main = d.pre_main;
    d.post_main.methods = {p2, q2};
    if (three) d.post_main.methods.push_back(r2);
    d.post_main.methods.push_back(d.pre_main.methods.back());
}

}  // namespace detail::gen

/// Deterministic corpus: pairs are laid out in scenario order (mix order),
/// each drawn from one engine seeded with `seed`.
inline Corpus generate_corpus(std::uint64_t seed, const ScenarioMix& mix = default_mix())
{
    using namespace detail::gen;
    Builder b(seed);
    Corpus corpus;
    corpus.seed = seed;
    int trap_count = 0;
    for (auto scenario : kAllScenarios) {
        auto it = mix.find(scenario);
        int count = it == mix.end() ? 0 : it->second;
        for (int n = 0; n < count; ++n) {
            b.reset_types();
            PairDraft d;
            switch (scenario) {
            case Scenario::LineShift: scenario_line_shift(b, d); break;
            case Scenario::SnippetMove: scenario_snippet_move(b, d); break;
            case Scenario::MethodRename: scenario_method_rename(b, d); break;
            case Scenario::FileMove: scenario_file_move(b, d); break;
            case Scenario::DrasticRewrite: scenario_drastic(b, d); break;
            case Scenario::GreedyTrap: scenario_greedy_trap(b, d, (trap_count++ % 2) == 1); break;
            }
            support_edit(b, d);

            CorpusPair pair;
            pair.scenario = scenario;
            char name[64];
            std::snprintf(name, sizeof name, "pair_%03zu_%s", corpus.pairs.size(),
                          std::string(to_string(scenario)).c_str());
            pair.name = name;
            const std::string project = "synthetic";

            std::vector<std::pair<std::string, WarningInstance>> pre_keyed, post_keyed;
            for (const auto* c : {&d.pre_main, &d.pre_support}) {
                auto r = render(*c);
                pair.pre_files[c->path()] = r.text;
                collect(*c, r, Side::Pre, project, pre_keyed);
            }
            for (const auto* c : {&d.post_main, &d.post_support}) {
                auto r = render(*c);
                pair.post_files[c->path()] = r.text;
                collect(*c, r, Side::Post, project, post_keyed);
            }

            std::vector<WarningInstance> pre_ws, post_ws;
            for (auto& [k, w] : pre_keyed) pre_ws.push_back(w);
            for (auto& [k, w] : post_keyed) post_ws.push_back(w);
            assign_ordinals(pre_ws);
            assign_ordinals(post_ws);

            std::set<std::string> pre_keys, post_keys;
            for (const auto& [k, w] : pre_keyed) pre_keys.insert(k);
            for (const auto& [k, w] : post_keyed) post_keys.insert(k);
            for (std::size_t i = 0; i < pre_ws.size(); ++i) {
                const auto& k = pre_keyed[i].first;
                auto id = warning_id(pre_ws[i]);
                pair.labels.push_back({id, post_keys.count(k) ? EvolutionStatus::Persistent
                                                              : EvolutionStatus::Resolved});
                if (d.affected_keys.count(k)) pair.refactoring_affected.push_back(id);
            }
            for (std::size_t j = 0; j < post_ws.size(); ++j) {
                const auto& k = post_keyed[j].first;
                pair.labels.push_back({warning_id(post_ws[j]), pre_keys.count(k)
                                                                   ? EvolutionStatus::Persistent
                                                                   : EvolutionStatus::NewlyIntroduced});
            }
            pair.pre = WarningSet(Side::Pre, std::move(pre_ws));
            pair.post = WarningSet(Side::Post, std::move(post_ws));
            pair.records = std::move(d.records);
            corpus.pairs.push_back(std::move(pair));
        }
    }
    return corpus;
}

inline void write_text(const std::filesystem::path& p, const std::string& text)
{
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw FileMissing("cannot write '" + p.string() + "'");
    out << text;
}

/// Layout: <dir>/manifest.json and <dir>/<pair>/{pre,post}/..., generic
/// warnings, refactorings.json, labels.csv and scenario.json per pair.
inline void write_corpus(const Corpus& corpus, const std::filesystem::path& dir)
{
    auto manifest = nlohmann::json::array();
    for (const auto& p : corpus.pairs) {
        auto base = dir / p.name;
        for (const auto& [path, text] : p.pre_files) write_text(base / "pre" / path, text);
        for (const auto& [path, text] : p.post_files) write_text(base / "post" / path, text);
        write_text(base / "pre_warnings.json", serialize_generic_warnings(p.pre));
        write_text(base / "post_warnings.json", serialize_generic_warnings(p.post));
        write_text(base / "refactorings.json", serialize_refactorings(p.records));
        write_text(base / "labels.csv", serialize_labels(p.labels));
        nlohmann::json meta{{"scenario", std::string(to_string(p.scenario))},
                            {"refactoring_affected", p.refactoring_affected}};
        write_text(base / "scenario.json", meta.dump(2) + "\n");
        manifest.push_back({{"name", p.name},
                            {"pre_root", p.name + "/pre"},
                            {"post_root", p.name + "/post"},
                            {"pre_warnings", p.name + "/pre_warnings.json"},
                            {"post_warnings", p.name + "/post_warnings.json"},
                            {"format", "generic"},
                            {"refactorings", p.name + "/refactorings.json"},
                            {"labels", p.name + "/labels.csv"}});
    }
    nlohmann::json doc{{"seed", corpus.seed}, {"pairs", manifest}};
    write_text(dir / "manifest.json", doc.dump(2) + "\n");
}

}  // namespace warntrack
