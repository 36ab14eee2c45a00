// strategies.hpp - exact, location, snippet and hash matching.
#pragma once

#include <warntrack/core_model.hpp>
#include <warntrack/diff_engine.hpp>
#include <warntrack/ingest.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace warntrack {

/// Tunables shared by the strategies and the assignment step.
struct StrategyConfig {
    int context_window = 3;       // hash: lines of context on each side
    int shingle_size = 3;         // hash: lines per shingle
    double hash_threshold = 0.8;  // hash: minimum Jaccard similarity
    double min_score = 0.5;       // assignment: weakest pair kept

    // Score bands: location 0.5..1.0, snippet 0.9, hash 0.4..0.5.
    double location_base = 0.5;
    double snippet_score = 0.9;
    double hash_weight = 0.5;
};

struct CandidatePair {
    std::string pre_id;
    std::string post_id;
    Strategy strategy = Strategy::Location;
    double score = 0.0;

    friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
};

/// Orders candidates by (score desc, post_id asc).
inline void sort_candidates(std::vector<CandidatePair>& cs)
{
    std::sort(cs.begin(), cs.end(), [](const CandidatePair& a, const CandidatePair& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.post_id != b.post_id) return a.post_id < b.post_id;
        return a.pre_id < b.pre_id;
    });
}

struct ExactMatchResult {
    std::vector<std::pair<WarningInstance, WarningInstance>> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> index_pairs;  // into the inputs
    std::vector<WarningInstance> pre_rest;
    std::vector<WarningInstance> post_rest;
};

/// Pairs metadata-equal warnings one-to-one; duplicates pair by ordinal rank.
inline ExactMatchResult exact_match(std::span<const WarningInstance> pre,
                                    std::span<const WarningInstance> post)
{
    using Key = std::tuple<std::string, int, int, std::string, std::string, std::string, std::string>;
    auto key = [](const WarningInstance& w) {
        return Key{w.file_path, w.start_line, w.end_line, w.warning_type,
                   w.class_name, w.method_name, w.field_name};
    };
    auto by_ordinal = [&](std::span<const WarningInstance> ws) {
        std::map<Key, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < ws.size(); ++i) groups[key(ws[i])].push_back(i);
        for (auto& [k, idx] : groups)
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return ws[a].ordinal < ws[b].ordinal; });
        return groups;
    };

    auto pre_groups = by_ordinal(pre);
    auto post_groups = by_ordinal(post);
    std::vector<char> pre_used(pre.size(), 0), post_used(post.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> idx_pairs;
    for (const auto& [k, pre_idx] : pre_groups) {
        auto it = post_groups.find(k);
        if (it == post_groups.end()) continue;
        auto n = std::min(pre_idx.size(), it->second.size());
        for (std::size_t r = 0; r < n; ++r) idx_pairs.emplace_back(pre_idx[r], it->second[r]);
    }
    std::sort(idx_pairs.begin(), idx_pairs.end());

    ExactMatchResult out;
    for (auto [i, j] : idx_pairs) {
        pre_used[i] = post_used[j] = 1;
        out.pairs.emplace_back(pre[i], post[j]);
    }
    out.index_pairs = std::move(idx_pairs);
    for (std::size_t i = 0; i < pre.size(); ++i)
        if (!pre_used[i]) out.pre_rest.push_back(pre[i]);
    for (std::size_t j = 0; j < post.size(); ++j)
        if (!post_used[j]) out.post_rest.push_back(post[j]);
    return out;
}

/// Location matching: projects the pre range through the file's line mapping
/// and scores every same-type, same-file post warning overlapping the image.
inline std::vector<CandidatePair> location_candidates(const WarningInstance& pre_w,
                                                      std::span<const WarningInstance> post,
                                                      const LineMapping& mapping,
                                                      const StrategyConfig& cfg = {})
{
    std::vector<CandidatePair> out;
    auto image = map_range(mapping, pre_w.start_line, pre_w.end_line);
    if (!image) return out;
    auto pre_id = warning_id(pre_w);
    for (const auto& q : post) {
        if (q.warning_type != pre_w.warning_type || q.file_path != pre_w.file_path) continue;
        int lo = std::max(image->first, q.start_line);
        int hi = std::min(image->last, q.end_line);
        if (lo > hi) continue;
        int inter = hi - lo + 1;
        int uni = std::max(image->last, q.end_line) - std::min(image->first, q.start_line) + 1;
        double overlap = static_cast<double>(inter) / static_cast<double>(uni);
        out.push_back({pre_id, warning_id(q), Strategy::Location,
                       cfg.location_base + (1.0 - cfg.location_base) * overlap});
    }
    sort_candidates(out);
    return out;
}

namespace detail {

inline std::string trim(std::string_view s)
{
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace detail

/// Lines [first, last] (clamped to the file) with surrounding whitespace
/// stripped and blank lines dropped.
inline std::vector<std::string> normalized_lines(const SourceTree::Lines& lines, int first, int last)
{
    std::vector<std::string> out;
    first = std::max(first, 1);
    last = std::min(last, static_cast<int>(lines.size()));
    for (int i = first; i <= last; ++i) {
        auto t = detail::trim(lines[static_cast<std::size_t>(i - 1)]);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

/// Snippet matching: identical normalized code between start and end line.
/// `pre_source_path` defaults to pre_w.file_path.
inline std::vector<CandidatePair> snippet_candidates(const WarningInstance& pre_w,
                                                     std::span<const WarningInstance> post,
                                                     const SourceTree& pre_src,
                                                     const SourceTree& post_src,
                                                     const StrategyConfig& cfg = {},
                                                     std::string_view pre_source_path = {})
{
    std::vector<CandidatePair> out;
    const auto* pre_lines =
        pre_src.find(pre_source_path.empty() ? pre_w.file_path : std::string(pre_source_path));
    const auto* post_lines = post_src.find(pre_w.file_path);
    if (!pre_lines || !post_lines) return out;
    auto snippet = normalized_lines(*pre_lines, pre_w.start_line, pre_w.end_line);
    if (snippet.empty()) return out;
    auto pre_id = warning_id(pre_w);
    for (const auto& q : post) {
        if (q.warning_type != pre_w.warning_type || q.file_path != pre_w.file_path) continue;
        if (normalized_lines(*post_lines, q.start_line, q.end_line) == snippet)
            out.push_back({pre_id, warning_id(q), Strategy::Snippet, cfg.snippet_score});
    }
    sort_candidates(out);
    return out;
}

/// Sorted, de-duplicated digests of every `size`-line window. Inputs shorter
/// than a window yield one shingle of all lines.
inline std::vector<std::uint64_t> shingles(const std::vector<std::string>& lines, int size)
{
    std::vector<std::uint64_t> out;
    if (lines.empty()) return out;
    auto n = static_cast<int>(lines.size());
    int width = std::max(1, std::min(size, n));
    for (int i = 0; i + width <= n; ++i) {
        std::uint64_t h = detail::fnv_offset;
        for (int k = 0; k < width; ++k) {
            h = detail::fnv1a64(lines[static_cast<std::size_t>(i + k)], h);
            h = detail::fnv1a64("\n", h);
        }
        out.push_back(h);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline double jaccard(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b)
{
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else { ++inter; ++i; ++j; }
    }
    auto uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

/// Context fingerprint: normalized lines [start - window, end + window].
inline std::vector<std::uint64_t> context_fingerprint(const SourceTree::Lines& lines,
                                                      const WarningInstance& w,
                                                      const StrategyConfig& cfg)
{
    return shingles(normalized_lines(lines, w.start_line - cfg.context_window,
                                     w.end_line + cfg.context_window),
                    cfg.shingle_size);
}

/// Hash matching (SOA only): surrounding-code similarity, any file.
inline std::vector<CandidatePair> hash_candidates(const WarningInstance& pre_w,
                                                  std::span<const WarningInstance> post,
                                                  const SourceTree& pre_src,
                                                  const SourceTree& post_src,
                                                  const StrategyConfig& cfg = {})
{
    std::vector<CandidatePair> out;
    const auto* pre_lines = pre_src.find(pre_w.file_path);
    if (!pre_lines) return out;
    auto fp = context_fingerprint(*pre_lines, pre_w, cfg);
    if (fp.empty()) return out;
    auto pre_id = warning_id(pre_w);
    for (const auto& q : post) {
        if (q.warning_type != pre_w.warning_type) continue;
        const auto* post_lines = post_src.find(q.file_path);
        if (!post_lines) continue;
        double sim = jaccard(fp, context_fingerprint(*post_lines, q, cfg));
        if (sim + 1e-12 >= cfg.hash_threshold)
            out.push_back({pre_id, warning_id(q), Strategy::Hash, cfg.hash_weight * sim});
    }
    sort_candidates(out);
    return out;
}

}  // namespace warntrack
