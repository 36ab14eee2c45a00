// diff_engine.hpp - Myers line diff, edit scripts and line mappings.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace warntrack {

/// 1-based closed interval of lines; empty when count == 0 (then `first`
/// is the position the empty range sits before).
struct LineRange {
    int first = 1;
    int count = 0;

    int last() const { return first + count - 1; }
    bool empty() const { return count == 0; }

    friend bool operator==(const LineRange&, const LineRange&) = default;
};

enum class HunkKind { Equal, Replace, Insert, Delete };

inline const char* to_string(HunkKind k)
{
    switch (k) {
    case HunkKind::Equal: return "EQUAL";
    case HunkKind::Replace: return "REPLACE";
    case HunkKind::Insert: return "INSERT";
    case HunkKind::Delete: return "DELETE";
    }
    return "EQUAL";
}

struct Hunk {
    LineRange pre;
    LineRange post;
    HunkKind kind = HunkKind::Equal;

    friend bool operator==(const Hunk&, const Hunk&) = default;
};

struct EditScript {
    std::vector<Hunk> hunks;
    int pre_size = 0;
    int post_size = 0;

    int equal_length() const
    {
        int n = 0;
        for (const auto& h : hunks)
            if (h.kind == HunkKind::Equal) n += h.pre.count;
        return n;
    }

    friend bool operator==(const EditScript&, const EditScript&) = default;
};

/// Files longer than this use the linear-space divide-and-conquer variant.
inline constexpr std::size_t kLinearSpaceThreshold = 20000;

namespace detail {

using LineSpan = std::span<const std::string>;

/// Appends matched index pairs (0-based) of an LCS of a[a0,a1) and b[b0,b1)
/// using the greedy Myers forward pass with a stored trace.
inline void myers_trace(LineSpan a, LineSpan b, int a0, int a1, int b0, int b1,
                        std::vector<std::pair<int, int>>& out)
{
    const int n = a1 - a0;
    const int m = b1 - b0;
    const int max = n + m;
    if (max == 0) return;
    const int offset = max + 1;
    std::vector<int> v(2 * static_cast<std::size_t>(max) + 3, 0);
    std::vector<std::vector<int>> trace;

    int final_d = 0;
    for (int d = 0; d <= max; ++d) {
        bool done = false;
        for (int k = -d; k <= d; k += 2) {
            int x;
            // Ties take the deletion step (advance in pre).
            if (k == -d || (k != d && v[offset + k - 1] < v[offset + k + 1]))
                x = v[offset + k + 1];
            else
                x = v[offset + k - 1] + 1;
            int y = x - k;
            while (x < n && y < m && a[a0 + x] == b[b0 + y]) {
                ++x;
                ++y;
            }
            v[offset + k] = x;
            if (x >= n && y >= m) {
                done = true;
                break;
            }
        }
        trace.emplace_back(v.begin() + offset - d - 1, v.begin() + offset + d + 2);
        if (done) {
            final_d = d;
            break;
        }
    }

    // Backtrack; snapshot d stores v[-d-1 .. d+1] after round d.
    std::vector<std::pair<int, int>> rev;
    int x = n;
    int y = m;
    for (int d = final_d; d > 0; --d) {
        const auto& prev = trace[static_cast<std::size_t>(d - 1)];
        auto at = [&](int k) { return prev[static_cast<std::size_t>(k + d)]; };  // prev spans [-d, d]
        int k = x - y;
        int prev_k = (k == -d || (k != d && at(k - 1) < at(k + 1))) ? k + 1 : k - 1;
        int prev_x = at(prev_k);
        int prev_y = prev_x - prev_k;
        while (x > prev_x && y > prev_y) {
            --x;
            --y;
            rev.emplace_back(a0 + x, b0 + y);
        }
        x = prev_x;
        y = prev_y;
    }
    while (x > 0 && y > 0) {
        --x;
        --y;
        rev.emplace_back(a0 + x, b0 + y);
    }
    out.insert(out.end(), rev.rbegin(), rev.rend());
}

struct Snake {
    int x, y, u, v;  // start (x,y) and end (u,v), relative offsets
    int d;
};

/// Myers' middle snake for a[a0,a1) vs b[b0,b1).
inline Snake middle_snake(LineSpan a, LineSpan b, int a0, int a1, int b0, int b1)
{
    const int n = a1 - a0;
    const int m = b1 - b0;
    const int delta = n - m;
    const bool odd = (delta & 1) != 0;
    const int max = (n + m + 1) / 2 + 1;
    const int offset = max + 1;
    std::vector<int> vf(2 * static_cast<std::size_t>(max) + 3, 0);
    std::vector<int> vb(2 * static_cast<std::size_t>(max) + 3, 0);
    vf[offset + 1] = 0;
    vb[offset + 1] = 0;

    for (int d = 0; d <= max; ++d) {
        for (int k = -d; k <= d; k += 2) {
            int x;
            if (k == -d || (k != d && vf[offset + k - 1] < vf[offset + k + 1]))
                x = vf[offset + k + 1];
            else
                x = vf[offset + k - 1] + 1;
            int y = x - k;
            int sx = x, sy = y;
            while (x < n && y < m && a[a0 + x] == b[b0 + y]) {
                ++x;
                ++y;
            }
            vf[offset + k] = x;
            int c = delta - k;  // backward diagonal
            if (odd && c >= -(d - 1) && c <= d - 1 && x + vb[offset + c] >= n)
                return {sx, sy, x, y, 2 * d - 1};
        }
        for (int c = -d; c <= d; c += 2) {
            int x;
            if (c == -d || (c != d && vb[offset + c - 1] < vb[offset + c + 1]))
                x = vb[offset + c + 1];
            else
                x = vb[offset + c - 1] + 1;
            int y = x - c;
            int ex = x, ey = y;
            while (x < n && y < m && a[a1 - 1 - x] == b[b1 - 1 - y]) {
                ++x;
                ++y;
            }
            vb[offset + c] = x;
            int k = delta - c;
            if (!odd && k >= -d && k <= d && x + vf[offset + k] >= n)
                return {n - x, m - y, n - ex, m - ey, 2 * d};
        }
    }
    return {0, 0, 0, 0, n + m};  // unreachable
}

inline void myers_linear(LineSpan a, LineSpan b, int a0, int a1, int b0, int b1,
                         std::vector<std::pair<int, int>>& out)
{
    // Common prefix / suffix.
    while (a0 < a1 && b0 < b1 && a[a0] == b[b0]) out.emplace_back(a0++, b0++);
    std::vector<std::pair<int, int>> tail;
    while (a0 < a1 && b0 < b1 && a[a1 - 1] == b[b1 - 1]) tail.emplace_back(--a1, --b1);

    if (a0 < a1 && b0 < b1) {
        auto s = middle_snake(a, b, a0, a1, b0, b1);
        if (s.d <= 1) {
            // At most one edit: the shorter side is a subsequence of the other.
            myers_trace(a, b, a0, a1, b0, b1, out);
        } else {
            myers_linear(a, b, a0, a0 + s.x, b0, b0 + s.y, out);
            for (int i = 0; i < s.u - s.x; ++i) out.emplace_back(a0 + s.x + i, b0 + s.y + i);
            myers_linear(a, b, a0 + s.u, a1, b0 + s.v, b1, out);
        }
    }
    out.insert(out.end(), tail.rbegin(), tail.rend());
}

/// Groups matched index pairs into hunks covering both files.
inline EditScript hunks_from_matches(int n, int m, const std::vector<std::pair<int, int>>& matches)
{
    EditScript s;
    s.pre_size = n;
    s.post_size = m;
    int i = 0;
    int j = 0;
    auto flush_gap = [&](int to_i, int to_j) {
        int dn = to_i - i;
        int dm = to_j - j;
        if (dn == 0 && dm == 0) return;
        HunkKind kind = dn == 0 ? HunkKind::Insert : dm == 0 ? HunkKind::Delete : HunkKind::Replace;
        s.hunks.push_back({{i + 1, dn}, {j + 1, dm}, kind});
        i = to_i;
        j = to_j;
    };
    std::size_t p = 0;
    while (p < matches.size()) {
        flush_gap(matches[p].first, matches[p].second);
        int run = 0;
        while (p < matches.size() && matches[p].first == i + run && matches[p].second == j + run) {
            ++run;
            ++p;
        }
        s.hunks.push_back({{i + 1, run}, {j + 1, run}, HunkKind::Equal});
        i += run;
        j += run;
    }
    flush_gap(n, m);
    return s;
}

}  // namespace detail

/// LCS-optimal line diff. Lines compare byte-for-byte (terminators are
/// already stripped by the loader).
inline EditScript compute_diff(std::span<const std::string> pre, std::span<const std::string> post,
                               std::size_t linear_space_threshold = kLinearSpaceThreshold)
{
    const int n = static_cast<int>(pre.size());
    const int m = static_cast<int>(post.size());
    std::vector<std::pair<int, int>> matches;
    if (pre.size() > linear_space_threshold || post.size() > linear_space_threshold) {
        detail::myers_linear(pre, post, 0, n, 0, m, matches);
    } else {
        // Trim the common prefix/suffix before the quadratic-memory pass.
        int a0 = 0, b0 = 0, a1 = n, b1 = m;
        while (a0 < a1 && b0 < b1 && pre[a0] == post[b0]) matches.emplace_back(a0++, b0++);
        std::vector<std::pair<int, int>> tail;
        while (a0 < a1 && b0 < b1 && pre[a1 - 1] == post[b1 - 1]) tail.emplace_back(--a1, --b1);
        detail::myers_trace(pre, post, a0, a1, b0, b1, matches);
        matches.insert(matches.end(), tail.rbegin(), tail.rend());
    }
    return detail::hunks_from_matches(n, m, matches);
}

/// Image of one pre line in the post file.
struct LineImage {
    enum class Kind { Exact, Interval, Absent };
    Kind kind = Kind::Absent;
    int first = 0;
    int last = 0;

    friend bool operator==(const LineImage&, const LineImage&) = default;
};

struct LineMapping {
    std::vector<LineImage> images;  // images[i] is pre line i+1

    const LineImage& image(int pre_line) const { return images.at(static_cast<std::size_t>(pre_line - 1)); }
    int size() const { return static_cast<int>(images.size()); }
};

inline LineMapping build_line_mapping(const EditScript& script)
{
    LineMapping m;
    m.images.resize(static_cast<std::size_t>(script.pre_size));
    for (const auto& h : script.hunks) {
        for (int k = 0; k < h.pre.count; ++k) {
            auto& img = m.images[static_cast<std::size_t>(h.pre.first - 1 + k)];
            switch (h.kind) {
            case HunkKind::Equal:
                img = {LineImage::Kind::Exact, h.post.first + k, h.post.first + k};
                break;
            case HunkKind::Replace:
                img = {LineImage::Kind::Interval, h.post.first, h.post.last()};
                break;
            default:
                img = {};
                break;
            }
        }
    }
    return m;
}

struct Interval {
    int first = 0;
    int last = 0;

    int length() const { return last - first + 1; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Smallest post interval covering the images of [start, end]; nullopt when
/// every line is absent. Lines beyond the mapping count as absent.
inline std::optional<Interval> map_range(const LineMapping& m, int start, int end)
{
    std::optional<Interval> out;
    for (int line = std::max(start, 1); line <= std::min(end, m.size()); ++line) {
        const auto& img = m.image(line);
        if (img.kind == LineImage::Kind::Absent) continue;
        if (!out)
            out = Interval{img.first, img.last};
        else
            out = Interval{std::min(out->first, img.first), std::max(out->last, img.last)};
    }
    return out;
}

}  // namespace warntrack
