// Shared builders for the unit tests.
#pragma once

#include <warntrack/core_model.hpp>
#include <warntrack/ingest.hpp>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using warntrack::Side;
using warntrack::WarningInstance;

inline WarningInstance warn(std::string type, std::string file, int start, int end,
                            Side side = Side::Pre, std::string cls = "C", std::string method = "",
                            int ordinal = 0)
{
    WarningInstance w;
    w.warning_type = std::move(type);
    w.project = "demo";
    w.class_name = std::move(cls);
    w.method_name = std::move(method);
    w.file_path = std::move(file);
    w.start_line = start;
    w.end_line = end;
    w.side = side;
    w.ordinal = ordinal;
    return w;
}

/// SE_BAD_FIELD warning in jclouds ContextBuilder.java, lines 70-75.
inline WarningInstance sample_warning(Side side = Side::Pre)
{
    WarningInstance w;
    w.warning_type = "SE_BAD_FIELD";
    w.project = "jclouds";
    w.class_name = "ContextBuilderTest";
    w.file_path = "org/jclouds/ContextBuilder.java";
    w.start_line = 70;
    w.end_line = 75;
    w.side = side;
    return w;
}

inline WarningInstance on_side(WarningInstance w, Side side)
{
    w.side = side;
    return w;
}

/// Numbered distinct lines: "<tag> 1", "<tag> 2", ...
inline std::vector<std::string> numbered(const std::string& tag, int n)
{
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(tag + " " + std::to_string(i));
    return out;
}

inline std::string join(const std::vector<std::string>& lines)
{
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

/// Fresh scratch directory under the system temp dir.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("warntrack_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    std::filesystem::path path_;
};

}  // namespace fixtures
