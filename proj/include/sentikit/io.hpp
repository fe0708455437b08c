#pragma once

#include "sentikit/error.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

namespace sentikit::io {

[[nodiscard]] inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in{ path, std::ios::binary };
    if (!in) {
        throw io_error("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes `content` to a sibling temp file and renames it over `path`, so
/// readers never observe a partially written file.
inline void write_file_atomic(const std::filesystem::path &path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw io_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
        }
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out{ tmp, std::ios::binary | std::ios::trunc };
        if (!out) {
            throw io_error("cannot write file: " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp, ec);
            throw io_error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw io_error("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

/// 64-bit FNV-1a; used only for provenance fingerprints in reports.
[[nodiscard]] constexpr std::uint64_t fnv1a(std::string_view data) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

[[nodiscard]] inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace sentikit::io
