#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

namespace clubench::io {

/// Reads a whole file. Gzip members (detected by magic bytes) are inflated,
/// anything else is returned verbatim. Corrupt gzip streams throw ParseError.
std::string read_maybe_gzip(const std::filesystem::path& path);

/// Gzip with fixed level, zero mtime and no file name, so identical input
/// always yields identical bytes.
std::string gzip_compress(std::string_view text);

/// Writes via a temporary sibling and rename.
void write_file(const std::filesystem::path& path, std::string_view bytes);

inline void write_gzip(const std::filesystem::path& path, std::string_view text) {
  write_file(path, gzip_compress(text));
}

/// Calls fn(line_number, line) for each line; a trailing CR is stripped and a
/// final empty line after the last LF is not reported.
void for_each_line(std::string_view text,
                   const std::function<void(std::size_t, std::string_view)>& fn);

}  // namespace clubench::io
