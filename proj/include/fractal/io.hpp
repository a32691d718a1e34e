#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fractal {

/// Locale-independent decimal formatting ('.' separator, shortest round-trip).
std::string format_double(double v);

/// One CSV file: header row, comma separators, LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  std::string to_string() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes to `<path>.tmp` then renames over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// FNV-1a over the bytes, hex-encoded; used to stamp reports with their config.
std::string content_hash(const std::string& bytes);

/// Resolves the experiment output directory: the explicit argument if
/// nonempty, else the FRACTAL_OUTPUT_DIR environment variable, else ".".
std::filesystem::path resolve_output_dir(const std::string& requested);

}  // namespace fractal
