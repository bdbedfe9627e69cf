#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cutplan {

/// Shortest round-trip decimal representation.
std::string format_real(double value);

/// Writes to a sibling temporary file, then renames over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Accumulates CSV text with a header row; cells are quoted when they contain
/// a delimiter, quote or newline.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(unsigned long long value);
  CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(unsigned long value) { return cell(static_cast<unsigned long long>(value)); }
  CsvWriter& cell(long value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(bool value) { return cell(std::string_view(value ? "true" : "false")); }
  CsvWriter& cell(const char* text) { return cell(std::string_view(text)); }
  CsvWriter& cell(const std::string& text) { return cell(std::string_view(text)); }
  void end_row();

  const std::string& str() const { return text_; }
  void save(const std::filesystem::path& path) const { atomic_write(path, text_); }

 private:
  std::string text_;
  bool row_open_ = false;
};

}  // namespace cutplan
