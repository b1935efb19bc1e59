#pragma once

#include <string>
#include <vector>

namespace degenwave {

/// Round-trip decimal formatting (17 significant digits) used for every
/// numeric CSV column.
std::string format_full(double x);

/// Minimal CSV emitter: comma separators, LF line endings, mandatory header,
/// no quoting (no field ever contains a comma). Rows are buffered and written
/// in insertion order so callers control determinism.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void write(const std::string& path) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace degenwave
