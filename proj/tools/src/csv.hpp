#pragma once

// CSV persistence: a header row, then one record per line, numbers printed
// with 17 significant digits so every double round-trips exactly.

#include <filesystem>
#include <string>
#include <vector>

#include "gengm/linalg.hpp"

namespace gengm::cli {

/// Shortest locale-free text with 17 significant digits.
std::string format_double(double v);

/// prefix1, ..., prefixN.
std::vector<std::string> numbered(const std::string& prefix, Index n);

void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m,
                      const std::vector<std::string>& header);

/// Reads a numeric CSV with a header row. Malformed cells raise InvalidInput
/// naming the file, 1-based data row and column.
DenseMatrix read_matrix_csv(const std::filesystem::path& path,
                            std::vector<std::string>* header = nullptr);

/// Row-oriented text table with a header; cells are written verbatim.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace gengm::cli
