#include "csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gengm::cli {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::vector<std::string> numbered(const std::string& prefix, Index n) {
  std::vector<std::string> out;
  for (Index i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("write failed for " + path.string());
}

void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m,
                      const std::vector<std::string>& header) {
  if (static_cast<Index>(header.size()) != m.cols()) {
    throw InvalidInput("write_matrix_csv: header has " + std::to_string(header.size()) +
                       " names for " + std::to_string(m.cols()) + " columns");
  }
  std::string text;
  for (std::size_t j = 0; j < header.size(); ++j) text += (j ? "," : "") + header[j];
  text += '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) text += ',';
      text += format_double(m(i, j));
    }
    text += '\n';
  }
  write_text(path, text);
}

DenseMatrix read_matrix_csv(const std::filesystem::path& path, std::vector<std::string>* header) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  const std::string name = path.filename().string();
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput(name + ": missing header row");
  const auto head = split_line(line);
  const auto cols = static_cast<Index>(head.size());
  if (head.empty() || head.front().empty()) throw InvalidInput(name + ": empty header row");

  std::vector<std::vector<double>> rows;
  Index row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row;
    const auto cells = split_line(line);
    if (static_cast<Index>(cells.size()) != cols) {
      throw InvalidInput(name + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                         " columns, header has " + std::to_string(cols));
    }
    std::vector<double> values(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string& c = cells[j];
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), values[j]);
      if (c.empty() || ec != std::errc() || ptr != c.data() + c.size() || !std::isfinite(values[j])) {
        throw InvalidInput(name + ": row " + std::to_string(row) + ", column " + std::to_string(j + 1) +
                           " ('" + head[j] + "'): '" + c + "' is not a finite number");
      }
    }
    rows.push_back(std::move(values));
  }
  DenseMatrix m(static_cast<Index>(rows.size()), cols);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (header) *header = head;
  return m;
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw InvalidInput("Table: row width differs from header");
  rows_.push_back(std::move(row));
}

std::string Table::str() const {
  std::string text;
  auto emit = [&text](const std::vector<std::string>& r) {
    for (std::size_t j = 0; j < r.size(); ++j) text += (j ? "," : "") + r[j];
    text += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return text;
}

void Table::write(const std::filesystem::path& path) const { write_text(path, str()); }

}  // namespace gengm::cli
