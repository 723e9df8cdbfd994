#include "specprec/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace specprec {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

TimeSeriesPanel read_panel_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_panel_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("read_panel_csv: empty file " + path);
  }
  TimeSeriesPanel panel;
  for (const std::string& cell : split_line(line)) panel.names.push_back(trimmed(cell));
  const std::size_t p = panel.names.size();
  if (p == 0) throw std::invalid_argument("read_panel_csv: empty header row");

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != p) {
      throw std::invalid_argument("read_panel_csv: row " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(p));
    }
    std::vector<double> values(p);
    for (std::size_t c = 0; c < p; ++c) {
      const std::string cell = trimmed(cells[c]);
      char* end = nullptr;
      values[c] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(values[c])) {
        throw std::invalid_argument("read_panel_csv: non-numeric cell at row " +
                                    std::to_string(line_no) + ", column " + std::to_string(c + 1));
      }
    }
    rows.push_back(std::move(values));
  }
  if (rows.size() < 2) {
    throw std::invalid_argument("read_panel_csv: need at least two data rows, got " +
                                std::to_string(rows.size()));
  }
  panel.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < p; ++c) {
      panel.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return panel;
}

void write_panel_csv(const std::string& path, const TimeSeriesPanel& panel) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_panel_csv: cannot open " + path);
  for (Eigen::Index c = 0; c < panel.p(); ++c) {
    if (c > 0) out << ',';
    out << (c < static_cast<Eigen::Index>(panel.names.size()) ? panel.names[c]
                                                              : "x" + std::to_string(c + 1));
  }
  out << '\n';
  char buf[64];
  for (Eigen::Index r = 0; r < panel.n(); ++r) {
    for (Eigen::Index c = 0; c < panel.p(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", panel.values(r, c));
      if (c > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace specprec
