#include "polyiv/sample.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "polyiv/common.hpp"

namespace polyiv::data {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_real(const std::string& cell, const char* col, long row) {
  double v;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || p != cell.data() + cell.size())
    throw UsageError("non-numeric value in column '" + std::string(col) + "', row " +
                     std::to_string(row));
  return v;
}

long parse_int(const std::string& cell, const char* col, long row) {
  long v;
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || p != cell.data() + cell.size())
    throw UsageError("non-integer value in column '" + std::string(col) + "', row " +
                     std::to_string(row));
  return v;
}

}  // namespace

void Sample::validate() const {
  if (y.empty()) throw UsageError("sample is empty");
  if (y.size() != x.size() || y.size() != w.size())
    throw UsageError("sample columns have mismatched lengths");
  if (K < 1) throw UsageError("sample K must be >= 1");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i]))
      throw UsageError("non-finite outcome at row " + std::to_string(i + 1));
    if (x[i] < 1 || x[i] > K)
      throw UsageError("category out of range {1.." + std::to_string(K) + "} at row " +
                       std::to_string(i + 1));
    if (w[i] != 0 && w[i] != 1)
      throw UsageError("invalid instrument value, row " + std::to_string(i + 1));
  }
}

bool Sample::instrument_complete() const {
  bool has0 = false, has1 = false;
  for (int wi : w) (wi == 0 ? has0 : has1) = true;
  return has0 && has1;
}

Sample load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw UsageError("empty file: " + path);
  auto header = split_line(line);
  auto find_col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw UsageError("missing column '" + name + "' in " + path);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t iy = find_col(schema.y_col);
  const std::size_t ix = find_col(schema.x_col);
  const std::size_t iw = find_col(schema.w_col);

  Sample s;
  long row = 1;  // header was row 1
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (cells.size() < header.size())
      throw UsageError("too few fields on row " + std::to_string(row));
    double yv = parse_real(cells[iy], schema.y_col.c_str(), row);
    if (!std::isfinite(yv))
      throw UsageError("non-finite outcome value, row " + std::to_string(row));
    long xv = parse_int(cells[ix], schema.x_col.c_str(), row);
    if (xv <= 0) throw UsageError("invalid category value, row " + std::to_string(row));
    long wv = parse_int(cells[iw], schema.w_col.c_str(), row);
    if (wv != 0 && wv != 1)
      throw UsageError("invalid instrument value, row " + std::to_string(row));
    s.y.push_back(yv);
    s.x.push_back(static_cast<int>(xv));
    s.w.push_back(static_cast<int>(wv));
  }
  if (s.y.empty()) throw UsageError("no data rows in " + path);

  int maxx = *std::max_element(s.x.begin(), s.x.end());
  if (schema.K_override > 0) {
    if (maxx > schema.K_override)
      throw UsageError("observed category " + std::to_string(maxx) +
                       " exceeds declared K=" + std::to_string(schema.K_override));
    s.K = schema.K_override;
  } else {
    s.K = maxx;
  }
  s.validate();
  return s;
}

void save_csv(const Sample& s, const std::string& path, const CsvSchema& schema) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write file: " + path);
  out << schema.y_col << ',' << schema.x_col << ',' << schema.w_col << '\n';
  out.precision(17);
  for (int i = 0; i < s.n(); ++i)
    out << s.y[static_cast<std::size_t>(i)] << ',' << s.x[static_cast<std::size_t>(i)] << ','
        << s.w[static_cast<std::size_t>(i)] << '\n';
}

long CellCounts::total() const { return std::accumulate(counts.begin(), counts.end(), 0L); }

CellCounts split_counts(const Sample& s) {
  s.validate();
  CellCounts c;
  c.K = s.K;
  c.counts.assign(static_cast<std::size_t>(2 * s.K), 0);
  for (int i = 0; i < s.n(); ++i)
    ++c.counts[static_cast<std::size_t>(s.w[static_cast<std::size_t>(i)] * s.K +
                                        s.x[static_cast<std::size_t>(i)] - 1)];
  return c;
}

}  // namespace polyiv::data
