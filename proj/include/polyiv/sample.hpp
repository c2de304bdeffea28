#pragma once

#include <string>
#include <vector>

namespace polyiv::data {

// One observed dataset (Y_i, X_i, W_i), X in {1..K}, W in {0,1}.
struct Sample {
  int K = 0;
  std::vector<double> y;
  std::vector<int> x;
  std::vector<int> w;

  int n() const { return static_cast<int>(y.size()); }

  // Enforces the structural invariants (lengths, ranges, finite y).
  // Does NOT require both instrument values; estimators check that themselves.
  void validate() const;

  bool instrument_complete() const;  // both w=0 and w=1 occur
};

struct CsvSchema {
  std::string y_col = "y";
  std::string x_col = "x";
  std::string w_col = "w";
  int K_override = 0;  // 0: K = max observed x
};

Sample load_csv(const std::string& path, const CsvSchema& schema = {});
void save_csv(const Sample& s, const std::string& path, const CsvSchema& schema = {});

// Cell counts n_{l,k} = #{i: W_i = l, X_i = k}.
struct CellCounts {
  int K = 0;
  std::vector<long> counts;  // index l*K + (k-1)
  long at(int l, int k) const { return counts[static_cast<std::size_t>(l * K + k - 1)]; }
  long total() const;
};

CellCounts split_counts(const Sample& s);

}  // namespace polyiv::data
