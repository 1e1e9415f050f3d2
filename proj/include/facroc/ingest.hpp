#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace facroc {

enum class NaPolicy { drop_row, error };

// Declarative preprocessing recipe for one dataset. Ships as a JSON config
// file; see schemas/ for the packaged datasets.
struct DatasetSchema {
  std::string name;
  std::string csv_path;
  std::string protected_column;
  std::set<std::string> protected_positive_values;  // values mapped to group p
  std::vector<std::string> drop_columns;
  std::vector<std::string> categorical_columns;
  std::vector<std::string> numeric_columns;
  NaPolicy na_policy = NaPolicy::drop_row;
  std::set<std::string> na_values = {"", "?", "NA"};
  char delimiter = ',';

  void validate() const;  // throws data_error on inconsistent schema
};

DatasetSchema load_schema(const std::string& path);

struct DataTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // cleaned rows
  std::size_t n_raw = 0;                       // parsed data rows before cleaning
  std::size_t n_clean = 0;

  std::size_t column_index(const std::string& name) const;  // throws if absent
};

// Numeric feature matrix after encoding/scaling. groups[i] == 1 means the
// point belongs to the protected group p.
struct FeatureMatrix {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> values;  // row-major, n*d
  std::vector<std::uint8_t> groups;
  std::vector<std::string> point_ids;
  std::vector<std::string> feature_names;
  std::vector<std::string> warnings;  // e.g. constant columns that were dropped

  double at(std::size_t i, std::size_t j) const { return values[i * d + j]; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * d, d};
  }
  std::size_t count_group(bool protected_group) const;
  void validate() const;  // finiteness, n >= 2, both groups non-empty
};

DataTable load_csv(const DatasetSchema& schema);
FeatureMatrix preprocess(const DataTable& table, const DatasetSchema& schema);

}  // namespace facroc
