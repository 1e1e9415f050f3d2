// CSV ingestion and the declared preprocessing recipe: drop columns, binarize
// the protected attribute, one-hot encode categoricals, z-score numerics.

#include "facroc/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "facroc/common.hpp"
#include "json.hpp"

namespace facroc {

void DatasetSchema::validate() const {
  if (name.empty()) throw data_error("schema: missing dataset name");
  if (protected_column.empty())
    throw data_error("schema '" + name + "': missing protected_column");
  if (protected_positive_values.empty())
    throw data_error("schema '" + name + "': protected_positive_values is empty");
  auto contains = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  if (contains(drop_columns, protected_column) ||
      contains(categorical_columns, protected_column) ||
      contains(numeric_columns, protected_column))
    throw data_error("schema '" + name +
                     "': protected column may not be dropped or used as a feature");
  for (const auto& c : categorical_columns)
    if (contains(numeric_columns, c))
      throw data_error("schema '" + name + "': column '" + c +
                       "' is listed as both categorical and numeric");
}

DatasetSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open schema file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw data_error("schema '" + path + "': " + e.what());
  }
  DatasetSchema s;
  try {
    s.name = j.at("name").get<std::string>();
    s.csv_path = j.at("csv_path").get<std::string>();
    s.protected_column = j.at("protected_column").get<std::string>();
    for (const auto& v : j.at("protected_positive_values"))
      s.protected_positive_values.insert(v.get<std::string>());
    s.drop_columns = j.value("drop_columns", std::vector<std::string>{});
    s.categorical_columns = j.value("categorical_columns", std::vector<std::string>{});
    s.numeric_columns = j.value("numeric_columns", std::vector<std::string>{});
    std::string policy = j.value("na_policy", std::string("drop_row"));
    if (policy == "drop_row")
      s.na_policy = NaPolicy::drop_row;
    else if (policy == "error")
      s.na_policy = NaPolicy::error;
    else
      throw data_error("schema '" + s.name + "': unknown na_policy '" + policy + "'");
    if (j.contains("na_values")) {
      s.na_values.clear();
      for (const auto& v : j.at("na_values")) s.na_values.insert(v.get<std::string>());
    }
    std::string delim = j.value("delimiter", std::string(","));
    if (delim.size() != 1)
      throw data_error("schema '" + s.name + "': delimiter must be one character");
    s.delimiter = delim[0];
  } catch (const nlohmann::json::exception& e) {
    throw data_error("schema '" + path + "': " + e.what());
  }
  s.validate();
  return s;
}

std::size_t DataTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw data_error("missing declared column: " + name);
}

namespace {

// RFC 4180 field splitting with a configurable delimiter. Returns false at
// end of input.
bool parse_record(std::istream& in, char delim, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool in_quotes = false;
  bool started = false;
  int c;
  while ((c = in.get()) != EOF) {
    started = true;
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == delim) {
      out.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r') {
      if (in.peek() == '\n') in.get();
      out.push_back(std::move(field));
      return true;
    } else if (ch == '\n') {
      out.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
    }
  }
  if (!started) return false;
  out.push_back(std::move(field));
  return true;
}

}  // namespace

DataTable load_csv(const DatasetSchema& schema) {
  std::ifstream in(schema.csv_path, std::ios::binary);
  if (!in) throw data_error("cannot open dataset file: " + schema.csv_path);

  DataTable table;
  std::vector<std::string> record;
  if (!parse_record(in, schema.delimiter, record) ||
      (record.size() == 1 && record[0].empty()))
    throw data_error(schema.csv_path + ": no header");
  table.header = record;

  // Columns whose values participate in cleaning and features.
  std::vector<std::size_t> used;
  used.push_back(table.column_index(schema.protected_column));
  for (const auto& c : schema.categorical_columns) used.push_back(table.column_index(c));
  for (const auto& c : schema.numeric_columns) used.push_back(table.column_index(c));
  for (const auto& c : schema.drop_columns) table.column_index(c);  // must exist

  std::size_t row_index = 0;
  while (parse_record(in, schema.delimiter, record)) {
    ++row_index;
    if (record.size() == 1 && record[0].empty()) continue;  // trailing blank line
    if (record.size() != table.header.size()) {
      std::ostringstream msg;
      msg << schema.csv_path << ": ragged row " << row_index << " has "
          << record.size() << " cells, expected " << table.header.size();
      throw data_error(msg.str());
    }
    ++table.n_raw;
    bool has_na = false;
    for (std::size_t c : used) {
      std::string cell = record[c];
      // surrounding blanks are not data
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t") + 1);
      if (schema.na_values.count(cell)) {
        has_na = true;
        break;
      }
    }
    if (has_na) {
      if (schema.na_policy == NaPolicy::error) {
        std::ostringstream msg;
        msg << schema.csv_path << ": missing value in row " << row_index;
        throw data_error(msg.str());
      }
      continue;  // drop_row
    }
    table.rows.push_back(record);
  }
  table.n_clean = table.rows.size();
  return table;
}

std::size_t FeatureMatrix::count_group(bool protected_group) const {
  std::size_t c = 0;
  for (auto g : groups)
    if ((g != 0) == protected_group) ++c;
  return c;
}

void FeatureMatrix::validate() const {
  if (n < 2) throw data_error("feature matrix needs at least two points");
  if (d < 1) throw data_error("feature matrix has no columns");
  if (values.size() != n * d || groups.size() != n)
    throw data_error("feature matrix shape mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw data_error("non-finite value in feature matrix");
  if (count_group(true) == 0 || count_group(false) == 0)
    throw data_error("protected column yields an empty group");
}

namespace {

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, const std::string& column,
                    std::size_t row) {
  try {
    std::size_t pos = 0;
    double v = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    std::ostringstream msg;
    msg << "column '" << column << "', row " << row + 1
        << ": cannot parse numeric value '" << cell << "'";
    throw data_error(msg.str());
  }
}

}  // namespace

FeatureMatrix preprocess(const DataTable& table, const DatasetSchema& schema) {
  const std::size_t n = table.rows.size();
  if (n < 2) throw data_error("dataset '" + schema.name + "': fewer than two rows");

  FeatureMatrix fm;
  fm.n = n;

  const std::size_t prot = table.column_index(schema.protected_column);
  fm.groups.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    fm.groups[i] =
        schema.protected_positive_values.count(trimmed(table.rows[i][prot])) ? 1 : 0;

  fm.point_ids.resize(n);
  for (std::size_t i = 0; i < n; ++i) fm.point_ids[i] = "r" + std::to_string(i);

  // Column plan: one-hot blocks for categoricals (levels sorted for a stable
  // layout), then standardized numerics.
  struct Block {
    std::size_t src;
    std::vector<std::string> levels;  // categorical; empty means numeric
    std::string name;
  };
  std::vector<Block> blocks;
  for (const auto& col : schema.categorical_columns) {
    Block b;
    b.src = table.column_index(col);
    b.name = col;
    std::set<std::string> levels;
    for (const auto& row : table.rows) levels.insert(trimmed(row[b.src]));
    b.levels.assign(levels.begin(), levels.end());
    blocks.push_back(std::move(b));
  }

  std::vector<std::vector<double>> numeric_cols;
  std::vector<std::string> numeric_names;
  for (const auto& col : schema.numeric_columns) {
    std::size_t src = table.column_index(col);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i)
      vals[i] = parse_number(trimmed(table.rows[i][src]), col, i);
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(n);
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);  // population variance
    double sd = std::sqrt(var);
    if (sd <= 0 || !std::isfinite(sd)) {
      fm.warnings.push_back("dropped constant numeric column '" + col + "'");
      continue;
    }
    for (double& v : vals) v = (v - mean) / sd;
    numeric_cols.push_back(std::move(vals));
    numeric_names.push_back(col);
  }

  std::size_t d = numeric_cols.size();
  for (const auto& b : blocks) d += b.levels.size();
  if (d == 0) throw data_error("dataset '" + schema.name + "': no usable feature columns");
  fm.d = d;
  fm.values.assign(n * d, 0.0);

  std::size_t col = 0;
  for (const auto& b : blocks) {
    std::map<std::string, std::size_t> level_of;
    for (std::size_t l = 0; l < b.levels.size(); ++l) {
      level_of[b.levels[l]] = l;
      fm.feature_names.push_back(b.name + "=" + b.levels[l]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t l = level_of.at(trimmed(table.rows[i][b.src]));
      fm.values[i * d + col + l] = 1.0;
    }
    col += b.levels.size();
  }
  for (std::size_t c = 0; c < numeric_cols.size(); ++c) {
    fm.feature_names.push_back(numeric_names[c]);
    for (std::size_t i = 0; i < n; ++i) fm.values[i * d + col] = numeric_cols[c][i];
    ++col;
  }

  fm.validate();
  return fm;
}

}  // namespace facroc
