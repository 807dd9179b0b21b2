#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dem/dataset.hpp"

// CSV ingestion: comma-separated, first row header, UTF-8, quoted fields.
// No type inference; every column's role comes from the declared schema.

namespace dem {

class ingest_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input_path;
  std::string group_col;
  std::string group_a_value;
  std::string group_b_value;
  std::string outcome_col;
  std::string outcome_positive = "1";
  std::vector<std::string> covariate_cols;
  std::vector<std::string> numeric_cols;  // covariate columns parsed as numbers
  std::string format = "json";            // json | text
  std::string out_path;                   // empty = stdout
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000;
  std::uint64_t budget = 1'000'000;
};

inline std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;
  char ch;
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !field.empty() || !row.empty()) {
          row.push_back(std::move(field));
          field.clear();
          rows.push_back(std::move(row));
          row.clear();
          row_has_content = false;
        }
        break;
      default:
        field += ch;
        row_has_content = true;
    }
  }
  if (in_quotes) throw ingest_error("unterminated quoted field at end of input");
  if (row_has_content || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Dataset ingest_csv(const RunConfig& config) {
  if (config.covariate_cols.empty()) throw ingest_error("no covariate columns configured");
  std::ifstream file(config.input_path, std::ios::binary);
  if (!file) throw ingest_error("cannot open input file '" + config.input_path + "'");
  auto rows = parse_csv(file);
  if (rows.empty()) throw ingest_error("input file is empty");

  const auto& header = rows.front();
  auto column_index = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ingest_error("column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };

  const std::size_t group_idx = column_index(config.group_col);
  const std::size_t outcome_idx = column_index(config.outcome_col);
  std::vector<std::size_t> cov_idx;
  std::vector<ColumnKind> cov_kind;
  for (const auto& name : config.covariate_cols) {
    cov_idx.push_back(column_index(name));
    const bool numeric = std::find(config.numeric_cols.begin(), config.numeric_cols.end(),
                                   name) != config.numeric_cols.end();
    cov_kind.push_back(numeric ? ColumnKind::Numeric : ColumnKind::Token);
  }

  Dataset d;
  d.covariate_names = config.covariate_cols;
  d.positive_outcome = "1";

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "row " + std::to_string(r + 1);
    if (row.size() != header.size())
      throw ingest_error(where + ": has " + std::to_string(row.size()) + " fields, header has " +
                         std::to_string(header.size()));

    Patient p;
    p.id = "row" + std::to_string(r + 1);

    const std::string group_value = trim(row[group_idx]);
    if (group_value == config.group_a_value) {
      p.group = Group::A;
    } else if (group_value == config.group_b_value) {
      p.group = Group::B;
    } else {
      throw ingest_error(where + ", column '" + config.group_col + "': group value '" +
                         group_value + "' not mapped to a therapy group");
    }

    const std::string outcome_value = trim(row[outcome_idx]);
    if (outcome_value.empty())
      throw ingest_error(where + ", column '" + config.outcome_col + "': empty outcome value");
    p.outcome = outcome_value == config.outcome_positive ? "1" : "0";

    for (std::size_t c = 0; c < cov_idx.size(); ++c) {
      const std::string& cell = row[cov_idx[c]];
      if (trim(cell).empty())
        throw ingest_error(where + ", column '" + config.covariate_cols[c] +
                           "': missing covariate value");
      try {
        p.covariates.push_back(cov_kind[c] == ColumnKind::Numeric
                                   ? CovariateEntry::make_numeric(cell)
                                   : CovariateEntry::make_token(cell));
      } catch (const invalid_input& e) {
        throw ingest_error(where + ", column '" + config.covariate_cols[c] + "': " + e.what());
      }
    }
    (p.group == Group::A ? d.group_a : d.group_b).push_back(std::move(p));
  }

  if (d.group_a.empty() || d.group_b.empty())
    throw ingest_error("both therapy groups must be non-empty (|A|=" +
                       std::to_string(d.group_a.size()) + ", |B|=" +
                       std::to_string(d.group_b.size()) + ")");
  return d;
}

}  // namespace dem
