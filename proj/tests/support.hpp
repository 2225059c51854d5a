#pragma once

// Shared plumbing for the unit and acceptance suites.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "patreg/csv.hpp"
#include "patreg/indicators.hpp"
#include "patreg/oracle.hpp"
#include "patreg/render.hpp"
#include "patreg/scenarios.hpp"
#include "patreg/store.hpp"

namespace support {

inline std::filesystem::path make_temp_dir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "patreg_XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  return tmpl;
}

struct TempDir {
  std::filesystem::path path = make_temp_dir();
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

/// Cell of the rendered CSV row whose `key_column` equals `key`; nullopt when
/// no such row or column exists.
inline std::optional<std::string> lookup_cell(const std::string& csv_bytes,
                                              const std::string& key_column,
                                              const std::string& key,
                                              const std::string& column) {
  patreg::csv::Reader reader(csv_bytes);
  std::vector<std::string> fields;
  std::size_t line = 0;
  if (!reader.next_record(fields, line)) return std::nullopt;
  std::size_t key_idx = fields.size();
  std::size_t col_idx = fields.size();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i] == key_column) key_idx = i;
    if (fields[i] == column) col_idx = i;
  }
  if (key_idx == fields.size() || col_idx == fields.size()) return std::nullopt;
  while (reader.next_record(fields, line)) {
    if (key_idx < fields.size() && fields[key_idx] == key) return fields[col_idx];
  }
  return std::nullopt;
}

/// Runs every pinned scenario expectation through both evaluation paths and
/// returns a description of each failure (empty = all reference values hit).
inline std::vector<std::string> expectation_failures(
    const patreg::Dataset& dataset, const patreg::IndexedStore& store,
    const std::vector<patreg::ScenarioSpec>& specs) {
  std::vector<std::string> failures;
  for (const auto& spec : specs) {
    for (const auto& exp : spec.expectations) {
      patreg::IndicatorParams params;
      params.mode = exp.mode;
      params.ordering = exp.ordering;
      params.step_mode = exp.step_mode;
      const patreg::Cohort cohort = patreg::select_cohort(store, params.cohort_spec);
      const patreg::Cohort naive_cohort = patreg::oracle::select_cohort(dataset, params.cohort_spec);
      const std::string key_column =
          exp.kind == patreg::IndicatorKind::AvgProcedureSteps ? "name" : "id";

      const auto indexed = patreg::evaluate_indexed(store, exp.kind, cohort, params);
      const auto naive = patreg::oracle::evaluate_naive(dataset, exp.kind, naive_cohort, params);
      for (const auto& [label, output] :
           {std::pair<const char*, const patreg::IndicatorOutput&>{"indexed", indexed},
            std::pair<const char*, const patreg::IndicatorOutput&>{"naive", naive}}) {
        const std::string table = patreg::render_output_csv(exp.kind, output, exp.mode);
        const auto cell = lookup_cell(table, key_column, exp.row_key, exp.column);
        if (!cell) {
          failures.push_back(spec.label + " (" + label + "): no row " + exp.row_key + " in " +
                             std::string(patreg::indicator_name(exp.kind)));
        } else if (*cell != exp.expected) {
          failures.push_back(spec.label + " (" + label + "): " +
                             std::string(patreg::indicator_name(exp.kind)) + "." + exp.column +
                             " = " + *cell + ", expected " + exp.expected);
        }
      }
    }
  }
  return failures;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Byte-compares two directories over the canonical table files plus any
/// extra named files.
inline bool directories_identical(const std::filesystem::path& a,
                                  const std::filesystem::path& b,
                                  const std::vector<std::string>& names) {
  for (const auto& name : names) {
    if (!std::filesystem::exists(a / name) || !std::filesystem::exists(b / name)) return false;
    if (read_file(a / name) != read_file(b / name)) return false;
  }
  return true;
}

}  // namespace support
