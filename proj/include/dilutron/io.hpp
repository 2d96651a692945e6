#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dilutron/dilution.hpp"
#include "dilutron/states.hpp"

namespace dilutron {

/// Canonical number text: 17 significant digits.
std::string format_number(double x);

// State files: {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}, rows
// A-major. Parse errors are ErrorKind::kInput naming the offending field.
DensityOperator parse_state(std::string_view text);
std::string state_to_json(const DensityOperator& rho);
DensityOperator load_state(const std::string& path);

// Ensemble files: {"weights": [...], "states": [state, ...]} where each state
// is either a rank-1 state object as above or {"dims": [...], "vector":
// [[re, im], ...]}.
PureStateEnsemble parse_ensemble(std::string_view text);
std::string ensemble_to_json(const PureStateEnsemble& ensemble);
PureStateEnsemble load_ensemble(const std::string& path);

/// Ordered JSON object writer; keys are emitted in insertion order.
class JsonObject {
 public:
  JsonObject& add(std::string_view key, double value);
  JsonObject& add(std::string_view key, int value);
  JsonObject& add(std::string_view key, long value);
  JsonObject& add(std::string_view key, std::uint64_t value);
  JsonObject& add(std::string_view key, bool value);
  JsonObject& add(std::string_view key, std::string_view value);
  JsonObject& add(std::string_view key, const char* value) { return add(key, std::string_view(value)); }
  JsonObject& add(std::string_view key, const std::vector<double>& values);
  JsonObject& add(std::string_view key, const JsonObject& value);
  /// Raw, already-serialized JSON.
  JsonObject& add_raw(std::string_view key, std::string raw);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_string(std::string_view s);
std::string complex_matrix_json(const ComplexMatrix& m);

JsonObject report_json(const DilutionReport& report);

/// CSV with a mandatory header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string read_text_file(const std::string& path);
/// Writes to `path.tmp.<pid>` then renames over `path`.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace dilutron
