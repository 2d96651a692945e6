#include "dilutron/io.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "dilutron/error.hpp"

namespace dilutron {

namespace {

using nlohmann::json;

constexpr double kNormTol = 1e-10;

[[noreturn]] void input_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kInput, fmt::format("field \"{}\": {}", field, what));
}

// Drops the "<kind>: " prefix carried by Error::what().
std::string bare_message(const Error& e) {
  const std::string s = e.what();
  const auto pos = s.find(": ");
  return pos == std::string::npos ? s : s.substr(pos + 2);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kInput, fmt::format("malformed JSON: {}", e.what()));
  }
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) input_error(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) input_error(field, "not finite");
  return x;
}

Complex complex_at(const json& j, const std::string& field) {
  if (j.is_number()) return Complex(number_at(j, field), 0.0);
  if (!j.is_array() || j.size() != 2) input_error(field, "expected [re, im]");
  return Complex(number_at(j[0], field + "[0]"), number_at(j[1], field + "[1]"));
}

Dims dims_at(const json& obj, const std::string& prefix) {
  const std::string field = prefix + "dims";
  if (!obj.contains("dims")) input_error(field, "missing");
  const json& d = obj["dims"];
  if (!d.is_array() || d.size() != 2) input_error(field, "expected [dA, dB]");
  int out[2];
  for (int k = 0; k < 2; ++k) {
    if (!d[k].is_number_integer() || d[k].get<long long>() < 1 || d[k].get<long long>() > 64)
      input_error(fmt::format("{}[{}]", field, k), "expected an integer in [1, 64]");
    out[k] = d[k].get<int>();
  }
  return Dims{out[0], out[1]};
}

ComplexMatrix matrix_at(const json& obj, Dims dims, const std::string& prefix) {
  const std::string field = prefix + "matrix";
  if (!obj.contains("matrix")) input_error(field, "missing");
  const json& m = obj["matrix"];
  const int n = dims.total();
  if (!m.is_array() || static_cast<int>(m.size()) != n) input_error(field, fmt::format("expected {} rows", n));
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string row = fmt::format("{}[{}]", field, i);
    if (!m[i].is_array() || static_cast<int>(m[i].size()) != n) input_error(row, fmt::format("expected {} entries", n));
    for (int k = 0; k < n; ++k) out(i, k) = complex_at(m[i][k], fmt::format("{}[{}]", row, k));
  }
  return out;
}

DensityOperator state_at(const json& obj, const std::string& prefix) {
  if (!obj.is_object()) input_error(prefix.empty() ? "state" : prefix.substr(0, prefix.size() - 1), "expected an object");
  const Dims dims = dims_at(obj, prefix);
  const ComplexMatrix m = matrix_at(obj, dims, prefix);
  try {
    return DensityOperator::validate(m, dims);
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("field \"{}matrix\": {}", prefix, bare_message(e)));
  }
}

ComplexVector pure_vector_at(const json& obj, Dims expected, const std::string& prefix) {
  if (!obj.is_object()) input_error(prefix.substr(0, prefix.size() - 1), "expected an object");
  const Dims dims = dims_at(obj, prefix);
  if (!(dims == expected)) input_error(prefix + "dims", "differs from the first state's dims");
  if (obj.contains("vector")) {
    const json& v = obj["vector"];
    const int n = dims.total();
    if (!v.is_array() || static_cast<int>(v.size()) != n) input_error(prefix + "vector", fmt::format("expected {} entries", n));
    ComplexVector out(n);
    for (int k = 0; k < n; ++k) out(k) = complex_at(v[k], fmt::format("{}vector[{}]", prefix, k));
    if (std::abs(out.norm() - 1.0) > kNormTol) input_error(prefix + "vector", "not normalized");
    return out / out.norm();
  }
  const DensityOperator rho = state_at(obj, prefix);
  if (state_rank(rho) != 1) input_error(prefix + "matrix", "ensemble members must be pure");
  const auto eig = hermitian_eig(rho.matrix());
  ComplexVector out = eig.eigenvectors.col(0);
  return out / out.norm();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kInput, fmt::format("cannot open \"{}\" for writing", path));
  out << content;
  out.close();
  if (!out) throw Error(ErrorKind::kInput, fmt::format("failed writing \"{}\"", path));
}

std::string vector_json(const ComplexVector& v) {
  std::string s = "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k > 0) s += ", ";
    s += fmt::format("[{}, {}]", format_number(v(k).real()), format_number(v(k).imag()));
  }
  return s + "]";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

DensityOperator parse_state(std::string_view text) { return state_at(parse_json(text), ""); }

std::string state_to_json(const DensityOperator& rho) {
  const ComplexMatrix& m = rho.matrix();
  std::string s = fmt::format("{{\n  \"dims\": [{}, {}],\n  \"matrix\": [\n", rho.dims().a, rho.dims().b);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += "    [";
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k > 0) s += ", ";
      s += fmt::format("[{}, {}]", format_number(m(i, k).real()), format_number(m(i, k).imag()));
    }
    s += i + 1 < m.rows() ? "],\n" : "]\n";
  }
  return s + "  ]\n}\n";
}

DensityOperator load_state(const std::string& path) { return parse_state(read_text_file(path)); }

PureStateEnsemble parse_ensemble(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) input_error("ensemble", "expected an object");
  if (!j.contains("weights")) input_error("weights", "missing");
  if (!j.contains("states")) input_error("states", "missing");
  const json& w = j["weights"];
  const json& st = j["states"];
  if (!w.is_array() || w.empty()) input_error("weights", "expected a non-empty array");
  if (!st.is_array() || st.size() != w.size()) input_error("states", "expected one state per weight");

  PureStateEnsemble ens;
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double p = number_at(w[i], fmt::format("weights[{}]", i));
    if (p < 0.0) input_error(fmt::format("weights[{}]", i), "negative weight");
    ens.weights.push_back(p);
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTol) input_error("weights", "do not sum to 1");
  for (auto& p : ens.weights) p /= total;

  ens.dims = dims_at(st[0], "states[0].");
  for (std::size_t i = 0; i < st.size(); ++i)
    ens.states.push_back(pure_vector_at(st[i], ens.dims, fmt::format("states[{}].", i)));
  ens.check();
  return ens;
}

std::string ensemble_to_json(const PureStateEnsemble& ensemble) {
  std::string s = "{\n  \"weights\": [";
  for (std::size_t i = 0; i < ensemble.weights.size(); ++i)
    s += (i > 0 ? ", " : "") + format_number(ensemble.weights[i]);
  s += "],\n  \"states\": [\n";
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    s += fmt::format("    {{\"dims\": [{}, {}], \"vector\": {}}}", ensemble.dims.a, ensemble.dims.b,
                     vector_json(ensemble.states[i]));
    s += i + 1 < ensemble.states.size() ? ",\n" : "\n";
  }
  return s + "  ]\n}\n";
}

PureStateEnsemble load_ensemble(const std::string& path) { return parse_ensemble(read_text_file(path)); }

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

std::string complex_matrix_json(const ComplexMatrix& m) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) s += ", ";
    s += vector_json(m.row(i).transpose());
  }
  return s + "]";
}

JsonObject& JsonObject::add(std::string_view key, double value) {
  if (std::isfinite(value)) return add_raw(key, format_number(value));
  return add_raw(key, json_string(value > 0 ? "inf" : value < 0 ? "-inf" : "nan"));
}
JsonObject& JsonObject::add(std::string_view key, int value) { return add_raw(key, std::to_string(value)); }
JsonObject& JsonObject::add(std::string_view key, long value) { return add_raw(key, std::to_string(value)); }
JsonObject& JsonObject::add(std::string_view key, std::uint64_t value) { return add_raw(key, std::to_string(value)); }
JsonObject& JsonObject::add(std::string_view key, bool value) { return add_raw(key, value ? "true" : "false"); }
JsonObject& JsonObject::add(std::string_view key, std::string_view value) { return add_raw(key, json_string(value)); }
JsonObject& JsonObject::add(std::string_view key, const std::vector<double>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i > 0 ? ", " : "") + format_number(values[i]);
  return add_raw(key, s + "]");
}
JsonObject& JsonObject::add(std::string_view key, const JsonObject& value) { return add_raw(key, value.str()); }

JsonObject& JsonObject::add_raw(std::string_view key, std::string raw) {
  fields_.emplace_back(std::string(key), std::move(raw));
  return *this;
}

std::string JsonObject::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i > 0) s += ", ";
    s += json_string(fields_[i].first) + ": " + fields_[i].second;
  }
  return s + "}";
}

JsonObject report_json(const DilutionReport& r) {
  JsonObject o;
  o.add("quantity", r.quantity);
  o.add("state_digest", r.state_digest);
  o.add_raw("dims", fmt::format("[{}, {}]", r.dims.a, r.dims.b));
  if (r.m) o.add("M", *r.m);
  if (r.epsilon) o.add("eps", *r.epsilon);
  if (r.copies) o.add("n", *r.copies);
  o.add("value", r.value);
  if (r.integer_value) o.add("integer_value", *r.integer_value);
  o.add("degenerate", r.degenerate);
  o.add("bound", to_string(r.bound));
  if (r.lower) o.add("lower", *r.lower);
  if (r.upper) o.add("upper", *r.upper);
  if (r.best) {
    JsonObject b;
    b.add("restart", r.best->restart);
    b.add("searched_M", r.best->searched_m);
    b.add("weights", r.best->weights);
    if (r.best->isometry.size() > 0) b.add_raw("isometry", complex_matrix_json(r.best->isometry));
    o.add("best_ensemble", b);
  }
  const auto& p = r.provenance;
  JsonObject prov;
  prov.add("method", p.method);
  prov.add("ensemble_size", p.ensemble_size);
  prov.add("restarts", p.config.restarts);
  prov.add("restarts_used", p.restarts_used);
  prov.add("max_iterations", p.config.max_iterations);
  prov.add("initial_step", p.config.initial_step);
  prov.add("convergence_tol", p.config.convergence_tol);
  prov.add("seed", p.config.seed);
  prov.add("iterations", p.iterations);
  prov.add("pool_size", p.pool_size);
  o.add("provenance", prov);
  return o;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw Error(ErrorKind::kDimensionMismatch, "CSV row width differs from header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k > 0 ? "," : "") << csv_field(row[k]);
    out << '\n';
  };
  emit(header_);
  for (const auto& row : rows_) emit(row);
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInput, fmt::format("cannot read \"{}\"", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = fmt::format("{}.tmp.{}", path, static_cast<long>(::getpid()));
  write_file(tmp, content);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::kInput, fmt::format("cannot move output into \"{}\"", path));
  }
}

}  // namespace dilutron
