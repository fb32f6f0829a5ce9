#include "casimir/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace casimir::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw UsageError("invalid number for " + key + ": '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw UsageError("invalid integer for " + key + ": '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t.empty()) return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw UsageError("invalid boolean for " + key + ": '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw UsageError("empty list for " + key);
  return out;
}

void require_positive(const char* name, double v) {
  if (!(v > 0.0)) throw UsageError(std::string(name) + " must be positive");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "command",  "lambda-p", "L",        "lambda-c",         "k",       "a1",
      "a2",       "b",        "radius",   "rel-tol",          "abs-tol", "max-depth",
      "max-subdivisions",     "k-min",    "k-max",            "L-min",   "L-max",
      "fit-min",  "fit-max",  "points",   "log-spacing",      "out"};
  return keys;
}

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "command") command = trim(value);
  else if (key == "lambda-p") lambda_p = parse_double(key, value);
  else if (key == "L") L = parse_list(key, value);
  else if (key == "lambda-c") lambda_c = parse_double(key, value);
  else if (key == "k") k = parse_double(key, value);
  else if (key == "a1") a1 = parse_double(key, value);
  else if (key == "a2") a2 = parse_double(key, value);
  else if (key == "b") b = parse_double(key, value);
  else if (key == "radius") radius = parse_double(key, value);
  else if (key == "rel-tol") rel_tol = parse_double(key, value);
  else if (key == "abs-tol") abs_tol = parse_double(key, value);
  else if (key == "max-depth") max_depth = parse_int(key, value);
  else if (key == "max-subdivisions") max_subdivisions = parse_int(key, value);
  else if (key == "k-min") k_min = parse_double(key, value);
  else if (key == "k-max") k_max = parse_double(key, value);
  else if (key == "L-min") L_min = parse_double(key, value);
  else if (key == "L-max") L_max = parse_double(key, value);
  else if (key == "fit-min") fit_min = parse_double(key, value);
  else if (key == "fit-max") fit_max = parse_double(key, value);
  else if (key == "points") points = parse_int(key, value);
  else if (key == "log-spacing") log_spacing = parse_bool(key, value);
  else if (key == "out") out = trim(value);
  else throw UsageError("unknown key '" + key + "'");
}

void RunConfig::load(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(source + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  load(in, path);
}

void RunConfig::validate() const {
  require_positive("lambda-p", lambda_p);
  for (double l : L) require_positive("L", l);
  if (lambda_c) require_positive("lambda-c", *lambda_c);
  if (k) require_positive("k", *k);
  if (lambda_c && k) {
    const double from_period = 2.0 * std::numbers::pi / *lambda_c;
    if (std::abs(from_period - *k) > 1e-9 * from_period) {
      throw UsageError("lambda-c and k given with inconsistent values");
    }
  }
  require_positive("a1", a1);
  require_positive("a2", a2);
  require_positive("radius", radius);
  require_positive("rel-tol", rel_tol);
  if (abs_tol < 0.0) throw UsageError("abs-tol must be non-negative");
  if (points && *points < 1) throw UsageError("points must be at least 1");
  if (k_min && *k_min < 0.0) throw UsageError("k-min must be non-negative");
  if (k_max) require_positive("k-max", *k_max);
  if (L_min) require_positive("L-min", *L_min);
  if (L_max) require_positive("L-max", *L_max);
  quadrature().validate();
}

double RunConfig::wavenumber(double fallback_lambda_c) const {
  if (k) return *k;
  return 2.0 * std::numbers::pi / lambda_c.value_or(fallback_lambda_c);
}

double RunConfig::mismatch(double kk) const {
  if (b) return *b;
  return kk > 0.0 ? 0.5 * std::numbers::pi / kk : 0.0;
}

double RunConfig::separation(double fallback) const {
  if (L.size() > 1) throw UsageError("this command takes a single L");
  return L.empty() ? fallback : L.front();
}

quad::QuadratureSpec RunConfig::quadrature() const {
  quad::QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = abs_tol;
  spec.max_depth = max_depth;
  spec.max_subdivisions = max_subdivisions;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

}  // namespace casimir::cli
