#include "shoberry/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "shoberry/errors.hpp"

namespace shoberry::cli {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

double require_double(std::string_view s, const std::string& what) {
  if (auto v = to_double(s)) return *v;
  throw ValidationError(what + ": cannot parse '" + std::string(s) + "' as a number");
}

int require_int(std::string_view s, const std::string& what) {
  s = trim(s);
  int value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    throw ValidationError(what + ": cannot parse '" + std::string(s) + "' as an integer");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

const json& require_object(const json& value, const std::string& where) {
  if (!value.is_object()) throw ValidationError(where + " must be a JSON object");
  return value;
}

double number_field(const json& value, const std::string& where) {
  if (!value.is_number()) throw ValidationError(where + " must be a number");
  return value.get<double>();
}

double angle_field(const json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    try {
      return parse_angle(value.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  throw ValidationError(where + " must be a number or a multiple of pi such as \"pi/3\"");
}

int int_field(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ValidationError(where + " must be an integer");
  return value.get<int>();
}

std::complex<double> complex_field(const json& value, const std::string& where) {
  if (value.is_array()) {
    if (value.size() != 2) throw ValidationError(where + " must be [re, im]");
    return {number_field(value[0], where + "[0]"), number_field(value[1], where + "[1]")};
  }
  require_object(value, where);
  reject_unknown_keys(value, {"re", "im"}, where);
  const double re = value.contains("re") ? number_field(value["re"], where + ".re") : 0.0;
  const double im = value.contains("im") ? number_field(value["im"], where + ".im") : 0.0;
  return {re, im};
}

FourierCoefficient coefficient_field(const json& value, const std::string& where) {
  if (value.is_array()) {
    if (value.size() != 3) throw ValidationError(where + " must be [n, re, im]");
    return {int_field(value[0], where + "[0]"), {number_field(value[1], where + "[1]"), number_field(value[2], where + "[2]")}};
  }
  require_object(value, where);
  reject_unknown_keys(value, {"n", "re", "im"}, where);
  if (!value.contains("n")) throw ValidationError(where + ".n is required");
  const double re = value.contains("re") ? number_field(value["re"], where + ".re") : 0.0;
  const double im = value.contains("im") ? number_field(value["im"], where + ".im") : 0.0;
  return {int_field(value["n"], where + ".n"), {re, im}};
}

void check_sweep_parameter(const std::string& name) {
  const auto& names = sweepable_parameters();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ValidationError("sweep parameter '" + name + "' is not one of C, beta, n, D_re, D_im, omega_f");
  }
}

SweepAxis sweep_axis_field(const json& value, const std::string& where) {
  require_object(value, where);
  reject_unknown_keys(value, {"parameter", "range", "steps"}, where);
  if (!value.contains("parameter") || !value["parameter"].is_string()) {
    throw ValidationError(where + ".parameter must be a string");
  }
  SweepAxis axis;
  axis.parameter = value["parameter"].get<std::string>();
  check_sweep_parameter(axis.parameter);
  if (!value.contains("range") || !value["range"].is_array() || value["range"].size() != 2) {
    throw ValidationError(where + ".range must be [start, stop]");
  }
  axis.start = angle_field(value["range"][0], where + ".range[0]");
  axis.stop = angle_field(value["range"][1], where + ".range[1]");
  axis.steps = value.contains("steps") ? int_field(value["steps"], where + ".steps") : 1;
  if (axis.steps < 1) throw ValidationError(where + ".steps must be at least 1");
  return axis;
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto v = to_double(s)) return *v;
  static const std::regex pattern(R"(^([+-])?((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))?$)");
  std::cmatch m;
  if (!std::regex_match(s.data(), s.data() + s.size(), m, pattern)) {
    throw ValidationError("cannot parse angle '" + std::string(s) + "'; use radians or a form such as \"pi/3\"");
  }
  double value = std::numbers::pi;
  if (m[2].matched) value = require_double(m[2].str(), "angle coefficient") * std::numbers::pi;
  if (m[3].matched) {
    const double denominator = require_double(m[3].str(), "angle denominator");
    if (denominator == 0.0) throw ValidationError("angle denominator must be nonzero");
    value /= denominator;
  }
  return m[1].matched && m[1].str() == "-" ? -value : value;
}

int Duration::half_periods() const {
  switch (kind) {
    case Kind::HalfPeriod: return 1;
    case Kind::FullPeriod: return 2;
    case Kind::Periods: return 2 * periods;
  }
  return 1;
}

std::string Duration::label() const {
  switch (kind) {
    case Kind::HalfPeriod: return "half-period";
    case Kind::FullPeriod: return "full-period";
    case Kind::Periods: return std::to_string(periods) + "-periods";
  }
  return {};
}

Duration parse_duration(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "half-period") return {Duration::Kind::HalfPeriod, 1};
  if (s == "full-period") return {Duration::Kind::FullPeriod, 1};
  constexpr std::string_view suffix = "-periods";
  if (s.size() > suffix.size() && s.ends_with(suffix)) {
    const int k = require_int(s.substr(0, s.size() - suffix.size()), "duration");
    if (k < 1) throw ValidationError("duration: period count must be at least 1");
    if (k > 1'000'000) throw ValidationError("duration: period count must not exceed 10^6");
    return {Duration::Kind::Periods, k};
  }
  throw ValidationError("duration must be \"half-period\", \"full-period\" or \"<k>-periods\", got '" +
                        std::string(s) + "'");
}

DrivingForce ForceSection::force() const { return DrivingForce::from_coefficients(omega_f, coefficients); }

std::vector<double> SweepAxis::values() const {
  std::vector<double> out;
  if (steps <= 1) return {start};
  out.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    out.push_back(k == steps - 1 ? stop : start + (stop - start) * static_cast<double>(k) / (steps - 1));
  }
  return out;
}

SweepAxis parse_sweep_axis(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw ValidationError("sweep axis must be param:start:stop:steps, got '" + std::string(text) + "'");
  SweepAxis axis;
  axis.parameter = std::string(trim(parts[0]));
  check_sweep_parameter(axis.parameter);
  axis.start = parse_angle(parts[1]);
  axis.stop = parse_angle(parts[2]);
  axis.steps = require_int(parts[3], "sweep steps");
  if (axis.steps < 1) throw ValidationError("sweep steps must be at least 1");
  return axis;
}

FourierCoefficient parse_force_coefficient(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ValidationError("force coefficient must be n:re:im, got '" + std::string(text) + "'");
  return {require_int(parts[0], "force coefficient index"),
          {require_double(parts[1], "force coefficient"), require_double(parts[2], "force coefficient")}};
}

std::complex<double> parse_complex(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ValidationError("complex value must be re:im, got '" + std::string(text) + "'");
  return {require_double(parts[0], "real part"), require_double(parts[1], "imaginary part")};
}

std::vector<int> parse_quantum_numbers(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) {
    const int n = require_int(part, "n");
    if (n < 0) throw ValidationError("n must be nonnegative, got " + std::to_string(n));
    out.push_back(n);
  }
  return out;
}

RunConfig parse_config(const json& document) {
  RunConfig config;
  require_object(document, "configuration");
  reject_unknown_keys(document, {"representation", "n", "duration", "force", "sweep", "output", "options"},
                      "configuration");

  if (document.contains("representation")) {
    const auto& rep = require_object(document["representation"], "representation");
    reject_unknown_keys(rep, {"M", "w", "C", "beta", "hbar"}, "representation");
    if (rep.contains("M")) config.mass = number_field(rep["M"], "representation.M");
    if (rep.contains("w")) config.omega = number_field(rep["w"], "representation.w");
    if (rep.contains("C")) config.amplitude = number_field(rep["C"], "representation.C");
    if (rep.contains("beta")) config.phase_offset = angle_field(rep["beta"], "representation.beta");
    if (rep.contains("hbar")) config.hbar = number_field(rep["hbar"], "representation.hbar");
    config.representation_given = true;
  }

  if (document.contains("n")) {
    const auto& n = document["n"];
    config.quantum_numbers.clear();
    if (n.is_array()) {
      for (std::size_t k = 0; k < n.size(); ++k) config.quantum_numbers.push_back(int_field(n[k], "n[" + std::to_string(k) + "]"));
    } else {
      config.quantum_numbers.push_back(int_field(n, "n"));
    }
    if (config.quantum_numbers.empty()) throw ValidationError("n must list at least one quantum number");
  }

  if (document.contains("duration")) {
    if (!document["duration"].is_string()) throw ValidationError("duration must be a string");
    config.duration = parse_duration(document["duration"].get<std::string>());
  }

  if (document.contains("force")) {
    const auto& f = require_object(document["force"], "force");
    reject_unknown_keys(f, {"omega_f", "coefficients", "D"}, "force");
    ForceSection section;
    if (!f.contains("omega_f")) throw ValidationError("force.omega_f is required");
    section.omega_f = number_field(f["omega_f"], "force.omega_f");
    if (f.contains("coefficients")) {
      if (!f["coefficients"].is_array()) throw ValidationError("force.coefficients must be an array");
      for (std::size_t k = 0; k < f["coefficients"].size(); ++k) {
        section.coefficients.push_back(
            coefficient_field(f["coefficients"][k], "force.coefficients[" + std::to_string(k) + "]"));
      }
    }
    if (f.contains("D")) section.homogeneous = complex_field(f["D"], "force.D");
    config.force = section;
  }

  if (document.contains("sweep")) {
    const auto& s = document["sweep"];
    if (s.is_array()) {
      for (std::size_t k = 0; k < s.size(); ++k) config.sweep.push_back(sweep_axis_field(s[k], "sweep[" + std::to_string(k) + "]"));
      if (config.sweep.empty()) throw ValidationError("sweep must contain at least one axis");
    } else {
      config.sweep.push_back(sweep_axis_field(s, "sweep"));
    }
  }

  if (document.contains("output")) {
    const auto& o = require_object(document["output"], "output");
    reject_unknown_keys(o, {"format", "path"}, "output");
    if (o.contains("format")) {
      if (!o["format"].is_string()) throw ValidationError("output.format must be a string");
      const auto format = o["format"].get<std::string>();
      if (format == "csv") {
        config.output.format = OutputFormat::Csv;
      } else if (format == "json") {
        config.output.format = OutputFormat::Json;
      } else {
        throw ValidationError("output.format must be \"csv\" or \"json\"");
      }
    }
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw ValidationError("output.path must be a string");
      config.output.path = o["path"].get<std::string>();
    }
  }

  if (document.contains("options")) {
    const auto& o = require_object(document["options"], "options");
    reject_unknown_keys(o, {"oracle", "samples", "threads"}, "options");
    if (o.contains("oracle")) {
      if (!o["oracle"].is_boolean()) throw ValidationError("options.oracle must be true or false");
      config.oracle = o["oracle"].get<bool>();
    }
    if (o.contains("samples")) {
      const int samples = int_field(o["samples"], "options.samples");
      if (samples < 2) throw ValidationError("options.samples must be at least 2");
      config.samples = static_cast<std::size_t>(samples);
    }
    if (o.contains("threads")) {
      const int threads = int_field(o["threads"], "options.threads");
      if (threads < 0) throw ValidationError("options.threads must be nonnegative");
      config.threads = static_cast<unsigned>(threads);
    }
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open configuration file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  // An empty file means "all defaults".
  if (trim(text).empty()) return RunConfig{};
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("configuration file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(document);
}

}  // namespace shoberry::cli
