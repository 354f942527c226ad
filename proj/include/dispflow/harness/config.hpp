#pragma once

// Plain-text run configuration: one `key = value` per line, `#` comments.
//
//   mode         geometric | complex | compare-frame | check-identities | convergence  (required)
//   N            grid size, power of two in [8, 4096]                                  (required)
//   t_end        final time >= 0                                                        (required)
//   a, b         flow constants                                   (default 0)
//   K            target curvature; > 0 for curve modes            (default 1)
//   dt           explicit time step; otherwise derived from cfl_safety
//   cfl_safety   fraction of the stability limit, in (0, 1]       (default 0.5)
//   ic           initial condition: `name key=value ...`          (default great_circle)
//   seed         RNG seed for random initial data                 (default 0)
//   output_dir   where CSV files go; DISPFLOW_OUT overrides it    (default .)
//   sample_every diagnostics every this many steps                (default 100)
//   scheme       spectral | central-2 | central-4                 (default spectral)
//   renormalize  true | false, project back onto the sphere       (default true)

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dispflow/discrete_curve.hpp"
#include "dispflow/errors.hpp"
#include "dispflow/sphere_geometry.hpp"

namespace dispflow::harness {

/// Configuration problem; line() is 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Mode { geometric, complex, compare_frame, check_identities, convergence };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::geometric: return "geometric";
    case Mode::complex: return "complex";
    case Mode::compare_frame: return "compare-frame";
    case Mode::check_identities: return "check-identities";
    case Mode::convergence: return "convergence";
  }
  return "?";
}

/// Name plus ordered key=value parameters, e.g. `sech amp=1 width=0.05`.
struct InitialCondition {
  std::string name = "great_circle";
  std::vector<std::pair<std::string, double>> params;

  std::optional<double> get(std::string_view key) const {
    for (const auto& [k, v] : params) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

struct RunConfig {
  Mode mode = Mode::geometric;
  FlowParams params{0.0, 0.0, 1.0};
  int n = 0;
  std::optional<double> dt;
  double cfl_safety = 0.5;
  double t_end = 0.0;
  InitialCondition ic;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  int sample_every = 100;
  DerivativeScheme scheme = DerivativeScheme::spectral;
  bool renormalize = true;

  bool curve_mode() const { return mode != Mode::complex && mode != Mode::check_identities; }
};

inline bool operator==(const RunConfig& l, const RunConfig& r) {
  return l.mode == r.mode && l.params.a == r.params.a && l.params.b == r.params.b &&
         l.params.curvature_K == r.params.curvature_K && l.n == r.n && l.dt == r.dt &&
         l.cfl_safety == r.cfl_safety && l.t_end == r.t_end && l.ic == r.ic && l.seed == r.seed &&
         l.output_dir == r.output_dir && l.sample_every == r.sample_every && l.scheme == r.scheme &&
         l.renormalize == r.renormalize;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view s, int line, std::string_view key) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw ConfigError("malformed number '" + std::string(s) + "' for " + std::string(key), line);
  }
  return v;
}

inline long long parse_integer(std::string_view s, int line, std::string_view key) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ConfigError("malformed integer '" + std::string(s) + "' for " + std::string(key), line);
  }
  return v;
}

inline Mode parse_mode(std::string_view s, int line) {
  for (Mode m : {Mode::geometric, Mode::complex, Mode::compare_frame, Mode::check_identities,
                 Mode::convergence}) {
    if (s == to_string(m)) return m;
  }
  throw ConfigError("unknown mode '" + std::string(s) + "'", line);
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline InitialCondition parse_initial_condition(std::string_view text, int line = 0) {
  InitialCondition ic;
  ic.params.clear();
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token)) throw ConfigError("empty initial condition", line);
  ic.name = token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("initial-condition parameter '" + token + "' is not key=value", line);
    }
    const std::string key = token.substr(0, eq);
    if (ic.get(key)) throw ConfigError("duplicate initial-condition parameter '" + key + "'", line);
    ic.params.emplace_back(key, detail::parse_double(std::string_view(token).substr(eq + 1), line, key));
  }
  return ic;
}

inline std::string format_initial_condition(const InitialCondition& ic) {
  std::string out = ic.name;
  for (const auto& [k, v] : ic.params) out += " " + k + "=" + detail::format_double(v);
  return out;
}

inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string> seen;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line_no);

    if (key == "mode") {
      cfg.mode = detail::parse_mode(value, line_no);
    } else if (key == "N") {
      const long long n = detail::parse_integer(value, line_no, key);
      if (n < 8 || n > 4096 || (n & (n - 1)) != 0) {
        throw ConfigError("N must be a power of two between 8 and 4096", line_no);
      }
      cfg.n = static_cast<int>(n);
    } else if (key == "t_end") {
      cfg.t_end = detail::parse_double(value, line_no, key);
      if (cfg.t_end < 0.0) throw ConfigError("t_end must be >= 0", line_no);
    } else if (key == "a") {
      cfg.params.a = detail::parse_double(value, line_no, key);
    } else if (key == "b") {
      cfg.params.b = detail::parse_double(value, line_no, key);
    } else if (key == "K") {
      cfg.params.curvature_K = detail::parse_double(value, line_no, key);
    } else if (key == "dt") {
      cfg.dt = detail::parse_double(value, line_no, key);
      if (!(*cfg.dt > 0.0)) throw ConfigError("dt must be positive", line_no);
    } else if (key == "cfl_safety") {
      cfg.cfl_safety = detail::parse_double(value, line_no, key);
      if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
        throw ConfigError("cfl_safety must lie in (0, 1]", line_no);
      }
    } else if (key == "ic") {
      cfg.ic = parse_initial_condition(value, line_no);
    } else if (key == "seed") {
      const long long s = detail::parse_integer(value, line_no, key);
      if (s < 0) throw ConfigError("seed must be non-negative", line_no);
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "output_dir") {
      if (value.empty()) throw ConfigError("output_dir is empty", line_no);
      cfg.output_dir = std::string(value);
    } else if (key == "sample_every") {
      const long long s = detail::parse_integer(value, line_no, key);
      if (s < 1 || s > 1000000000) throw ConfigError("sample_every must be >= 1", line_no);
      cfg.sample_every = static_cast<int>(s);
    } else if (key == "scheme") {
      try {
        cfg.scheme = parse_scheme(value);
      } catch (const ParameterError& e) {
        throw ConfigError(e.what(), line_no);
      }
    } else if (key == "renormalize") {
      if (value == "true") cfg.renormalize = true;
      else if (value == "false") cfg.renormalize = false;
      else throw ConfigError("renormalize must be true or false", line_no);
    } else {
      throw ConfigError("unknown key '" + key + "'", line_no);
    }
  }

  std::string missing;
  for (const char* required : {"mode", "N", "t_end"}) {
    if (!seen.count(required)) missing += missing.empty() ? required : std::string(", ") + required;
  }
  if (!missing.empty()) throw ConfigError("missing required keys: " + missing, 0);
  if (cfg.curve_mode() && !(cfg.params.curvature_K > 0.0)) {
    throw ConfigError("K must be positive for sphere-valued runs", 0);
  }
  return cfg;
}

/// Canonical text form; parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  auto put = [&](std::string_view k, const std::string& v) {
    out += std::string(k) + " = " + v + "\n";
  };
  put("mode", std::string(to_string(cfg.mode)));
  put("N", std::to_string(cfg.n));
  put("t_end", detail::format_double(cfg.t_end));
  put("a", detail::format_double(cfg.params.a));
  put("b", detail::format_double(cfg.params.b));
  put("K", detail::format_double(cfg.params.curvature_K));
  if (cfg.dt) put("dt", detail::format_double(*cfg.dt));
  put("cfl_safety", detail::format_double(cfg.cfl_safety));
  put("ic", format_initial_condition(cfg.ic));
  put("seed", std::to_string(cfg.seed));
  put("output_dir", cfg.output_dir);
  put("sample_every", std::to_string(cfg.sample_every));
  put("scheme", std::string(to_string(cfg.scheme)));
  put("renormalize", cfg.renormalize ? "true" : "false");
  return out;
}

}  // namespace dispflow::harness
