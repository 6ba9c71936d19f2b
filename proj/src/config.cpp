// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace reglap {

std::string ConfigDiagnostic::to_string() const {
  std::ostringstream out;
  out << "[" << section << "] " << key;
  if (line > 0) out << " (line " << line << ")";
  out << ": " << message;
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& s, double* out) {
  try {
    std::size_t used = 0;
    *out = std::stod(s, &used);
    return used == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& s, int* out) {
  try {
    std::size_t used = 0;
    *out = std::stoi(s, &used);
    return used == s.size();
  } catch (...) {
    return false;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, sep)) parts.push_back(trim(token));
  return parts;
}

struct Sink {
  RunConfig* cfg;
  std::vector<ConfigDiagnostic>* errors;

  void error(const std::string& section, const std::string& key, int line,
             const std::string& message) {
    errors->push_back({section, key, line, message});
  }
};

using Setter = std::function<void(Sink&, const std::string& value, int line)>;

template <class Check>
Setter double_key(const std::string& section, const std::string& key,
                  double* slot, Check check, const std::string& range) {
  return [=](Sink& sink, const std::string& value, int line) {
    double v = 0.0;
    if (!parse_double(value, &v)) {
      sink.error(section, key, line, "not a number: '" + value + "'");
      return;
    }
    if (!check(v)) {
      sink.error(section, key, line,
                 "value " + value + " outside admissible " + range);
      return;
    }
    *slot = v;
  };
}

template <class Check>
Setter int_key(const std::string& section, const std::string& key, int* slot,
               Check check, const std::string& range) {
  return [=](Sink& sink, const std::string& value, int line) {
    int v = 0;
    if (!parse_int(value, &v)) {
      sink.error(section, key, line, "not an integer: '" + value + "'");
      return;
    }
    if (!check(v)) {
      sink.error(section, key, line,
                 "value " + value + " outside admissible " + range);
      return;
    }
    *slot = v;
  };
}

Setter string_key(std::string* slot) {
  return [slot](Sink&, const std::string& value, int) { *slot = value; };
}

}  // namespace

ParseResult parse_config_text(const std::string& text) {
  ParseResult result;
  RunConfig& cfg = result.config;
  Sink sink{&cfg, &result.errors};

  std::map<std::string, std::map<std::string, Setter>> keys;
  auto always_double = [](double) { return true; };

  keys["problem"]["x_lo"] =
      double_key("problem", "x_lo", &cfg.problem.x_lo, always_double, "");
  keys["problem"]["x_hi"] =
      double_key("problem", "x_hi", &cfg.problem.x_hi, always_double, "");
  keys["problem"]["n_cells"] =
      int_key("problem", "n_cells", &cfg.problem.n_cells,
              [](int v) { return v >= 4; }, "[4, inf)");
  keys["problem"]["s"] = double_key(
      "problem", "s", &cfg.problem.s,
      [](double v) { return v > 0.0 && v < 1.0; }, "interval (0,1)");
  keys["problem"]["t_end"] =
      double_key("problem", "t_end", &cfg.problem.t_end,
                 [](double v) { return v > 0.0; }, "(0, inf)");
  keys["problem"]["flux"] = string_key(&cfg.problem.flux);
  keys["problem"]["degeneracy"] = string_key(&cfg.problem.degeneracy);
  keys["problem"]["u0"] = string_key(&cfg.problem.u0);
  keys["problem"]["ub_left"] = string_key(&cfg.problem.ub_left);
  keys["problem"]["ub_right"] = string_key(&cfg.problem.ub_right);
  keys["problem"]["normalization"] = [&cfg](Sink& s, const std::string& v,
                                            int line) {
    if (v != "paper" && v != "standard") {
      s.error("problem", "normalization", line,
              "must be 'paper' or 'standard'");
      return;
    }
    cfg.problem.normalization = v;
  };

  keys["solver"]["eps"] =
      double_key("solver", "eps", &cfg.solver.eps,
                 [](double v) { return v > 0.0; }, "(0, inf)");
  keys["solver"]["eps_list"] = [&cfg](Sink& s, const std::string& v,
                                      int line) {
    std::vector<double> list;
    for (const auto& part : split(v, ',')) {
      double e = 0.0;
      if (!parse_double(part, &e) || !(e > 0.0)) {
        s.error("solver", "eps_list", line,
                "entry '" + part + "' is not a positive number");
        return;
      }
      list.push_back(e);
    }
    if (list.size() < 2) {
      s.error("solver", "eps_list", line, "need at least two entries");
      return;
    }
    cfg.solver.eps_list = std::move(list);
  };
  keys["solver"]["cfl"] = double_key(
      "solver", "cfl", &cfg.solver.cfl,
      [](double v) { return v > 0.0 && v < 1.0; }, "interval (0,1)");
  keys["solver"]["picard_tol"] =
      double_key("solver", "picard_tol", &cfg.solver.picard_tol,
                 [](double v) { return v > 0.0; }, "(0, inf)");
  keys["solver"]["picard_max"] =
      int_key("solver", "picard_max", &cfg.solver.picard_max,
              [](int v) { return v >= 1; }, "[1, inf)");
  keys["solver"]["save_every"] =
      int_key("solver", "save_every", &cfg.solver.save_every,
              [](int v) { return v >= 1; }, "[1, inf)");
  keys["solver"]["min_steps"] =
      int_key("solver", "min_steps", &cfg.solver.min_steps,
              [](int v) { return v >= 1; }, "[1, inf)");

  keys["verify"]["checks"] = [&cfg](Sink&, const std::string& v, int) {
    cfg.verify.checks = split(v, ',');
  };
  keys["verify"]["delta"] =
      double_key("verify", "delta", &cfg.verify.delta,
                 [](double v) { return v >= 0.0; }, "[0, inf)");
  keys["verify"]["entropy_tol_factor"] = double_key(
      "verify", "entropy_tol_factor", &cfg.verify.entropy_tol_factor,
      [](double v) { return v > 0.0; }, "(0, inf)");
  keys["verify"]["inject_non_entropic"] = [&cfg](Sink& s,
                                                 const std::string& v,
                                                 int line) {
    if (v == "true" || v == "1")
      cfg.verify.inject_non_entropic = true;
    else if (v == "false" || v == "0")
      cfg.verify.inject_non_entropic = false;
    else
      s.error("verify", "inject_non_entropic", line, "must be true or false");
  };
  keys["verify"]["seed"] = [&cfg](Sink& s, const std::string& v, int line) {
    int parsed = 0;
    if (!parse_int(v, &parsed) || parsed < 0) {
      s.error("verify", "seed", line, "must be a nonnegative integer");
      return;
    }
    cfg.verify.seed = static_cast<unsigned>(parsed);
  };
  keys["verify"]["green_cells"] = [&cfg](Sink& s, const std::string& v,
                                         int line) {
    std::vector<int> list;
    for (const auto& part : split(v, ',')) {
      int n = 0;
      if (!parse_int(part, &n) || n < 8) {
        s.error("verify", "green_cells", line,
                "entry '" + part + "' is not an integer >= 8");
        return;
      }
      list.push_back(n);
    }
    if (list.empty()) {
      s.error("verify", "green_cells", line, "need at least one entry");
      return;
    }
    cfg.verify.green_cells = std::move(list);
  };

  keys["output"]["dir"] = string_key(&cfg.output.dir);
  keys["output"]["profile_stride"] =
      int_key("output", "profile_stride", &cfg.output.profile_stride,
              [](int v) { return v >= 0; }, "[0, inf)");

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = trim(line.substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        sink.error(section, line, line_no, "malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!keys.count(section))
        sink.error(section, "", line_no, "unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      sink.error(section, line, line_no, "expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!keys.count(section)) continue;  // already reported
    auto& table = keys[section];
    auto it = table.find(key);
    if (it == table.end()) {
      sink.error(section, key, line_no, "unknown key");
      continue;
    }
    it->second(sink, value, line_no);
  }

  // Cross-field validation.
  if (!(cfg.problem.x_lo < cfg.problem.x_hi))
    sink.error("problem", "x_hi", 0, "requires x_lo < x_hi");
  return result;
}

ParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult result;
    result.errors.push_back(
        {"", "", 0, "cannot open config file '" + path + "'"});
    return result;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string render_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[problem]\n";
  out << "x_lo = " << fmt(cfg.problem.x_lo) << "\n";
  out << "x_hi = " << fmt(cfg.problem.x_hi) << "\n";
  out << "n_cells = " << cfg.problem.n_cells << "\n";
  out << "s = " << fmt(cfg.problem.s) << "\n";
  out << "t_end = " << fmt(cfg.problem.t_end) << "\n";
  out << "flux = " << cfg.problem.flux << "\n";
  out << "degeneracy = " << cfg.problem.degeneracy << "\n";
  out << "u0 = " << cfg.problem.u0 << "\n";
  out << "ub_left = " << cfg.problem.ub_left << "\n";
  out << "ub_right = " << cfg.problem.ub_right << "\n";
  out << "normalization = " << cfg.problem.normalization << "\n";
  out << "\n[solver]\n";
  out << "eps = " << fmt(cfg.solver.eps) << "\n";
  if (!cfg.solver.eps_list.empty()) {
    out << "eps_list = ";
    for (std::size_t i = 0; i < cfg.solver.eps_list.size(); ++i)
      out << (i ? "," : "") << fmt(cfg.solver.eps_list[i]);
    out << "\n";
  }
  out << "cfl = " << fmt(cfg.solver.cfl) << "\n";
  out << "picard_tol = " << fmt(cfg.solver.picard_tol) << "\n";
  out << "picard_max = " << cfg.solver.picard_max << "\n";
  out << "save_every = " << cfg.solver.save_every << "\n";
  out << "min_steps = " << cfg.solver.min_steps << "\n";
  out << "\n[verify]\n";
  out << "checks = ";
  for (std::size_t i = 0; i < cfg.verify.checks.size(); ++i)
    out << (i ? "," : "") << cfg.verify.checks[i];
  out << "\n";
  out << "delta = " << fmt(cfg.verify.delta) << "\n";
  out << "entropy_tol_factor = " << fmt(cfg.verify.entropy_tol_factor)
      << "\n";
  out << "inject_non_entropic = "
      << (cfg.verify.inject_non_entropic ? "true" : "false") << "\n";
  out << "seed = " << cfg.verify.seed << "\n";
  out << "green_cells = ";
  for (std::size_t i = 0; i < cfg.verify.green_cells.size(); ++i)
    out << (i ? "," : "") << cfg.verify.green_cells[i];
  out << "\n";
  out << "\n[output]\n";
  out << "dir = " << cfg.output.dir << "\n";
  out << "profile_stride = " << cfg.output.profile_stride << "\n";
  return out.str();
}

std::string config_hash(const RunConfig& cfg) {
  // identifies the experiment: the output destination is not part of it
  std::string text = render_config(cfg);
  const auto cut = text.find("\n[output]");
  if (cut != std::string::npos) text.resize(cut);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace reglap
