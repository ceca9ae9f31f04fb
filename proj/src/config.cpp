#include "wavepressure/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace wavepressure {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(ErrorKind::TypeMismatch, std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

int to_int(std::string_view key, std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(ErrorKind::TypeMismatch, std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> to_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(to_double(key, trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view source) {
  RunConfig cfg;
  bool have_length = false;
  bool have_depth = false;
  bool deep = false;
  int line_no = 0;

  while (!source.empty()) {
    const auto nl = source.find('\n');
    std::string_view line = source.substr(0, nl);
    source = nl == std::string_view::npos ? std::string_view{} : source.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::TypeMismatch, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "L") {
      cfg.wave.wavelength = to_double(key, value);
      have_length = true;
    } else if (key == "depth") {
      have_depth = true;
      if (value == "deep") {
        deep = true;
        cfg.wave.depth.reset();
      } else {
        deep = false;
        cfg.wave.depth = to_double(key, value);
      }
    } else if (key == "current") {
      cfg.wave.current = to_double(key, value);
    } else if (key == "density") {
      cfg.wave.density = to_double(key, value);
    } else if (key == "gravity") {
      cfg.wave.gravity = to_double(key, value);
    } else if (key == "p_atm") {
      cfg.wave.atmospheric_pressure = to_double(key, value);
    } else if (key == "height") {
      cfg.wave.height = to_double(key, value);
    } else if (key == "modes") {
      cfg.wave.modes = to_int(key, value);
    } else if (key == "surface_nodes") {
      cfg.wave.surface_nodes = to_int(key, value);
    } else if (key == "speed") {
      cfg.wave.flat_speed = to_double(key, value);
    } else if (key == "newton_tol") {
      cfg.solver.newton_tol = to_double(key, value);
    } else if (key == "max_iters") {
      cfg.solver.max_newton_iters = to_int(key, value);
    } else if (key == "continuation_steps") {
      cfg.solver.continuation_steps = to_int(key, value);
    } else if (key == "damping") {
      cfg.solver.damping = to_double(key, value);
    } else if (key == "branch") {
      if (value == "following") {
        cfg.solver.branch = Branch::Following;
      } else if (value == "opposing") {
        cfg.solver.branch = Branch::Opposing;
      } else {
        throw Error(ErrorKind::TypeMismatch, "branch: expected following or opposing");
      }
    } else if (key == "nx") {
      cfg.nx = to_int(key, value);
    } else if (key == "ny") {
      cfg.ny = to_int(key, value);
    } else if (key == "heights") {
      cfg.heights = to_list(key, value);
    } else if (key == "y0") {
      cfg.y0 = to_double(key, value);
    } else if (key == "output_dir") {
      cfg.output_dir = std::string(value);
    } else {
      throw Error(ErrorKind::UnknownKey, "unknown key '" + std::string(key) + "' on line " + std::to_string(line_no));
    }
  }

  if (deep && cfg.wave.current != 0.0) {
    throw Error(ErrorKind::DeepWithCurrent, "deep water admits no underlying current");
  }
  if (!have_length) throw Error(ErrorKind::MissingRequired, "L is required");
  if (!have_depth) throw Error(ErrorKind::MissingRequired, "depth (number or 'deep') is required");
  cfg.params();
  cfg.solver.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace wavepressure
