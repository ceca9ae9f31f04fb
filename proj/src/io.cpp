#include "wavepressure/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace wavepressure {

namespace {

using json = nlohmann::ordered_json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json location(const Location& l) { return json{{"x", number(l.x)}, {"y", number(l.y)}}; }

json params_json(const WaveParameters& params) {
  const auto& raw = params.raw();
  json j;
  j["wavelength"] = raw.wavelength;
  j["depth"] = raw.depth ? json(*raw.depth) : json("deep");
  j["current"] = raw.current;
  j["density"] = raw.density;
  j["gravity"] = raw.gravity;
  j["atmospheric_pressure"] = raw.atmospheric_pressure;
  j["height"] = raw.height;
  j["modes"] = raw.modes;
  j["surface_nodes"] = raw.surface_nodes;
  j["flat_speed"] = raw.flat_speed ? json(*raw.flat_speed) : json(nullptr);
  return j;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::MissingRequired, std::string("state: missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::TypeMismatch, std::string("state: bad value for '") + key + "'");
  }
}

json check_json(const CheckResult& c) {
  json j;
  j["name"] = c.name;
  j["verdict"] = std::string(to_string(c.verdict));
  j["worst_margin"] = number(c.worst_margin);
  j["worst_location"] = location(c.worst_location);
  j["samples"] = c.samples;
  j["inconclusive"] = c.inconclusive;
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.metrics.empty()) {
    json m = json::object();
    for (const auto& [k, v] : c.metrics) m[k] = number(v);
    j["metrics"] = m;
  }
  return j;
}

json elliptic_json(const EllipticResidualReport& e) {
  return json{{"spacing", number(e.spacing)},
              {"residual_max", number(e.residual_max)},
              {"residual_max_scaled", number(e.residual_max_scaled)},
              {"coefficient_max", number(e.coefficient_max)},
              {"worst_location", location(e.worst_location)},
              {"points", e.points}};
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string state_to_json(const FlowState& state) {
  json j;
  j["params"] = params_json(state.params);
  j["wave_speed"] = state.wave_speed;
  j["surface_coeffs"] = state.surface_coeffs;
  j["stream_coeffs"] = state.stream_coeffs;
  j["flux"] = state.flux;
  j["head"] = state.head;
  j["head_kind"] = state.params.is_deep() ? "E" : "Q";
  j["residual_norm"] = state.residual_norm;
  j["newton_iterations"] = state.newton_iterations;
  return j.dump(2) + "\n";
}

FlowState state_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::TypeMismatch, std::string("state: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::TypeMismatch, "state: expected an object");
  const json& p = field<json>(j, "params");

  ParameterSet raw;
  raw.wavelength = field<double>(p, "wavelength");
  if (const json& d = field<json>(p, "depth"); d.is_string()) {
    if (d.get<std::string>() != "deep") throw Error(ErrorKind::TypeMismatch, "state: depth must be a number or 'deep'");
  } else {
    raw.depth = field<double>(p, "depth");
  }
  raw.current = field<double>(p, "current");
  raw.density = field<double>(p, "density");
  raw.gravity = field<double>(p, "gravity");
  raw.atmospheric_pressure = field<double>(p, "atmospheric_pressure");
  raw.height = field<double>(p, "height");
  raw.modes = field<int>(p, "modes");
  raw.surface_nodes = field<int>(p, "surface_nodes");
  if (p.contains("flat_speed") && !p.at("flat_speed").is_null()) raw.flat_speed = field<double>(p, "flat_speed");

  FlowState s{WaveParameters::validate(raw)};
  s.wave_speed = field<double>(j, "wave_speed");
  s.surface_coeffs = field<std::vector<double>>(j, "surface_coeffs");
  s.stream_coeffs = field<std::vector<double>>(j, "stream_coeffs");
  s.flux = field<double>(j, "flux");
  s.head = field<double>(j, "head");
  s.residual_norm = field<double>(j, "residual_norm");
  s.newton_iterations = field<int>(j, "newton_iterations");
  const auto n = static_cast<std::size_t>(raw.modes);
  if (s.stream_coeffs.size() != n || s.surface_coeffs.size() != n + 1) {
    throw Error(ErrorKind::TypeMismatch, "state: coefficient counts do not match modes");
  }
  return s;
}

std::string residuals_to_json(const FlowState& state, const ResidualReport& report) {
  const ResidualReport nd = report.nondimensional(state.params);
  json j;
  j["samples"] = report.samples;
  j["newton_iterations"] = state.newton_iterations;
  j["collocation_residual"] = state.residual_norm;
  j["dimensional"] = json{{"kinematic_max", report.kinematic_max},
                          {"bernoulli_max", report.bernoulli_max},
                          {"bed_max", report.bed_max}};
  j["nondimensional"] = json{{"kinematic_max", nd.kinematic_max},
                             {"bernoulli_max", nd.bernoulli_max},
                             {"bed_max", nd.bed_max}};
  return j.dump(2) + "\n";
}

std::string report_to_json(const FlowState& state, const VerificationReport& report) {
  json j;
  j["satisfied"] = report.satisfied();
  j["violations"] = report.violations();
  j["degenerate"] = report.degenerate;
  j["depth_mode"] = state.params.is_deep() ? "deep" : "finite";
  j["relative_current"] = state.relative_current();

  json checks = json::array();
  for (const auto& c : report.invariants.checks) checks.push_back(check_json(c));
  j["checks"] = checks;

  if (report.extrema) {
    const auto& e = *report.extrema;
    j["extrema"] = json{{"crest_is_max", e.crest_is_max},
                        {"trough_is_min", e.trough_is_min},
                        {"max_value", number(e.max_value)},
                        {"max_location", location(e.max_location)},
                        {"max_node", {e.max_column, e.max_level}},
                        {"min_value", number(e.min_value)},
                        {"min_location", location(e.min_location)},
                        {"min_node", {e.min_column, e.min_level}},
                        {"margin", number(e.margin)}};
  } else {
    j["extrema"] = nullptr;
  }

  json paths = json::array();
  for (const auto& p : report.monotonicity.paths) {
    json pj;
    pj["path"] = std::string(to_string(p.path));
    pj["direction"] = p.direction;
    pj["strictly_monotone"] = p.strictly_monotone;
    pj["violation"] = p.violation ? location(*p.violation) : json(nullptr);
    pj["inconclusive_steps"] = p.inconclusive_steps;
    pj["min_step"] = number(p.min_step);
    paths.push_back(pj);
  }
  j["monotonicity"] = json{{"degenerate", report.monotonicity.degenerate}, {"paths", paths}};

  json ell = json::object();
  ell["coarse"] = report.elliptic_coarse ? elliptic_json(*report.elliptic_coarse) : json(nullptr);
  ell["fine"] = report.elliptic_fine ? elliptic_json(*report.elliptic_fine) : json(nullptr);
  ell["ratio"] = report.elliptic_ratio ? number(*report.elliptic_ratio) : json(nullptr);
  j["elliptic"] = ell;
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::string verdict_fingerprint(const VerificationReport& report) {
  std::ostringstream out;
  out << "degenerate=" << report.degenerate << '\n';
  for (const auto& c : report.invariants.checks) out << c.name << '=' << to_string(c.verdict) << '\n';
  if (report.extrema) {
    const auto& e = *report.extrema;
    out << "max_node=" << e.max_column << ',' << e.max_level << '\n'
        << "min_node=" << e.min_column << ',' << e.min_level << '\n'
        << "crest_is_max=" << e.crest_is_max << '\n'
        << "trough_is_min=" << e.trough_is_min << '\n';
  }
  for (const auto& p : report.monotonicity.paths) {
    out << to_string(p.path) << '=' << p.direction << ':' << p.strictly_monotone << '\n';
  }
  return out.str();
}

std::string field_csv(const FieldGrid& grid) {
  std::string out = "x,y,psi,u,v,P,p_dyn\n";
  out.reserve(out.size() + grid.samples.size() * 7 * 24);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const FieldSample& s = grid.at(i, j);
      // Report the column abscissa as laid out, not the reduced one.
      const double row[] = {grid.column_x[static_cast<std::size_t>(i)], s.y, s.psi, s.u, s.v, s.pressure,
                            s.dynamic_pressure};
      for (std::size_t k = 0; k < 7; ++k) {
        if (k) out += ',';
        out += format_double(row[k]);
      }
      out += '\n';
    }
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot replace " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void save_state(const std::filesystem::path& path, const FlowState& state) { write_atomic(path, state_to_json(state)); }

FlowState load_state(const std::filesystem::path& path) { return state_from_json(read_file(path)); }

}  // namespace wavepressure
