#include "macropeaks/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "macropeaks/errors.hpp"

namespace macropeaks {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// strips an unquoted trailing comment
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

nlohmann::json parse_scalar(const std::string& raw, int line_no) {
  const std::string v = trim(raw);
  if (v.empty()) throw ConfigError("empty value on line " + std::to_string(line_no));
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') {
      throw ConfigError("unterminated string on line " + std::to_string(line_no));
    }
    return v.substr(1, v.size() - 2);
  }
  if (v == "true") return true;
  if (v == "false") return false;
  try {
    std::size_t used = 0;
    if (v.find_first_of(".eE") == std::string::npos) {
      const long long i = std::stoll(v, &used);
      if (used == v.size()) return i;
    }
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("cannot parse value '" + v + "' on line " +
                    std::to_string(line_no));
}

nlohmann::json parse_value(const std::string& raw, int line_no) {
  const std::string v = trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') {
      throw ConfigError("unterminated array on line " + std::to_string(line_no));
    }
    nlohmann::json arr = nlohmann::json::array();
    std::string inner = v.substr(1, v.size() - 2);
    std::string cell;
    bool in_string = false;
    for (char c : inner) {
      if (c == '"') in_string = !in_string;
      if (c == ',' && !in_string) {
        if (!trim(cell).empty()) arr.push_back(parse_scalar(cell, line_no));
        cell.clear();
      } else {
        cell += c;
      }
    }
    if (!trim(cell).empty()) arr.push_back(parse_scalar(cell, line_no));
    return arr;
  }
  return parse_scalar(v, line_no);
}

}  // namespace

nlohmann::json parse_toml(const std::string& text) {
  nlohmann::json doc = nlohmann::json::object();
  nlohmann::json* table = &doc;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed table header on line " +
                          std::to_string(line_no));
      }
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) {
        throw ConfigError("empty table name on line " + std::to_string(line_no));
      }
      table = &doc;
      std::stringstream parts(name);
      std::string part;
      while (std::getline(parts, part, '.')) {
        table = &(*table)[trim(part)];
        if (!table->is_object() && !table->is_null()) {
          throw ConfigError("table redefines a value on line " +
                            std::to_string(line_no));
        }
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value on line " + std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("empty key on line " + std::to_string(line_no));
    }
    (*table)[key] = parse_value(line.substr(eq + 1), line_no);
  }
  return doc;
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (path.extension() == ".json") {
    try {
      return nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("json parse error in " + path.string() + ": " + e.what());
    }
  }
  return parse_toml(buffer.str());
}

namespace {

double require_positive(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + " must be a number");
  const double v = j.get<double>();
  if (!(v > 0.0)) throw ConfigError(path + " must be positive");
  return v;
}

CorrelationModel parse_model(const nlohmann::json& block) {
  if (!block.is_object()) throw ConfigError("correlation block missing");
  const std::string kind = block.value("kind", "");
  const int d = block.value("dimension", 1);
  if (d < 1) throw ConfigError("correlation.dimension must be >= 1");
  if (kind == "white") return CorrelationModel::white_noise(d);
  if (kind == "riesz") {
    return CorrelationModel::riesz(
        require_positive(block.value("beta", nlohmann::json(0.5)),
                         "correlation.beta"),
        block.value("c", 1.0), d);
  }
  if (kind == "exponential") {
    return CorrelationModel::exponential(
        require_positive(block.value("lambda", nlohmann::json(1.0)),
                         "correlation.lambda"),
        d);
  }
  if (kind == "gaussian") {
    return CorrelationModel::gaussian(
        require_positive(block.value("sigma", nlohmann::json(1.0)),
                         "correlation.sigma"),
        d);
  }
  if (kind == "logdecay") {
    return CorrelationModel::log_decay(block.value("c", 1.0), d);
  }
  if (kind == "tabulated") {
    const auto radii = block.value("radii", std::vector<double>{});
    const auto density = block.value("density", std::vector<double>{});
    Eigen::VectorXd r(static_cast<Eigen::Index>(radii.size()));
    Eigen::VectorXd v(static_cast<Eigen::Index>(density.size()));
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = radii[i];
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = density[i];
    return CorrelationModel::tabulated(r, v, d);
  }
  throw ConfigError("correlation.kind '" + kind + "' is not recognized");
}

std::vector<double> as_double_list(const nlohmann::json& j,
                                   const std::string& path) {
  std::vector<double> out;
  if (j.is_number()) {
    out.push_back(j.get<double>());
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError(path + " must hold numbers");
      out.push_back(v.get<double>());
    }
  } else {
    throw ConfigError(path + " must be a number or an array");
  }
  return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be a table");
  ExperimentConfig cfg;

  cfg.model = parse_model(doc.value("correlation", nlohmann::json()));

  if (doc.contains("equation")) {
    const auto& eq = doc["equation"];
    const std::string type = eq.value("type", "heat");
    try {
      if (type == "heat") {
        cfg.equation = EquationSpec::heat(cfg.model, eq.value("alpha", 2.0));
      } else if (type == "wave") {
        cfg.equation = EquationSpec::wave(cfg.model);
      } else {
        throw ConfigError("equation.type must be heat or wave");
      }
    } catch (const DomainError& e) {
      throw ConfigError(std::string("equation: ") + e.what());
    }
    cfg.time = eq.value("time", 1.0);
    if (!(cfg.time > 0.0)) throw ConfigError("equation.time must be positive");
    cfg.grid.max_lag = eq.value("max_lag", cfg.grid.max_lag);
    cfg.grid.points_per_decade =
        eq.value("points_per_decade", cfg.grid.points_per_decade);
    cfg.grid.vanish_threshold =
        eq.value("vanish_threshold", cfg.grid.vanish_threshold);
  }

  if (doc.contains("lattice")) {
    const auto& lat = doc["lattice"];
    cfg.lattice_min = lat.value("min", cfg.lattice_min);
    cfg.lattice_max = lat.value("max", cfg.lattice_max);
    cfg.lattice_spacing = lat.value("spacing", cfg.lattice_spacing);
    if (!(cfg.lattice_spacing > 0.0)) {
      throw ConfigError("lattice.spacing must be positive");
    }
    if (!(cfg.lattice_max > cfg.lattice_min)) {
      throw ConfigError("lattice.max must exceed lattice.min");
    }
  }

  if (doc.contains("gauge")) {
    const auto& gauge = doc["gauge"];
    if (gauge.contains("gamma")) {
      cfg.gammas = as_double_list(gauge["gamma"], "gauge.gamma");
    }
    for (double g : cfg.gammas) {
      if (!(g > 0.0)) throw ConfigError("gauge.gamma must be positive");
    }
    if (gauge.contains("variance")) {
      if (gauge["variance"].is_string()) {
        if (gauge["variance"] != "auto") {
          throw ConfigError("gauge.variance must be a number or \"auto\"");
        }
        cfg.variance_from_equation = true;
      } else {
        cfg.variance = require_positive(gauge["variance"], "gauge.variance");
      }
    }
  }

  if (doc.contains("estimators")) {
    const auto& est = doc["estimators"];
    if (est.contains("methods")) {
      cfg.estimators.clear();
      for (const auto& m : est["methods"]) {
        const std::string name = m.get<std::string>();
        if (name != "counting" && name != "bisection" && name != "series" &&
            name != "thickness") {
          throw ConfigError("estimators.methods: unknown method '" + name + "'");
        }
        cfg.estimators.push_back(name);
      }
    }
    cfg.shell_lo = est.value("shell_lo", cfg.shell_lo);
    cfg.shell_hi = est.value("shell_hi", cfg.shell_hi);
    if (cfg.shell_lo < 1 || cfg.shell_hi < cfg.shell_lo) {
      throw ConfigError("estimators shell range is invalid");
    }
    if (est.contains("rho")) {
      cfg.rho_values = as_double_list(est["rho"], "estimators.rho");
    }
    cfg.theta = est.value("theta", cfg.theta);
    if (!(cfg.theta > 0.0 && cfg.theta < 1.0)) {
      throw ConfigError("estimators.theta must lie in (0, 1)");
    }
    cfg.bisect_tolerance = est.value("tolerance", cfg.bisect_tolerance);
  }

  if (doc.contains("replication")) {
    const auto& rep = doc["replication"];
    cfg.seed = rep.value("seed", cfg.seed);
    cfg.replicates = rep.value("replicates", cfg.replicates);
    if (cfg.replicates < 1) throw ConfigError("replication.replicates must be >= 1");
  }

  if (doc.contains("output")) {
    cfg.output_dir = doc["output"].value("dir", "");
  }

  if (doc.contains("targets")) {
    const auto& tgt = doc["targets"];
    if (tgt.contains("dimension")) {
      if (tgt["dimension"].is_string()) {
        if (tgt["dimension"] != "d-minus-gamma") {
          throw ConfigError("targets.dimension must be numeric or d-minus-gamma");
        }
        cfg.target_formula = true;
      } else {
        cfg.target_values = as_double_list(tgt["dimension"], "targets.dimension");
        if (cfg.target_values->size() != cfg.gammas.size() &&
            cfg.target_values->size() != 1) {
          throw ConfigError("targets.dimension must match gauge.gamma length");
        }
      }
    }
    cfg.target_tolerance = tgt.value("tolerance", cfg.target_tolerance);
  }

  cfg.echo = doc;
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(load_config_file(path));
}

}  // namespace macropeaks
