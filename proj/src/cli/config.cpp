#include "cli/config.hpp"

#include <set>

#include "hardyliou/error.hpp"

namespace hardyliou::cli {

namespace {

const std::set<std::string> kKnownKeys = {"schema", "N", "M", "f", "phi", "ode",
                                          "trajectories", "output", "seed", "params"};

template <typename Fn>
void collect(std::vector<std::string>& problems, const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    problems.push_back(field + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    problems.push_back(field + ": " + e.what());
  }
}

void require_number(const io::json& j, const std::string& what) {
  if (!j.is_number()) throw Error(ErrorKind::Config, what + " must be a number");
}

}  // namespace

const TaylorPolynomial& ExperimentConfig::symbol() const {
  if (!f) throw Error(ErrorKind::Config, "f: required for this command");
  return *f;
}

const TaylorPolynomial& ExperimentConfig::weight_map() const {
  if (!phi) throw Error(ErrorKind::Config, "phi: required for this command");
  return *phi;
}

const OdeSpec& ExperimentConfig::flow() const {
  if (!ode) throw Error(ErrorKind::Config, "ode: required for this command");
  return *ode;
}

ExperimentConfig parse_config(const io::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  ExperimentConfig cfg;
  cfg.raw = doc;
  std::vector<std::string> problems;

  for (const auto& [key, value] : doc.items())
    if (!kKnownKeys.count(key)) problems.push_back(key + ": unknown field");

  if (doc.contains("schema")) {
    const io::json& s = doc["schema"];
    if (!s.is_number_integer() || s.get<int>() != io::kSchemaVersion)
      problems.push_back("schema: expected " + std::to_string(io::kSchemaVersion));
  }
  if (doc.contains("N")) {
    const io::json& n = doc["N"];
    if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > 4096)
      problems.push_back("N: expected an integer in [1, 4096]");
    else
      cfg.N = n.get<int>();
  }
  if (doc.contains("M")) {
    const io::json& m = doc["M"];
    if (!m.is_number_integer() || m.get<long long>() < 1)
      problems.push_back("M: expected a positive integer");
    else if (m.get<long long>() < 2LL * cfg.N + 2)
      problems.push_back("M: must be at least 2N+2 = " + std::to_string(2 * cfg.N + 2));
    else
      cfg.M = m.get<std::size_t>();
  }
  if (doc.contains("f")) collect(problems, "f", [&] { cfg.f = io::polynomial_from_json(doc["f"]); });
  if (doc.contains("phi"))
    collect(problems, "phi", [&] { cfg.phi = io::polynomial_from_json(doc["phi"]); });
  if (doc.contains("ode")) {
    collect(problems, "ode", [&] {
      const io::json& o = doc["ode"];
      if (!o.is_object()) throw Error(ErrorKind::Config, "expected an object {z0, T, dt}");
      OdeSpec spec;
      spec.z0 = io::complex_from_json(o.at("z0"));
      if (o.contains("T")) {
        require_number(o["T"], "T");
        spec.T = o["T"].get<double>();
      }
      if (o.contains("dt")) {
        require_number(o["dt"], "dt");
        spec.dt = o["dt"].get<double>();
      }
      if (!(std::abs(spec.z0) < 1.0)) throw Error(ErrorKind::Config, "z0 must lie in the open disk");
      if (!(spec.T > 0.0) || !(spec.dt > 0.0) || spec.dt > spec.T)
        throw Error(ErrorKind::Config, "need T > 0 and 0 < dt <= T");
      cfg.ode = spec;
    });
  }
  if (doc.contains("trajectories")) {
    const io::json& list = doc["trajectories"];
    if (!list.is_array()) {
      problems.push_back("trajectories: expected a list of CSV paths");
    } else {
      for (const io::json& p : list) {
        if (!p.is_string()) {
          problems.push_back("trajectories: entries must be strings");
          continue;
        }
        std::filesystem::path path = p.get<std::string>();
        if (path.is_relative()) path = base_dir / path;
        if (!std::filesystem::is_regular_file(path))
          problems.push_back("trajectories: file not found: " + path.string());
        cfg.trajectories.push_back(path);
      }
    }
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string())
      problems.push_back("output: expected a path string");
    else
      cfg.output = base_dir / doc["output"].get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned())
      problems.push_back("seed: expected a nonnegative integer");
    else
      cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("params")) {
    if (!doc["params"].is_object())
      problems.push_back("params: expected an object");
    else
      cfg.params = doc["params"];
  }

  if (!problems.empty()) {
    std::string msg = "invalid config";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw Error(ErrorKind::Config, msg);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error&) {
    throw Error(ErrorKind::Config, "cannot read config " + path.string());
  }
  io::json doc;
  try {
    doc = io::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Config, path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

double param_double(const ExperimentConfig& cfg, const char* key, double fallback) {
  if (!cfg.params.contains(key)) return fallback;
  if (!cfg.params[key].is_number())
    throw Error(ErrorKind::Config, std::string("params.") + key + ": expected a number");
  return cfg.params[key].get<double>();
}

int param_int(const ExperimentConfig& cfg, const char* key, int fallback) {
  if (!cfg.params.contains(key)) return fallback;
  if (!cfg.params[key].is_number_integer())
    throw Error(ErrorKind::Config, std::string("params.") + key + ": expected an integer");
  return cfg.params[key].get<int>();
}

std::string param_string(const ExperimentConfig& cfg, const char* key, const std::string& fallback) {
  if (!cfg.params.contains(key)) return fallback;
  if (!cfg.params[key].is_string())
    throw Error(ErrorKind::Config, std::string("params.") + key + ": expected a string");
  return cfg.params[key].get<std::string>();
}

}  // namespace hardyliou::cli
