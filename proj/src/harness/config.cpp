#include "dar/harness/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dar/error.hpp"
#include "dar/lyapunov/gamma.hpp"

namespace dar::harness {

namespace pt = boost::property_tree;

void StudyConfig::validate() const {
  if (replications < 1) throw Error(ErrorKind::Config, "replications must be at least 1");
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorKind::Config, "level must lie in (0, 1)");
  if (n < 10) throw Error(ErrorKind::Config, "n must be at least 10");
  if (B < 50) throw Error(ErrorKind::Config, "B must be at least 50");
  try {
    model::validate(params);
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  if (!(optimizer.xtol > 0.0) || !(optimizer.ftol >= 0.0) || optimizer.max_evals < 1 ||
      optimizer.n_starts < 1) {
    throw Error(ErrorKind::Config, "invalid optimizer settings");
  }
}

namespace {

template <typename T>
T get_value(const pt::ptree& node, const std::string& section, const std::string& key) {
  try {
    return node.get_value<T>();
  } catch (const pt::ptree_error&) {
    throw Error(ErrorKind::Config, "[" + section + "] " + key + ": invalid value '" + node.data() + "'");
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Config, key + ": invalid list entry '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::Config, key + ": empty list");
  return out;
}

}  // namespace

HarnessConfig parse_config(std::istream& in, HarnessConfig cfg) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config, "line " + std::to_string(e.line()) + ": " + e.message());
  }
  static const std::map<std::string, std::set<std::string>> known = {
      {"design", {"phi", "alpha", "omega", "innovation"}},
      {"study", {"n", "replications", "B", "level", "seed", "threads", "burn_in"}},
      {"optimizer", {"xtol", "ftol", "max_evals", "n_starts"}},
      {"power", {"phis", "alpha_ratio", "omega"}},
      {"region", {"phi_min", "phi_max", "points"}},
  };
  for (const auto& [section, body] : tree) {
    const auto it = known.find(section);
    if (it == known.end() || body.empty()) {
      throw Error(ErrorKind::Config, "unknown section or top-level key '" + section + "'");
    }
    for (const auto& [key, node] : body) {
      if (!it->second.contains(key)) {
        throw Error(ErrorKind::Config, "[" + section + "] unknown key '" + key + "'");
      }
      auto& s = cfg.study;
      if (section == "design") {
        if (key == "phi") s.params.phi = get_value<double>(node, section, key);
        if (key == "alpha") s.params.alpha = get_value<double>(node, section, key);
        if (key == "omega") s.params.omega = get_value<double>(node, section, key);
        if (key == "innovation") {
          try {
            s.innovation = model::parse_innovation(node.data());
          } catch (const Error& e) {
            throw Error(ErrorKind::Config, e.what());
          }
        }
      } else if (section == "study") {
        if (key == "n") s.n = get_value<std::size_t>(node, section, key);
        if (key == "replications") s.replications = get_value<std::size_t>(node, section, key);
        if (key == "B") s.B = get_value<std::size_t>(node, section, key);
        if (key == "level") s.level = get_value<double>(node, section, key);
        if (key == "seed") s.seed = get_value<std::uint64_t>(node, section, key);
        if (key == "threads") s.threads = get_value<unsigned>(node, section, key);
        if (key == "burn_in") s.burn_in = get_value<std::size_t>(node, section, key);
      } else if (section == "optimizer") {
        if (key == "xtol") s.optimizer.xtol = get_value<double>(node, section, key);
        if (key == "ftol") s.optimizer.ftol = get_value<double>(node, section, key);
        if (key == "max_evals") s.optimizer.max_evals = get_value<int>(node, section, key);
        if (key == "n_starts") s.optimizer.n_starts = get_value<int>(node, section, key);
      } else if (section == "power") {
        if (key == "phis") cfg.power.phis = parse_list(node.data(), key);
        if (key == "alpha_ratio") cfg.power.alpha_ratio = get_value<double>(node, section, key);
        if (key == "omega") cfg.power.omega = get_value<double>(node, section, key);
      } else if (section == "region") {
        if (key == "phi_min") cfg.region.phi_min = get_value<double>(node, section, key);
        if (key == "phi_max") cfg.region.phi_max = get_value<double>(node, section, key);
        if (key == "points") cfg.region.points = get_value<std::size_t>(node, section, key);
      }
    }
  }
  return cfg;
}

HarnessConfig load_config(const std::string& path, HarnessConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, path + ": cannot open config file");
  return parse_config(in, std::move(base));
}

std::size_t effective_burn_in(const StudyConfig& cfg) {
  if (cfg.burn_in) return *cfg.burn_in;
  const model::InnovationSpec spec(cfg.innovation);
  return lyapunov::true_gamma(cfg.params, spec) < 0.0 ? 500 : 0;
}

}  // namespace dar::harness
