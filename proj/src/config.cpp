#include "mixedlink/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace mixedlink {

namespace {

const std::set<std::string> kKeys = {
    "n",        "a",         "b",      "t_grid",     "r_list",    "samples_per_cell", "nullity_samples",
    "seed",     "sigma_tol", "newton_tol", "zero_threshold", "eta_grid", "s_grid",   "t",
    "r",        "relax_spec", "polynomial", "perturb_exponent", "out"};

ConfigError error_at(const YAML::Node& node, const std::string& what) {
  const auto mark = node.Mark();
  if (mark.is_null()) return ConfigError(what);
  return ConfigError(what, mark.line + 1, mark.column + 1);
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw error_at(node, "'" + key + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion&) {
    throw error_at(node, "'" + key + "' has an invalid value '" + node.Scalar() + "'");
  }
}

template <typename T>
std::vector<T> sequence(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) throw error_at(node, "'" + key + "' must be a list");
  std::vector<T> out;
  for (const auto& item : node) out.push_back(scalar<T>(item, key));
  return out;
}

MixedPolynomial polynomial_node(const YAML::Node& node) {
  if (!node.IsMap()) throw error_at(node, "'polynomial' must be a mapping with n and monomials");
  if (!node["n"] || !node["monomials"]) throw error_at(node, "'polynomial' needs 'n' and 'monomials'");
  const auto n = scalar<std::size_t>(node["n"], "polynomial.n");
  const YAML::Node monos = node["monomials"];
  if (!monos.IsSequence()) throw error_at(monos, "'polynomial.monomials' must be a list");
  std::vector<MixedMonomial> terms;
  for (const auto& m : monos) {
    if (!m.IsMap() || !m["nu"] || !m["mu"]) throw error_at(m, "monomial records need 'nu' and 'mu'");
    const double re = m["coeff_re"] ? scalar<double>(m["coeff_re"], "coeff_re") : 0.0;
    const double im = m["coeff_im"] ? scalar<double>(m["coeff_im"], "coeff_im") : 0.0;
    terms.push_back({Complex(re, im), sequence<int>(m["nu"], "nu"), sequence<int>(m["mu"], "mu")});
  }
  try {
    return MixedPolynomial(n, std::move(terms));
  } catch (const std::exception& e) {
    throw error_at(node, std::string("invalid polynomial: ") + e.what());
  }
}

}  // namespace

std::string ConfigError::diagnostic(const std::string& path) const {
  std::ostringstream os;
  os << path;
  if (line_ > 0) os << ":" << line_ << ":" << column_;
  os << ": " << what();
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping of keys to values", 1, 1);

  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kKeys.count(key)) throw error_at(kv.first, "unknown key '" + key + "'");
  }

  RunConfig cfg;
  if (root["a"] || root["b"]) {
    if (!root["a"] || !root["b"]) throw error_at(root, "'a' and 'b' must be given together");
    CyclicFamilySpec spec{sequence<int>(root["a"], "a"), sequence<int>(root["b"], "b")};
    if (root["n"] && scalar<std::size_t>(root["n"], "n") != spec.n()) {
      throw error_at(root["n"], "'n' does not match the length of 'a'");
    }
    if (spec.a.size() != spec.b.size()) throw error_at(root["b"], "'a' and 'b' differ in length");
    cfg.spec = std::move(spec);
  } else if (root["n"]) {
    throw error_at(root["n"], "'n' given without 'a' and 'b'");
  }
  if (root["polynomial"]) cfg.polynomial = polynomial_node(root["polynomial"]);
  if (root["t_grid"]) cfg.t_grid = sequence<double>(root["t_grid"], "t_grid");
  if (root["r_list"]) cfg.r_list = sequence<double>(root["r_list"], "r_list");
  if (root["samples_per_cell"]) cfg.samples_per_cell = scalar<std::size_t>(root["samples_per_cell"], "samples_per_cell");
  if (root["nullity_samples"]) cfg.nullity_samples = scalar<std::size_t>(root["nullity_samples"], "nullity_samples");
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["sigma_tol"]) cfg.sigma_tol = scalar<double>(root["sigma_tol"], "sigma_tol");
  if (root["newton_tol"]) cfg.newton_tol = scalar<double>(root["newton_tol"], "newton_tol");
  if (root["zero_threshold"]) cfg.zero_threshold = scalar<double>(root["zero_threshold"], "zero_threshold");
  if (root["eta_grid"]) cfg.eta_grid = sequence<double>(root["eta_grid"], "eta_grid");
  if (root["s_grid"]) cfg.s_grid = sequence<double>(root["s_grid"], "s_grid");
  if (root["t"]) cfg.t = scalar<double>(root["t"], "t");
  if (root["r"]) cfg.r = scalar<double>(root["r"], "r");
  if (root["relax_spec"]) cfg.relax_spec = scalar<bool>(root["relax_spec"], "relax_spec");
  if (root["perturb_exponent"]) {
    const auto p = sequence<std::size_t>(root["perturb_exponent"], "perturb_exponent");
    if (p.size() != 2) throw error_at(root["perturb_exponent"], "'perturb_exponent' must be [row, column]");
    cfg.perturb_exponent = std::make_pair(p[0], p[1]);
  }
  if (root["out"]) cfg.out = scalar<std::string>(root["out"], "out");

  for (const auto& [key, value] : {std::pair{"sigma_tol", cfg.sigma_tol}, std::pair{"newton_tol", cfg.newton_tol},
                                   std::pair{"zero_threshold", cfg.zero_threshold}}) {
    if (!(value > 0.0)) throw error_at(root[key], std::string("'") + key + "' must be positive");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  if (c.spec) {
    j["n"] = c.spec->n();
    j["a"] = c.spec->a;
    j["b"] = c.spec->b;
  }
  if (c.polynomial) j["polynomial"] = nlohmann::ordered_json::parse(to_json(*c.polynomial).dump());
  j["t_grid"] = c.t_grid;
  j["r_list"] = c.r_list;
  j["samples_per_cell"] = c.samples_per_cell;
  j["nullity_samples"] = c.nullity_samples;
  j["seed"] = c.seed ? nlohmann::ordered_json(*c.seed) : nullptr;
  j["sigma_tol"] = c.sigma_tol;
  j["newton_tol"] = c.newton_tol;
  j["zero_threshold"] = c.zero_threshold;
  j["eta_grid"] = c.eta_grid;
  j["s_grid"] = c.s_grid;
  if (c.t) j["t"] = *c.t;
  if (c.r) j["r"] = *c.r;
  j["relax_spec"] = c.relax_spec;
  if (c.perturb_exponent) j["perturb_exponent"] = {c.perturb_exponent->first, c.perturb_exponent->second};
  return j;
}

}  // namespace mixedlink
