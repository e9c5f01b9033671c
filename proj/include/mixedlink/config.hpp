#ifndef MIXEDLINK_CONFIG_HPP
#define MIXEDLINK_CONFIG_HPP

#include "mixedlink/family.hpp"
#include "mixedlink/mixedpoly.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mixedlink {

/// Parse or validation problem in a config file; `line` and `column` are
/// 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }
  /// "path:line:column: message"
  std::string diagnostic(const std::string& path) const;

 private:
  int line_;
  int column_;
};

struct RunConfig {
  std::optional<CyclicFamilySpec> spec;
  std::optional<MixedPolynomial> polynomial;
  std::vector<double> t_grid;
  std::vector<double> r_list;
  std::size_t samples_per_cell = 50;
  std::size_t nullity_samples = 2;
  std::optional<std::uint64_t> seed;
  double sigma_tol = 1e-8;
  double newton_tol = 1e-12;
  double zero_threshold = 1e-9;
  std::vector<double> eta_grid;
  std::vector<double> s_grid;
  std::optional<double> t;  // trace
  std::optional<double> r;  // trace
  bool relax_spec = false;
  std::optional<std::pair<std::size_t, std::size_t>> perturb_exponent;  // torus-map control
  std::optional<std::string> out;
};

/// YAML mapping; unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Everything that determines results (the output path is left out).
nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace mixedlink

#endif  // MIXEDLINK_CONFIG_HPP
