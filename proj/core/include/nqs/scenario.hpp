#pragma once

// Scenario description and the flat key=value configuration format.
//
//   # comment
//   chi_a = 1
//   chi_ab = 0
//   alpha_re = 1/25
//   T = pi
//   tracked = 0:0,0:1,1:0
//   initial_state = coherent:0.1,0
//
// Recognized keys: chi_a chi_b chi_ab epsilon_re epsilon_im alpha_re alpha_im
// T dim_a dim_b n_kicks tracked initial_state event_tol. Real-valued keys
// accept a decimal number, `pi`, or a ratio `x/y` of those.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nqs/diagnostics.hpp"
#include "nqs/fock.hpp"
#include "nqs/hamiltonian.hpp"

namespace nqs {

inline constexpr double kDefaultEventTolerance = 0.02;

struct InitialState {
  enum class Kind { vacuum, coherent };

  Kind kind = Kind::vacuum;
  Complex alpha{0.0, 0.0};  ///< coherent amplitude in mode a

  /// "vacuum" or "coherent:<re>,<im>".
  static InitialState parse(std::string_view text);
  std::string to_string() const;

  /// Coherent input is the renormalized truncated coherent state in mode a
  /// times the mode-b vacuum.
  StateVector build(const FockBasis& basis) const;

  friend bool operator==(const InitialState&, const InitialState&) = default;
};

struct Scenario {
  std::string name = "custom";
  CouplerConfig cfg;
  /// Explicit tracked set; when empty the set follows chi_ab
  /// (TrackedSet::default_for).
  std::optional<TrackedSet> tracked;
  InitialState initial;
  double event_tol = kDefaultEventTolerance;

  TrackedSet tracked_set() const { return tracked ? *tracked : TrackedSet::default_for(cfg.chi_ab); }

  /// Validates the coupler config, the tracked set against the basis, and
  /// the event tolerance. Throws std::invalid_argument / std::out_of_range.
  void validate() const;
};

/// Config problem tied to a key and its origin ("file.cfg:3" or "--chi_ab").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, std::string origin, const std::string& message);

  const std::string& key() const noexcept { return key_; }
  const std::string& origin() const noexcept { return origin_; }

 private:
  std::string key_;
  std::string origin_;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  std::string origin;
};

/// All recognized keys, in canonical order.
const std::vector<std::string>& config_keys();
bool is_config_key(std::string_view key);
/// Keys that take a single number (everything except tracked and initial_state).
bool is_numeric_key(std::string_view key);

/// Splits key=value lines. Blank lines and `#` comments are skipped. Origins
/// are "<source>:<line>". Throws ConfigError on malformed lines or unknown keys.
std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source);
std::vector<ConfigEntry> read_config_file(const std::string& path);

/// Applies one setting in place. Throws ConfigError on unknown keys or values
/// that do not parse.
void apply_setting(Scenario& scenario, const ConfigEntry& entry);

/// Applies `entries` in order on top of `base`. Without a base, the physical
/// keys chi_a chi_b chi_ab epsilon_re alpha_re T dim_a dim_b are required;
/// the rest default. The result is validated.
Scenario build_scenario(const std::optional<Scenario>& base, std::span<const ConfigEntry> entries);

/// Built-in scenarios "fig1" (with cross-Kerr) and "fig3" (chi_ab = 0).
Scenario preset(std::string_view name);
const std::vector<std::string>& preset_names();

/// Renders a scenario in the config format; parse_config_text on the output
/// reproduces the scenario.
std::string format_config(const Scenario& scenario);

std::string format_tracked(const TrackedSet& set);
TrackedSet parse_tracked(std::string_view text);

/// Parses a real number: decimal, `pi`, or `x/y`. Throws std::invalid_argument.
double parse_real(std::string_view text);

}  // namespace nqs
