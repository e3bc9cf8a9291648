#include "nqs/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace nqs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_plain_real(std::string_view text) {
  text = trim(text);
  if (text == "pi") return std::numbers::pi;
  if (text == "-pi") return -std::numbers::pi;
  double value = 0.0;
  const char* end = text.data() + text.size();
  // from_chars rejects a leading '+'.
  const char* begin = (!text.empty() && text.front() == '+') ? text.data() + 1 : text.data();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string shortest(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

const std::vector<std::string> kRequiredWithoutBase = {"chi_a", "chi_b", "chi_ab", "epsilon_re",
                                                       "alpha_re", "T", "dim_a", "dim_b"};

}  // namespace

double parse_real(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return parse_plain_real(text);
  }
  const double numerator = parse_plain_real(text.substr(0, slash));
  const double denominator = parse_plain_real(text.substr(slash + 1));
  if (denominator == 0.0) {
    throw std::invalid_argument("division by zero in '" + std::string(text) + "'");
  }
  return numerator / denominator;
}

InitialState InitialState::parse(std::string_view text) {
  text = trim(text);
  if (text == "vacuum") {
    return {};
  }
  constexpr std::string_view prefix = "coherent:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto parts = split(text.substr(prefix.size()), ',');
    if (parts.size() != 2) {
      throw std::invalid_argument("coherent initial state needs 'coherent:<re>,<im>'");
    }
    return {Kind::coherent, Complex(parse_real(parts[0]), parse_real(parts[1]))};
  }
  throw std::invalid_argument("unknown initial state '" + std::string(text) + "'");
}

std::string InitialState::to_string() const {
  if (kind == Kind::vacuum) return "vacuum";
  return "coherent:" + shortest(alpha.real()) + "," + shortest(alpha.imag());
}

StateVector InitialState::build(const FockBasis& basis) const {
  if (kind == Kind::vacuum) {
    return vacuum_state(basis);
  }
  Vector mode_b = Vector::Zero(basis.dim_b());
  mode_b(0) = 1.0;
  return product_state(basis, coherent_state(alpha, basis.dim_a()).normalized, mode_b);
}

void Scenario::validate() const {
  cfg.validate();
  tracked_set().check_within(cfg.basis());
  if (!(event_tol > 0.0 && event_tol <= 0.1)) {
    throw std::invalid_argument("event_tol must lie in (0, 0.1], got " + shortest(event_tol));
  }
}

ConfigError::ConfigError(std::string key, std::string origin, const std::string& message)
    : std::invalid_argument(origin + ": " + (key.empty() ? std::string() : "key '" + key + "': ") + message),
      key_(std::move(key)),
      origin_(std::move(origin)) {}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "chi_a", "chi_b", "chi_ab", "epsilon_re", "epsilon_im", "alpha_re", "alpha_im",
      "T", "dim_a", "dim_b", "n_kicks", "tracked", "initial_state", "event_tol"};
  return keys;
}

bool is_config_key(std::string_view key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

bool is_numeric_key(std::string_view key) {
  return is_config_key(key) && key != "tracked" && key != "initial_state";
}

std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source) {
  std::vector<ConfigEntry> entries;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    const std::string origin = std::string(source) + ":" + std::to_string(line_no);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", origin, "expected key=value, got '" + std::string(line) + "'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (!is_config_key(key)) {
      throw ConfigError(key, origin, "unknown key");
    }
    if (value.empty()) {
      throw ConfigError(key, origin, "missing value");
    }
    entries.push_back({std::move(key), std::move(value), origin});
  }
  return entries;
}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("", path, "cannot open config file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

void apply_setting(Scenario& s, const ConfigEntry& entry) {
  const std::string& key = entry.key;
  const std::string& value = entry.value;
  try {
    if (key == "chi_a") s.cfg.chi_a = parse_real(value);
    else if (key == "chi_b") s.cfg.chi_b = parse_real(value);
    else if (key == "chi_ab") s.cfg.chi_ab = parse_real(value);
    else if (key == "epsilon_re") s.cfg.epsilon.real(parse_real(value));
    else if (key == "epsilon_im") s.cfg.epsilon.imag(parse_real(value));
    else if (key == "alpha_re") s.cfg.alpha.real(parse_real(value));
    else if (key == "alpha_im") s.cfg.alpha.imag(parse_real(value));
    else if (key == "T") s.cfg.period = parse_real(value);
    else if (key == "dim_a") s.cfg.dim_a = parse_int(value);
    else if (key == "dim_b") s.cfg.dim_b = parse_int(value);
    else if (key == "n_kicks") s.cfg.n_kicks = parse_int(value);
    else if (key == "event_tol") s.event_tol = parse_real(value);
    else if (key == "initial_state") s.initial = InitialState::parse(value);
    else if (key == "tracked") {
      const auto t = trim(value);
      if (t == "auto") s.tracked.reset();
      else s.tracked = parse_tracked(t);
    } else {
      throw ConfigError(key, entry.origin, "unknown key");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key, entry.origin, e.what());
  }
}

Scenario build_scenario(const std::optional<Scenario>& base, std::span<const ConfigEntry> entries) {
  Scenario s = base.value_or(Scenario{});
  if (!base) {
    std::set<std::string> given;
    for (const auto& e : entries) given.insert(e.key);
    for (const auto& key : kRequiredWithoutBase) {
      if (!given.count(key)) {
        const std::string origin = entries.empty() ? std::string("config") : entries.front().origin;
        throw ConfigError(key, origin.substr(0, origin.rfind(':')), "missing required key");
      }
    }
  }
  for (const auto& e : entries) {
    apply_setting(s, e);
  }
  try {
    s.validate();
  } catch (const std::exception& e) {
    throw ConfigError("", "config", e.what());
  }
  return s;
}

Scenario preset(std::string_view name) {
  Scenario s;
  s.cfg.chi_a = 1.0;
  s.cfg.chi_b = 1.0;
  s.cfg.epsilon = Complex(1.0 / 100.0, 0.0);
  s.cfg.alpha = Complex(1.0 / 25.0, 0.0);
  s.cfg.period = std::numbers::pi;
  s.cfg.dim_a = 10;
  s.cfg.dim_b = 10;
  s.cfg.n_kicks = 1000;
  s.initial = {};
  s.event_tol = kDefaultEventTolerance;
  // Tracking follows chi_ab: three states for fig1, four for fig3.
  s.tracked.reset();
  if (name == "fig1") {
    s.name = "fig1";
    s.cfg.chi_ab = 1.0;
  } else if (name == "fig3") {
    s.name = "fig3";
    s.cfg.chi_ab = 0.0;
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1", "fig3"};
  return names;
}

std::string format_tracked(const TrackedSet& set) {
  std::string out;
  for (const auto& label : set.labels()) {
    if (!out.empty()) out += ',';
    out += std::to_string(label.m) + ":" + std::to_string(label.n);
  }
  return out;
}

TrackedSet parse_tracked(std::string_view text) {
  text = trim(text);
  if (text == "three") return TrackedSet::three_state();
  if (text == "four") return TrackedSet::four_state();
  std::vector<FockLabel> labels;
  for (const auto part : split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("tracked label '" + std::string(part) + "' is not of the form m:n");
    }
    labels.push_back({parse_int(part.substr(0, colon)), parse_int(part.substr(colon + 1))});
  }
  return TrackedSet(std::move(labels));
}

std::string format_config(const Scenario& s) {
  std::ostringstream out;
  out << "# scenario " << s.name << '\n'
      << "chi_a=" << shortest(s.cfg.chi_a) << '\n'
      << "chi_b=" << shortest(s.cfg.chi_b) << '\n'
      << "chi_ab=" << shortest(s.cfg.chi_ab) << '\n'
      << "epsilon_re=" << shortest(s.cfg.epsilon.real()) << '\n'
      << "epsilon_im=" << shortest(s.cfg.epsilon.imag()) << '\n'
      << "alpha_re=" << shortest(s.cfg.alpha.real()) << '\n'
      << "alpha_im=" << shortest(s.cfg.alpha.imag()) << '\n'
      << "T=" << shortest(s.cfg.period) << '\n'
      << "dim_a=" << s.cfg.dim_a << '\n'
      << "dim_b=" << s.cfg.dim_b << '\n'
      << "n_kicks=" << s.cfg.n_kicks << '\n'
      << "tracked=" << (s.tracked ? format_tracked(*s.tracked) : std::string("auto")) << '\n'
      << "initial_state=" << s.initial.to_string() << '\n'
      << "event_tol=" << shortest(s.event_tol) << '\n';
  return out.str();
}

}  // namespace nqs
