#include "wcema/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "wcema/errors.hpp"

namespace wcema {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    auto item = trim(std::string_view(s).substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    start = end + 1;
  }
  return out;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string source) : tree_(tree), source_(std::move(source)) {}

  void allow(const std::string& section, std::set<std::string> keys) {
    allowed_[section] = std::move(keys);
  }

  void check_unknown() const {
    for (const auto& [section, body] : tree_) {
      if (!body.data().empty() && body.empty()) fail("key '" + section + "' outside a section");
      auto it = allowed_.find(section);
      if (it == allowed_.end()) fail("unknown section [" + section + "]");
      for (const auto& [key, value] : body) {
        if (!it->second.count(key)) fail("unknown key '" + key + "' in section [" + section + "]");
      }
    }
  }

  std::optional<std::string> get(const std::string& section, const std::string& key) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(section + "." + key, '.'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::string require(const std::string& section, const std::string& key) const {
    auto v = get(section, key);
    if (!v || v->empty()) fail("missing required key '" + key + "' in section [" + section + "]");
    return *v;
  }

  double number(const std::string& section, const std::string& key, const std::string& text) const {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
      fail("[" + section + "] " + key + " = '" + text + "' is not a finite number");
    }
    return v;
  }

  std::uint64_t count(const std::string& section, const std::string& key,
                      const std::string& text) const {
    std::uint64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      fail("[" + section + "] " + key + " = '" + text + "' is not a nonnegative integer");
    }
    return v;
  }

  bool boolean(const std::string& section, const std::string& key, const std::string& text) const {
    const auto u = upper(text);
    if (u == "TRUE" || u == "YES" || u == "1") return true;
    if (u == "FALSE" || u == "NO" || u == "0") return false;
    fail("[" + section + "] " + key + " = '" + text + "' is not a boolean");
  }

  Vector vector(const std::string& section, const std::string& key, const std::string& text) const {
    std::vector<double> values;
    for (const auto& item : split_list(text)) values.push_back(number(section, key, item));
    return Vector(std::move(values));
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(source_ + ": " + message);
  }

 private:
  const pt::ptree& tree_;
  std::string source_;
  std::map<std::string, std::set<std::string>> allowed_;
};

}  // namespace

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {"FEMA1", "FEMA2", "FEMA3", "SGD",
                                                 "ZEMA1", "ZEMA2", "ZEMA3", "ZSGD"};
  return names;
}

AlgorithmSpec algorithm_spec(std::string_view name) {
  std::string key = upper(name);
  if (key == "Z-SGD") key = "ZSGD";
  const auto& names = known_algorithms();
  auto it = std::find(names.begin(), names.end(), key);
  if (it == names.end()) {
    throw ConfigError("unknown algorithm '" + std::string(name) +
                      "' (expected FEMA1, FEMA2, FEMA3, SGD, ZEMA1, ZEMA2, ZEMA3 or ZSGD)");
  }
  AlgorithmSpec spec;
  spec.name = key;
  spec.stream_id = static_cast<std::uint64_t>(it - names.begin()) + 1;
  spec.zeroth_order = key[0] == 'Z';
  std::string base = key;
  if (key == "ZSGD") {
    base = "SGD";
  } else if (spec.zeroth_order) {
    base = "FEMA" + key.substr(4);
  }
  spec.preset = preset(base);
  spec.preset.name = key;
  return spec;
}

std::vector<double> StepsizeGrid::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min;
    return out;
  }
  for (std::size_t k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(count - 1);
    if (spacing == Spacing::linear) {
      out[k] = min + s * (max - min);
    } else {
      out[k] = std::exp(std::log(min) + s * (std::log(max) - std::log(min)));
    }
  }
  out.front() = min;
  out.back() = max;
  return out;
}

std::uint64_t ExperimentConfig::horizon() const {
  return epochs * static_cast<std::uint64_t>(problem.n) - 1;
}

double ExperimentConfig::smoothing() const {
  const double root = std::sqrt(static_cast<double>(horizon()) + 1.0);
  switch (mu_rule) {
    case MuRule::paper_experiment: return 10.0 / root;
    case MuRule::corollary: return static_cast<double>(problem.d) / root;
    case MuRule::explicit_value: return mu;
  }
  return mu;
}

const char* to_string(StepRule rule) {
  return rule == StepRule::constant ? "constant" : "over_sqrt_horizon";
}

const char* to_string(MuRule rule) {
  switch (rule) {
    case MuRule::paper_experiment: return "paper_experiment";
    case MuRule::corollary: return "corollary";
    case MuRule::explicit_value: return "explicit";
  }
  return "unknown";
}

void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (c.problem.d == 0) fail("[problem] d must be positive");
  if (c.problem.n == 0) fail("[problem] n must be positive");
  if (c.problem.kind == ProblemSpec::Kind::quadratic) {
    if (c.problem.spectrum.size() != c.problem.d) fail("[problem] spectrum must have d entries");
    if (c.problem.linear.size() != c.problem.d) fail("[problem] linear must have d entries");
    if (c.problem.noise < 0.0) fail("[problem] noise must be nonnegative");
  }
  const auto& r = c.problem.regularizer;
  if (r != "none" && r != "l1" && r != "box" && r != "ball") {
    fail("[problem] regularizer must be none, l1, box or ball");
  }
  if (r == "l1" && c.problem.l1_weight < 0.0) fail("[problem] l1_weight must be nonnegative");
  if (r == "box" && !(c.problem.box_lower <= c.problem.box_upper)) {
    fail("[problem] box_lower must not exceed box_upper");
  }
  if (r == "ball" && !(c.problem.ball_radius > 0.0)) fail("[problem] ball_radius must be positive");
  if (c.algorithms.empty()) fail("[algorithms] list is empty");
  for (const auto& a : c.algorithms) algorithm_spec(a);
  if (c.epochs == 0) fail("[run] epochs must be positive");
  if (c.repetitions == 0) fail("[run] repetitions must be at least 1");
  if (c.grid.count == 0) fail("[grid] count must be at least 1");
  if (!(c.grid.min > 0.0)) fail("[grid] min must be positive");
  if (c.grid.count > 1 && !(c.grid.min < c.grid.max)) fail("[grid] min must be below max");
  if (c.mu_rule == MuRule::explicit_value && !(c.mu > 0.0)) fail("[run] mu must be positive");
  if (!(c.inner.tol > 0.0)) fail("[run] inner_tol must be positive");
  if (c.inner.max_iter == 0) fail("[run] inner_max_iter must be positive");
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  Reader rd(tree, source);
  rd.allow("problem", {"type", "d", "n", "spectrum", "linear", "noise", "regularizer",
                       "l1_weight", "box_lower", "box_upper", "ball_radius"});
  rd.allow("algorithms", {"list"});
  rd.allow("grid", {"count", "min", "max", "spacing", "stepsize_rule"});
  rd.allow("run", {"epochs", "repetitions", "master_seed", "mu_rule", "mu", "output_dir",
                   "threads", "stationarity", "save_traces", "inner_tol", "inner_max_iter"});
  rd.check_unknown();

  ExperimentConfig c;
  const std::string type = rd.require("problem", "type");
  if (type == "phase_retrieval") {
    c.problem.kind = ProblemSpec::Kind::phase_retrieval;
  } else if (type == "quadratic") {
    c.problem.kind = ProblemSpec::Kind::quadratic;
  } else {
    rd.fail("[problem] type must be phase_retrieval or quadratic, got '" + type + "'");
  }
  c.problem.d = rd.count("problem", "d", rd.require("problem", "d"));
  c.problem.n = rd.count("problem", "n", rd.require("problem", "n"));
  if (auto v = rd.get("problem", "spectrum")) c.problem.spectrum = rd.vector("problem", "spectrum", *v);
  if (auto v = rd.get("problem", "linear")) c.problem.linear = rd.vector("problem", "linear", *v);
  if (auto v = rd.get("problem", "noise")) c.problem.noise = rd.number("problem", "noise", *v);
  if (auto v = rd.get("problem", "regularizer")) c.problem.regularizer = *v;
  if (auto v = rd.get("problem", "l1_weight")) c.problem.l1_weight = rd.number("problem", "l1_weight", *v);
  if (auto v = rd.get("problem", "box_lower")) c.problem.box_lower = rd.number("problem", "box_lower", *v);
  if (auto v = rd.get("problem", "box_upper")) c.problem.box_upper = rd.number("problem", "box_upper", *v);
  if (auto v = rd.get("problem", "ball_radius")) c.problem.ball_radius = rd.number("problem", "ball_radius", *v);

  c.algorithms = split_list(rd.require("algorithms", "list"));

  c.grid.count = rd.count("grid", "count", rd.require("grid", "count"));
  c.grid.min = rd.number("grid", "min", rd.require("grid", "min"));
  c.grid.max = rd.number("grid", "max", rd.require("grid", "max"));
  if (auto v = rd.get("grid", "spacing")) {
    if (*v == "linear") {
      c.grid.spacing = StepsizeGrid::Spacing::linear;
    } else if (*v == "log") {
      c.grid.spacing = StepsizeGrid::Spacing::log;
    } else {
      rd.fail("[grid] spacing must be linear or log");
    }
  }
  if (auto v = rd.get("grid", "stepsize_rule")) {
    if (*v == "over_sqrt_horizon") {
      c.step_rule = StepRule::over_sqrt_horizon;
    } else if (*v == "constant") {
      c.step_rule = StepRule::constant;
    } else {
      rd.fail("[grid] stepsize_rule must be over_sqrt_horizon or constant");
    }
  }

  c.epochs = rd.count("run", "epochs", rd.require("run", "epochs"));
  c.repetitions = rd.count("run", "repetitions", rd.require("run", "repetitions"));
  c.master_seed = rd.count("run", "master_seed", rd.require("run", "master_seed"));
  if (auto v = rd.get("run", "mu_rule")) {
    if (*v == "paper_experiment") {
      c.mu_rule = MuRule::paper_experiment;
    } else if (*v == "corollary") {
      c.mu_rule = MuRule::corollary;
    } else if (*v == "explicit") {
      c.mu_rule = MuRule::explicit_value;
    } else {
      rd.fail("[run] mu_rule must be paper_experiment, corollary or explicit");
    }
  }
  if (auto v = rd.get("run", "mu")) c.mu = rd.number("run", "mu", *v);
  if (auto v = rd.get("run", "output_dir")) c.output_dir = *v;
  if (auto v = rd.get("run", "threads")) c.threads = rd.count("run", "threads", *v);
  if (auto v = rd.get("run", "stationarity")) c.stationarity = rd.boolean("run", "stationarity", *v);
  if (auto v = rd.get("run", "save_traces")) c.save_traces = rd.boolean("run", "save_traces", *v);
  if (auto v = rd.get("run", "inner_tol")) c.inner.tol = rd.number("run", "inner_tol", *v);
  if (auto v = rd.get("run", "inner_max_iter")) {
    c.inner.max_iter = rd.count("run", "inner_max_iter", *v);
  }

  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

}  // namespace wcema
