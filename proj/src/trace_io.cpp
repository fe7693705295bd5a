#include "wcema/trace_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wcema/csv.hpp"
#include "wcema/errors.hpp"

namespace wcema {

namespace {

using nlohmann::json;

json problem_to_json(const ProblemSpec& p) {
  json j;
  j["type"] = p.kind == ProblemSpec::Kind::phase_retrieval ? "phase_retrieval" : "quadratic";
  j["d"] = p.d;
  j["n"] = p.n;
  j["regularizer"] = p.regularizer;
  j["l1_weight"] = p.l1_weight;
  j["box_lower"] = p.box_lower;
  j["box_upper"] = p.box_upper;
  j["ball_radius"] = p.ball_radius;
  if (p.kind == ProblemSpec::Kind::quadratic) {
    j["spectrum"] = p.spectrum.entries();
    j["linear"] = p.linear.entries();
    j["noise"] = p.noise;
  }
  return j;
}

ProblemSpec problem_from_json(const json& j) {
  ProblemSpec p;
  const auto type = j.at("type").get<std::string>();
  if (type == "phase_retrieval") {
    p.kind = ProblemSpec::Kind::phase_retrieval;
  } else if (type == "quadratic") {
    p.kind = ProblemSpec::Kind::quadratic;
    p.spectrum = Vector(j.at("spectrum").get<std::vector<double>>());
    p.linear = Vector(j.at("linear").get<std::vector<double>>());
    p.noise = j.at("noise").get<double>();
  } else {
    throw ConfigError("trace: unknown problem type '" + type + "'");
  }
  p.d = j.at("d").get<std::size_t>();
  p.n = j.at("n").get<std::size_t>();
  p.regularizer = j.at("regularizer").get<std::string>();
  p.l1_weight = j.at("l1_weight").get<double>();
  p.box_lower = j.at("box_lower").get<double>();
  p.box_upper = j.at("box_upper").get<double>();
  p.ball_radius = j.at("ball_radius").get<double>();
  return p;
}

}  // namespace

SavedTrace saved_trace_from_run(const ExperimentConfig& config, const RunRecord& run) {
  SavedTrace t;
  t.problem = config.problem;
  t.data_seed = data_seed(config.master_seed, run.repetition);
  t.algorithm = run.algorithm;
  t.alpha = run.alpha;
  t.repetition = run.repetition;
  t.tstar = run.tstar;
  t.x_tstar = run.x_tstar;
  t.v_hat_tstar = run.v_hat_tstar;
  t.q = run.q;
  return t;
}

std::string trace_to_json(const SavedTrace& t) {
  json j;
  j["problem"] = problem_to_json(t.problem);
  j["data_seed"] = t.data_seed;
  j["algorithm"] = t.algorithm;
  j["alpha"] = t.alpha;
  j["repetition"] = t.repetition;
  j["tstar"] = t.tstar;
  j["x_tstar"] = t.x_tstar.entries();
  j["v_hat_tstar"] = t.v_hat_tstar.entries();
  j["q"] = t.q.entries();
  return j.dump(2) + "\n";
}

SavedTrace trace_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    SavedTrace t;
    t.problem = problem_from_json(j.at("problem"));
    t.data_seed = j.at("data_seed").get<std::uint64_t>();
    t.algorithm = j.at("algorithm").get<std::string>();
    t.alpha = j.at("alpha").get<double>();
    t.repetition = j.at("repetition").get<std::uint64_t>();
    t.tstar = j.at("tstar").get<std::uint64_t>();
    t.x_tstar = Vector(j.at("x_tstar").get<std::vector<double>>());
    t.v_hat_tstar = Vector(j.at("v_hat_tstar").get<std::vector<double>>());
    t.q = Vector(j.at("q").get<std::vector<double>>());
    if (t.x_tstar.size() != t.problem.d || t.v_hat_tstar.size() != t.problem.d) {
      throw ConfigError("trace: x_tstar and v_hat_tstar must have d entries");
    }
    return t;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trace: ") + e.what());
  }
}

void save_trace(const std::filesystem::path& path, const SavedTrace& trace) {
  write_text_file(path, trace_to_json(trace));
}

SavedTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return trace_from_json(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace wcema
