#include "wcema/accumulator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "wcema/errors.hpp"

namespace wcema {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v < 1.0)) {
    throw DomainError(std::string("decay schedule: ") + what + " = " + std::to_string(v) +
                      " is outside [0, 1)");
  }
}

// Convex combination b*a + (1-b)*c kept inside [min(a,c), max(a,c)], which the
// exact value always satisfies but the rounded one may miss by an ulp.
double blend(double beta, double a, double c) {
  const double r = beta * a + (1.0 - beta) * c;
  return std::clamp(r, std::min(a, c), std::max(a, c));
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

void DecaySchedule::validate() const {
  check_unit_interval(beta1, "beta1");
  check_unit_interval(beta2, "beta2");
  check_unit_interval(beta3, "beta3");
  if (beta1_mode == Beta1Mode::geometric && !(pi > 0.0 && pi < 1.0)) {
    throw DomainError("decay schedule: pi = " + std::to_string(pi) + " is outside (0, 1)");
  }
}

double DecaySchedule::beta1_at(std::uint64_t t) const {
  if (beta1_mode == Beta1Mode::constant) return beta1;
  if (t == 0) return beta1;
  return beta1 * std::pow(pi, static_cast<double>(t - 1));
}

double DecaySchedule::tau() const {
  if (beta1 == 0.0) return 0.0;
  if (beta2 == 0.0) return std::numeric_limits<double>::infinity();
  return beta1 / std::sqrt(beta2);
}

bool DecaySchedule::satisfies_tau_condition() const { return tau() < 1.0; }

const char* to_string(AccumulatorMode mode) {
  switch (mode) {
    case AccumulatorMode::ema: return "ema";
    case AccumulatorMode::identity: return "identity";
    case AccumulatorMode::plain: return "plain";
  }
  return "unknown";
}

EmaState EmaState::initial(Vector q, AccumulatorMode mode) {
  for (double v : q) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("EmaState: q must be finite and strictly positive");
    }
  }
  EmaState s;
  s.m = Vector(q.size());
  s.v = Vector(q.size());
  s.v_hat = q;
  s.q = std::move(q);
  s.mode = mode;
  return s;
}

void ema_update_in_place(EmaState& state, std::span<const double> g,
                         const DecaySchedule& schedule) {
  const std::size_t d = state.m.size();
  require_same_size(g.size(), d, "ema_update");
  require_finite(g, "ema_update gradient");
  if (state.mode == AccumulatorMode::identity) {
    for (std::size_t i = 0; i < d; ++i) state.m[i] = g[i];
    ++state.t;
    return;
  }
  const double b1 = schedule.beta1_at(state.t);
  const double b2 = schedule.beta2;
  const double b3 = schedule.beta3;
  for (std::size_t i = 0; i < d; ++i) {
    const double gi = g[i];
    state.m[i] = blend(b1, state.m[i], gi);
    const double vi = blend(b2, state.v[i], gi * gi);
    state.v[i] = vi;
    if (state.mode == AccumulatorMode::plain) {
      state.v_hat[i] = vi + state.q[i];
      continue;
    }
    const double prev = state.v_hat[i];
    const double top = std::max(prev, vi);
    // b3 = 0 must reproduce max(prev, vi) exactly.
    state.v_hat[i] = b3 == 0.0 ? top : std::min(prev + (1.0 - b3) * (top - prev), top);
  }
  ++state.t;
}

EmaState ema_update(EmaState state, const Vector& g, const DecaySchedule& schedule) {
  ema_update_in_place(state, g.view(), schedule);
  return state;
}

Preset preset(std::string_view name) {
  const std::string key = upper(name);
  Preset p;
  p.name = key;
  auto set = [&](double b1, double b2, double b3) {
    p.schedule.beta1 = b1;
    p.schedule.beta2 = b2;
    p.schedule.beta3 = b3;
  };
  if (key == "FEMA1") {
    set(0.9, 0.0, 0.0);
  } else if (key == "FEMA2" || key == "AMSGRAD") {
    set(0.9, 0.999, 0.0);
  } else if (key == "FEMA3") {
    set(0.9, 0.999, 0.9);
  } else if (key == "RMSPROP") {
    set(0.0, 0.999, 0.0);
  } else if (key == "ADAM") {
    set(0.9, 0.999, 0.0);
    p.mode = AccumulatorMode::plain;
  } else if (key == "SGD") {
    set(0.0, 0.0, 0.0);
    p.mode = AccumulatorMode::identity;
  } else {
    throw ConfigError("unknown accumulator preset '" + std::string(name) +
                      "' (expected FEMA1, FEMA2, FEMA3, AMSGrad, RMSProp, Adam or SGD)");
  }
  return p;
}

std::string checkpoint_to_json(const EmaState& state) {
  nlohmann::json j;
  j["t"] = state.t;
  j["mode"] = to_string(state.mode);
  j["m"] = state.m.entries();
  j["v"] = state.v.entries();
  j["v_hat"] = state.v_hat.entries();
  j["q"] = state.q.entries();
  return j.dump();
}

EmaState checkpoint_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    EmaState s;
    s.t = j.at("t").get<std::uint64_t>();
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "ema") {
      s.mode = AccumulatorMode::ema;
    } else if (mode == "identity") {
      s.mode = AccumulatorMode::identity;
    } else if (mode == "plain") {
      s.mode = AccumulatorMode::plain;
    } else {
      throw ConfigError("checkpoint: unknown mode '" + mode + "'");
    }
    s.m = Vector(j.at("m").get<std::vector<double>>());
    s.v = Vector(j.at("v").get<std::vector<double>>());
    s.v_hat = Vector(j.at("v_hat").get<std::vector<double>>());
    s.q = Vector(j.at("q").get<std::vector<double>>());
    const std::size_t d = s.m.size();
    if (s.v.size() != d || s.v_hat.size() != d || s.q.size() != d) {
      throw ConfigError("checkpoint: vector lengths disagree");
    }
    for (double x : s.v_hat) {
      if (!(x > 0.0)) throw ConfigError("checkpoint: v_hat must be positive");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("checkpoint: ") + e.what());
  }
}

}  // namespace wcema
