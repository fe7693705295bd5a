#include "wcema/phase_retrieval.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "wcema/errors.hpp"
#include "wcema/random.hpp"

namespace wcema {

namespace {

void check_index(const PhaseRetrievalInstance& inst, std::size_t index) {
  if (index >= inst.n) {
    throw DomainError("phase retrieval: sample index " + std::to_string(index) +
                      " out of range [0, " + std::to_string(inst.n) + ")");
  }
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw ConfigError("instance file: cannot parse number '" + token + "'");
  }
  return v;
}

}  // namespace

double PhaseRetrievalInstance::weak_convexity() const {
  double s = 0.0;
  for (double v : measurements) s += v * v;
  return 2.0 * s / static_cast<double>(n);
}

double phase_retrieval_value(const PhaseRetrievalInstance& inst,
                             std::span<const double> x, std::size_t index) {
  check_index(inst, index);
  const double ax = dot(inst.measurement(index), x);
  return std::abs(ax * ax - inst.targets[index]);
}

double phase_retrieval_value(const PhaseRetrievalInstance& inst, const Vector& x,
                             std::size_t index) {
  require_same_size(x.size(), inst.d, "phase_retrieval_value");
  return phase_retrieval_value(inst, x.view(), index);
}

void phase_retrieval_subgradient(const PhaseRetrievalInstance& inst,
                                 std::span<const double> x, std::size_t index,
                                 std::span<double> out) {
  check_index(inst, index);
  const auto a = inst.measurement(index);
  const double ax = dot(a, x);
  const double residual = ax * ax - inst.targets[index];
  const double s = residual > 0.0 ? 1.0 : (residual < 0.0 ? -1.0 : 0.0);
  const double scale = 2.0 * s * ax;
  for (std::size_t j = 0; j < inst.d; ++j) out[j] = scale * a[j];
}

Vector phase_retrieval_subgradient(const PhaseRetrievalInstance& inst,
                                   const Vector& x, std::size_t index) {
  require_same_size(x.size(), inst.d, "phase_retrieval_subgradient");
  Vector g(inst.d);
  phase_retrieval_subgradient(inst, x.view(), index, g.view());
  require_finite(g, "phase_retrieval_subgradient");
  return g;
}

PhaseRetrievalInstance generate_phase_retrieval(std::size_t d, std::size_t n,
                                                std::uint64_t seed) {
  if (d == 0 || n == 0) {
    throw DomainError("generate_phase_retrieval: d and n must be positive");
  }
  RandomStream rng(seed);
  PhaseRetrievalInstance inst;
  inst.d = d;
  inst.n = n;
  inst.seed = seed;
  inst.measurements.resize(n * d);
  for (double& v : inst.measurements) v = rng.normal();
  Vector x_star = rng.unit_sphere(d);
  inst.targets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ax = dot(inst.measurement(i), x_star.view());
    inst.targets[i] = ax * ax;
  }
  inst.ground_truth = std::move(x_star);
  return inst;
}

void write_instance(std::ostream& os, const PhaseRetrievalInstance& inst) {
  os << inst.d << ' ' << inst.n << ' ' << inst.seed << '\n';
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (double v : inst.measurement(i)) os << shortest(v) << ' ';
    os << shortest(inst.targets[i]) << '\n';
  }
}

PhaseRetrievalInstance read_instance(std::istream& is) {
  PhaseRetrievalInstance inst;
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("instance file: missing header");
  {
    std::istringstream header(line);
    if (!(header >> inst.d >> inst.n >> inst.seed) || inst.d == 0 || inst.n == 0) {
      throw ConfigError("instance file: malformed header '" + line + "'");
    }
  }
  inst.measurements.reserve(inst.n * inst.d);
  inst.targets.reserve(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (!std::getline(is, line)) {
      throw ConfigError("instance file: expected " + std::to_string(inst.n) +
                        " rows, found " + std::to_string(i));
    }
    std::istringstream row(line);
    std::string token;
    std::size_t count = 0;
    while (row >> token) {
      const double v = parse_double(token);
      if (count < inst.d) {
        inst.measurements.push_back(v);
      } else if (count == inst.d) {
        inst.targets.push_back(v);
      }
      ++count;
    }
    if (count != inst.d + 1) {
      throw ConfigError("instance file: row " + std::to_string(i + 1) + " has " +
                        std::to_string(count) + " fields, expected " +
                        std::to_string(inst.d + 1));
    }
  }
  require_finite(inst.measurements, "instance measurements");
  require_finite(inst.targets, "instance targets");
  return inst;
}

PhaseRetrievalLoss::PhaseRetrievalLoss(
    std::shared_ptr<const PhaseRetrievalInstance> inst)
    : inst_(std::move(inst)) {
  if (!inst_) throw DomainError("PhaseRetrievalLoss: null instance");
}

double PhaseRetrievalLoss::sample_value(std::span<const double> x,
                                        SampleId xi) const {
  return phase_retrieval_value(*inst_, x, static_cast<std::size_t>(xi));
}

void PhaseRetrievalLoss::sample_subgradient(std::span<const double> x, SampleId xi,
                                            std::span<double> out) const {
  phase_retrieval_subgradient(*inst_, x, static_cast<std::size_t>(xi), out);
}

double PhaseRetrievalLoss::value(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < inst_->n; ++i) {
    const double ax = dot(inst_->measurement(i), x);
    s += std::abs(ax * ax - inst_->targets[i]);
  }
  return s / static_cast<double>(inst_->n);
}

void PhaseRetrievalLoss::full_subgradient(std::span<const double> x,
                                          std::span<double> out) const {
  value_and_subgradient(x, out);
}

double PhaseRetrievalLoss::value_and_subgradient(std::span<const double> x,
                                                 std::span<double> out) const {
  const std::size_t d = inst_->d;
  std::fill(out.begin(), out.end(), 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < inst_->n; ++i) {
    const auto a = inst_->measurement(i);
    const double ax = dot(a, x);
    const double residual = ax * ax - inst_->targets[i];
    s += std::abs(residual);
    const double sign = residual > 0.0 ? 1.0 : (residual < 0.0 ? -1.0 : 0.0);
    const double scale = 2.0 * sign * ax;
    for (std::size_t j = 0; j < d; ++j) out[j] += scale * a[j];
  }
  const double inv_n = 1.0 / static_cast<double>(inst_->n);
  for (double& v : out) v *= inv_n;
  return s * inv_n;
}

double estimate_phase_retrieval_lipschitz(const PhaseRetrievalInstance& inst,
                                          double radius, std::size_t probes,
                                          std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> x(inst.d);
  std::vector<double> g(inst.d);
  double best = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    for (double& v : x) v = radius * (2.0 * rng.uniform() - 1.0);
    for (std::size_t i = 0; i < inst.n; ++i) {
      phase_retrieval_subgradient(inst, x, i, g);
      double s = 0.0;
      for (double v : g) s += v * v;
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

CompositeProblem make_phase_retrieval_problem(
    std::shared_ptr<const PhaseRetrievalInstance> inst, Regularizer h) {
  CompositeProblem p;
  p.weak_convexity = inst->weak_convexity();
  p.loss = std::make_shared<PhaseRetrievalLoss>(std::move(inst));
  p.regularizer = std::move(h);
  return p;
}

}  // namespace wcema
