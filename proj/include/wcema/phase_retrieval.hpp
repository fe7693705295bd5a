#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wcema/problem.hpp"
#include "wcema/vector.hpp"

namespace wcema {

/// Data of the robust phase retrieval objective f(x) = (1/n) sum_i |<a_i,x>^2 - b_i|.
struct PhaseRetrievalInstance {
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  /// a_1..a_n stored row-major, n * d entries.
  std::vector<double> measurements;
  std::vector<double> targets;
  /// Known only for generated instances.
  std::optional<Vector> ground_truth;

  std::span<const double> measurement(std::size_t i) const {
    return {measurements.data() + i * d, d};
  }
  /// (2/n) sum_i ||a_i||^2: each f_i is 2||a_i||^2-weakly convex.
  double weak_convexity() const;
};

/// |<a_index, x>^2 - b_index|.
double phase_retrieval_value(const PhaseRetrievalInstance& inst,
                             std::span<const double> x, std::size_t index);
double phase_retrieval_value(const PhaseRetrievalInstance& inst, const Vector& x,
                             std::size_t index);

/// 2 s <a,x> a with s = sign(<a,x>^2 - b), s = 0 at a zero residual.
void phase_retrieval_subgradient(const PhaseRetrievalInstance& inst,
                                 std::span<const double> x, std::size_t index,
                                 std::span<double> out);
Vector phase_retrieval_subgradient(const PhaseRetrievalInstance& inst,
                                   const Vector& x, std::size_t index);

/// Gaussian a_i, x* uniform on the unit sphere, b_i = <a_i, x*>^2.
/// All draws come from the data stream seeded with `seed`.
PhaseRetrievalInstance generate_phase_retrieval(std::size_t d, std::size_t n,
                                                std::uint64_t seed);

/// Flat text: a header line "d n seed", then n rows "a_i1 ... a_id b_i".
/// Numbers use shortest round-trip formatting so reading back is exact.
void write_instance(std::ostream& os, const PhaseRetrievalInstance& inst);
PhaseRetrievalInstance read_instance(std::istream& is);

class PhaseRetrievalLoss final : public StochasticLoss {
 public:
  explicit PhaseRetrievalLoss(std::shared_ptr<const PhaseRetrievalInstance> inst);

  const PhaseRetrievalInstance& instance() const { return *inst_; }

  std::size_t dimension() const override { return inst_->d; }
  std::optional<std::uint64_t> sample_space_size() const override { return inst_->n; }
  std::string name() const override { return "phase_retrieval"; }

  double sample_value(std::span<const double> x, SampleId xi) const override;
  void sample_subgradient(std::span<const double> x, SampleId xi,
                          std::span<double> out) const override;
  double value(std::span<const double> x) const override;
  void full_subgradient(std::span<const double> x,
                        std::span<double> out) const override;
  double value_and_subgradient(std::span<const double> x,
                               std::span<double> out) const override;

  using StochasticLoss::full_subgradient;
  using StochasticLoss::sample_subgradient;
  using StochasticLoss::sample_value;
  using StochasticLoss::value;

 private:
  std::shared_ptr<const PhaseRetrievalInstance> inst_;
};

/// Sampled supremum of ||G(x, xi)||_2 over x in the box [-radius, radius]^d and
/// all samples; an estimate of L_F on that box, not a certified bound.
double estimate_phase_retrieval_lipschitz(const PhaseRetrievalInstance& inst,
                                          double radius, std::size_t probes,
                                          std::uint64_t seed);

/// Composite problem with h = `h`, rho from the instance, no metric.
CompositeProblem make_phase_retrieval_problem(
    std::shared_ptr<const PhaseRetrievalInstance> inst, Regularizer h = Regularizer::zero());

}  // namespace wcema
