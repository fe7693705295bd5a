#include "wcema/theory_bound.hpp"

#include <cmath>
#include <string>

#include "wcema/errors.hpp"

namespace wcema {

namespace {

bool is_proximal(BoundVariant v) {
  return v == BoundVariant::proximal_fema || v == BoundVariant::proximal_zema;
}

bool is_zeroth_order(BoundVariant v) {
  return v == BoundVariant::projected_zema || v == BoundVariant::proximal_zema;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError("theory_bound: " + message);
}

struct Common {
  double tau;
  double G;
  double root;  // sqrt((1 - beta2)(1 - beta3))
  double sum_alpha = 0.0;
  double sum_alpha_sq = 0.0;
  double c3 = 0.0;
};

Common check_and_prepare(const BoundInputs& in, BoundVariant variant) {
  in.schedule.validate();
  require(in.d >= 1, "d must be positive");
  require(!in.stepsizes.empty(), "need at least one stepsize");
  require(in.rho >= 0.0, "rho must be nonnegative");
  require(in.rho_bar > in.rho, "rho_bar must exceed rho");
  require(in.D_inf >= 0.0, "D_inf must be nonnegative");
  require(in.delta_psi >= 0.0, "delta_psi must be nonnegative");
  Common c{};
  c.tau = in.schedule.tau();
  require(c.tau < 1.0, "tau = beta1/sqrt(beta2) must be < 1");
  c.root = std::sqrt((1.0 - in.schedule.beta2) * (1.0 - in.schedule.beta3));
  if (is_proximal(variant)) {
    require(in.rho_bar <= 2.0 * in.rho, "proximal variants need rho_bar <= 2 rho");
  }
  for (double a : in.stepsizes) {
    require(a > 0.0, "stepsizes must be positive");
    if (is_proximal(variant)) require(a <= 1.0 / in.rho_bar, "proximal variants need alpha_t <= 1/rho_bar");
    c.sum_alpha += a;
    c.sum_alpha_sq += a * a;
  }
  if (is_zeroth_order(variant)) {
    require(in.mu.has_value() && *in.mu > 0.0, "zeroth-order variants need mu > 0");
    require(in.lipschitz.has_value() && *in.lipschitz > 0.0, "zeroth-order variants need L_F > 0");
    c.G = static_cast<double>(in.d) * *in.lipschitz;
    c.c3 = 2.0 * *in.mu * *in.lipschitz;
  } else {
    require(in.G_inf > 0.0, "G_inf must be positive");
    c.G = in.G_inf;
  }
  if (is_proximal(variant)) {
    require(in.lambda_min_q.has_value() && *in.lambda_min_q > 0.0,
            "proximal variants need lambda_min(Q) > 0");
  }
  return c;
}

double sum_beta1_sq(const BoundInputs& in) {
  if (in.schedule.beta1_mode == DecaySchedule::Beta1Mode::geometric) {
    require(in.schedule.pi < 0.5,
            "pi >= 1/2 makes the constant beta1^2 / (1 - 2 pi) invalid");
    const double b1 = in.schedule.beta1;
    return b1 * b1 / (1.0 - 2.0 * in.schedule.pi);
  }
  const double b1 = in.schedule.beta1;
  return static_cast<double>(in.stepsizes.size()) * b1 * b1;
}

BoundBreakdown assemble(const BoundInputs& in, BoundVariant variant, const Common& c,
                        double alpha_sq_c1, double c2) {
  BoundBreakdown b;
  b.tau = c.tau;
  b.c2 = c2;
  b.c3 = c.c3;
  b.sum_alpha = c.sum_alpha;
  b.sum_alpha_sq = c.sum_alpha_sq;
  const double rb = in.rho_bar;
  double denom = (rb - in.rho) * c.sum_alpha;
  if (!is_proximal(variant)) denom *= 1.0 - in.schedule.beta1;
  b.value = (rb * in.delta_psi + rb * rb * (alpha_sq_c1 + c2)) / denom;
  if (is_zeroth_order(variant)) {
    const double factor = is_proximal(variant) ? rb : rb * rb;
    b.value += factor * c.c3 / (rb - in.rho);
  }
  return b;
}

}  // namespace

const char* to_string(BoundVariant variant) {
  switch (variant) {
    case BoundVariant::projected_fema: return "projected_fema";
    case BoundVariant::proximal_fema: return "proximal_fema";
    case BoundVariant::projected_zema: return "projected_zema";
    case BoundVariant::proximal_zema: return "proximal_zema";
  }
  return "unknown";
}

BoundVariant parse_bound_variant(std::string_view name) {
  for (auto v : {BoundVariant::projected_fema, BoundVariant::proximal_fema,
                 BoundVariant::projected_zema, BoundVariant::proximal_zema}) {
    if (name == to_string(v)) return v;
  }
  throw ConfigError("unknown bound variant '" + std::string(name) +
                    "' (expected projected_fema, proximal_fema, projected_zema or proximal_zema)");
}

BoundBreakdown theory_bound(const BoundInputs& in, BoundVariant variant) {
  const Common c = check_and_prepare(in, variant);
  const double d = static_cast<double>(in.d);
  const double b1 = in.schedule.beta1;
  double c1 = d * c.G / ((1.0 - c.tau) * (1.0 - b1) * c.root);
  if (is_proximal(variant)) {
    c1 = (2.0 / ((1.0 - c.tau) * (1.0 - b1)) + 1.0) * d * c.G / c.root +
         d * c.G * c.G / *in.lambda_min_q;
  }
  const double c2 = d * in.D_inf * in.D_inf * c.G / 2.0 * (sum_beta1_sq(in) + 1.0);
  BoundBreakdown b = assemble(in, variant, c, c.sum_alpha_sq * c1, c2);
  b.c1 = c1;
  return b;
}

BoundBreakdown theory_bound_from_trace(const BoundInputs& in, BoundVariant variant,
                                       const BoundTrace& trace) {
  const Common c = check_and_prepare(in, variant);
  const std::size_t n = in.stepsizes.size();
  require(trace.g_norm1.size() == n && trace.v_hat_sqrt_norm1.size() == n,
          "trace norms must have one entry per iteration");
  if (is_proximal(variant)) require(trace.min_metric > 0.0, "trace min_metric must be positive");
  const double d = static_cast<double>(in.d);
  const double b1 = in.schedule.beta1;
  double alpha_sq_c1 = 0.0;
  double running = 0.0;
  double beta_sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    running = c.tau * running + trace.g_norm1[t];
    double c1t = running / ((1.0 - b1) * c.root);
    if (is_proximal(variant)) {
      c1t = 2.0 * c1t + d * c.G / c.root + d * c.G * c.G / trace.min_metric;
    }
    alpha_sq_c1 += in.stepsizes[t] * in.stepsizes[t] * c1t;
    const double b1t = in.schedule.beta1_at(t);
    beta_sum += b1t * b1t * trace.v_hat_sqrt_norm1[t];
  }
  const double c2 = in.D_inf * in.D_inf / 2.0 * (beta_sum + trace.v_hat_sqrt_norm1.back());
  BoundBreakdown b = assemble(in, variant, c, alpha_sq_c1, c2);
  b.c1 = alpha_sq_c1;
  return b;
}

}  // namespace wcema
