#pragma once

// Two-group quota negotiation on a Schaefer-type stock.
//
// Each fishing group i chooses a quota q_i to maximize
//
//   pi_i = p q_i - (alpha_i q_i + beta_i q_i^2) / x - kappa_i max(q_1 + q_2 - r, 0)^2
//
// given the other group's quota, the stock x and the scientific
// recommendation r. The last term is the deviation cost paid for pushing the
// total above the recommendation.

#include <functional>
#include <string>
#include <string_view>
#include <utility>

namespace fishvia {

/// Absolute tolerance used for every regime-boundary comparison on harvests.
inline constexpr double kHarvestTolerance = 1e-12;

enum class Group : int { First = 0, Second = 1 };

struct EconParams {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double price = 2.0;

  double alpha(Group g) const { return g == Group::First ? alpha1 : alpha2; }
  double beta(Group g) const { return g == Group::First ? beta1 : beta2; }
  double kappa(Group g) const { return g == Group::First ? kappa1 : kappa2; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// True when both deviation weights vanish (unmanaged fishery).
  bool unmanaged() const { return kappa1 == 0.0 && kappa2 == 0.0; }
};

/// Aggregates that appear throughout the closed-form equilibrium.
struct DerivedCoeffs {
  double u;   // (beta_1 + beta_2) / 2
  double w;   // beta_1 kappa_2 + beta_2 kappa_1
  double v;   // (alpha_1 beta_2 + alpha_2 beta_1) / 2
  double bb;  // beta_1 beta_2
};

DerivedCoeffs derive(const EconParams& params);

/// Stock growth function with a single interior maximum.
///
/// The logistic form g x (1 - x/K) is the default. Any other Schaefer-shaped
/// function can be supplied together with its maximizer and capacity; the
/// shape (R(0) = 0, positive and increasing up to x_MSY, decreasing after) is
/// checked on a 256-point grid when the object is built.
class Recruitment {
 public:
  static Recruitment logistic(double growth, double capacity);
  static Recruitment schaefer_shaped(std::string name,
                                     std::function<double(double)> fn,
                                     double x_msy, double capacity);

  /// R(x). Throws std::domain_error for negative x.
  double operator()(double x) const;

  double x_msy() const { return x_msy_; }
  double max_rate() const { return max_rate_; }
  double capacity() const { return capacity_; }
  /// Intrinsic growth rate; only meaningful for the logistic form.
  double growth() const { return growth_; }
  bool is_logistic() const { return logistic_; }
  const std::string& name() const { return name_; }

 private:
  Recruitment() = default;
  void check_shape() const;

  std::function<double(double)> fn_;
  std::string name_;
  double growth_ = 0.0;
  double capacity_ = 0.0;
  double x_msy_ = 0.0;
  double max_rate_ = 0.0;
  bool logistic_ = false;
};

enum class Regime { Binding, NonBinding, ShutdownUnprofitable, ShutdownRestricted };

std::string_view to_string(Regime regime);

struct NegotiationOutcome {
  double q1 = 0.0;
  double q2 = 0.0;
  double h = 0.0;
  Regime regime = Regime::ShutdownUnprofitable;
};

double recruitment(const Recruitment& rec, double x);

/// Total harvest chosen without deviation costs, (u p x - v) / (beta_1 beta_2).
/// Negative values mean the fishery as a whole is unprofitable at x.
double r_hat(const EconParams& params, double x);

/// Group i's quota without deviation costs, (p x - alpha_i) / (2 beta_i).
/// May be negative.
double free_quota(const EconParams& params, Group g, double x);

/// Harvest of the deviation-free game with quotas held non-negative:
/// max(0, free_quota_1) + max(0, free_quota_2). Equals r_hat whenever both
/// groups are individually profitable; it upper-bounds every negotiated total.
double nonbinding_harvest(const EconParams& params, double x);

/// Total binding harvest (u p x + w x r - v) / (beta_1 beta_2 + w x).
/// Requires w > 0.
double harvest_binding(const EconParams& params, double x, double r);

/// Negotiated equilibrium with non-negative quotas.
///
/// Dispatch: quotas that stay below r on their own give NonBinding;
/// otherwise the deviation cost is active and the first-order system is
/// solved, dropping a group whose quota would turn negative (that group sits
/// at zero and the other group's condition is re-solved alone). When both
/// groups are profitable this reproduces the four-case function: h_b below
/// r_hat, r_hat above it and zero when fishing does not pay.
NegotiationOutcome total_harvest(const EconParams& params, double x, double r);

/// Individual quotas of the resolved equilibrium.
std::pair<double, double> individual_quotas(const EconParams& params, double x,
                                            double r);

template <typename T>
T basic_profit(const EconParams& params, Group g, T q_own, T q_other, T x, T r) {
  const T alpha = static_cast<T>(params.alpha(g));
  const T beta = static_cast<T>(params.beta(g));
  const T kappa = static_cast<T>(params.kappa(g));
  const T price = static_cast<T>(params.price);
  const T excess = q_own + q_other - r;
  const T deviation = excess < T(0) ? T(0) : kappa * excess * excess;
  return price * q_own - (alpha * q_own + beta * q_own * q_own) / x - deviation;
}

/// Profit of group g with the deviation cost applied to the total overshoot.
double profit(const EconParams& params, Group g, double q_own, double q_other,
              double x, double r);

}  // namespace fishvia
