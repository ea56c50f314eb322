#include "fishvia/bioeconomic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace fishvia {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(fmt::format("{} must be positive and finite (got {})", field, value));
  }
}

void require_stock(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(fmt::format("stock must be positive (got {})", x));
  }
}

void require_recommendation(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::domain_error(fmt::format("recommendation must be non-negative (got {})", r));
  }
}

}  // namespace

void EconParams::validate() const {
  require_positive(alpha1, "alpha1");
  require_positive(alpha2, "alpha2");
  require_positive(beta1, "beta1");
  require_positive(beta2, "beta2");
  require_positive(price, "price");
  if (!(kappa1 >= 0.0) || !std::isfinite(kappa1)) {
    throw std::invalid_argument(fmt::format("kappa1 must be non-negative (got {})", kappa1));
  }
  if (!(kappa2 >= 0.0) || !std::isfinite(kappa2)) {
    throw std::invalid_argument(fmt::format("kappa2 must be non-negative (got {})", kappa2));
  }
}

DerivedCoeffs derive(const EconParams& p) {
  return DerivedCoeffs{
      0.5 * (p.beta1 + p.beta2),
      p.beta1 * p.kappa2 + p.beta2 * p.kappa1,
      0.5 * (p.alpha1 * p.beta2 + p.alpha2 * p.beta1),
      p.beta1 * p.beta2,
  };
}

// ---------------------------------------------------------------------------
// Recruitment

Recruitment Recruitment::logistic(double growth, double capacity) {
  require_positive(growth, "growth");
  require_positive(capacity, "capacity");
  Recruitment rec;
  rec.fn_ = [growth, capacity](double x) { return growth * x * (1.0 - x / capacity); };
  rec.name_ = "logistic";
  rec.growth_ = growth;
  rec.capacity_ = capacity;
  rec.x_msy_ = 0.5 * capacity;
  rec.max_rate_ = 0.25 * growth * capacity;
  rec.logistic_ = true;
  rec.check_shape();
  return rec;
}

Recruitment Recruitment::schaefer_shaped(std::string name, std::function<double(double)> fn,
                                         double x_msy, double capacity) {
  require_positive(x_msy, "x_msy");
  require_positive(capacity, "capacity");
  if (!(x_msy < capacity)) {
    throw std::invalid_argument("x_msy must lie below capacity");
  }
  if (!fn) {
    throw std::invalid_argument("recruitment function is empty");
  }
  Recruitment rec;
  rec.fn_ = std::move(fn);
  rec.name_ = std::move(name);
  rec.capacity_ = capacity;
  rec.x_msy_ = x_msy;
  rec.max_rate_ = rec.fn_(x_msy);
  rec.check_shape();
  return rec;
}

void Recruitment::check_shape() const {
  constexpr int kPoints = 256;
  if (fn_(0.0) != 0.0) {
    throw std::invalid_argument(fmt::format("recruitment '{}' must vanish at zero stock", name_));
  }
  double previous = 0.0;
  for (int i = 1; i <= kPoints; ++i) {
    const double x = x_msy_ * i / kPoints;
    const double value = fn_(x);
    if (!(value > 0.0) || !(value > previous)) {
      throw std::invalid_argument(
          fmt::format("recruitment '{}' must be positive and increasing below x_msy (fails at x={})", name_, x));
    }
    previous = value;
  }
  for (int i = 1; i <= kPoints; ++i) {
    const double x = x_msy_ + (capacity_ - x_msy_) * i / kPoints;
    const double value = fn_(x);
    if (!(value < previous)) {
      throw std::invalid_argument(
          fmt::format("recruitment '{}' must decrease above x_msy (fails at x={})", name_, x));
    }
    previous = value;
  }
}

double Recruitment::operator()(double x) const {
  if (!(x >= 0.0)) {
    throw std::domain_error(fmt::format("recruitment undefined for negative stock (got {})", x));
  }
  return fn_(x);
}

double recruitment(const Recruitment& rec, double x) { return rec(x); }

// ---------------------------------------------------------------------------
// Negotiation

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Binding: return "Binding";
    case Regime::NonBinding: return "NonBinding";
    case Regime::ShutdownUnprofitable: return "ShutdownUnprofitable";
    case Regime::ShutdownRestricted: return "ShutdownRestricted";
  }
  return "Unknown";
}

double r_hat(const EconParams& params, double x) {
  require_stock(x);
  const auto d = derive(params);
  return (d.u * params.price * x - d.v) / d.bb;
}

double free_quota(const EconParams& params, Group g, double x) {
  require_stock(x);
  return (params.price * x - params.alpha(g)) / (2.0 * params.beta(g));
}

double nonbinding_harvest(const EconParams& params, double x) {
  return std::max(0.0, free_quota(params, Group::First, x)) +
         std::max(0.0, free_quota(params, Group::Second, x));
}

double harvest_binding(const EconParams& params, double x, double r) {
  require_stock(x);
  require_recommendation(r);
  const auto d = derive(params);
  if (!(d.w > 0.0)) {
    throw std::domain_error("binding harvest needs a positive deviation weight (kappa1 or kappa2)");
  }
  return (d.u * params.price * x + d.w * x * r - d.v) / (d.bb + d.w * x);
}

namespace {

// Quota of group g when the other group sits at zero and the deviation cost is
// active: p - (alpha + 2 beta q)/x - 2 kappa (q - r) = 0.
double solo_binding_quota(const EconParams& p, Group g, double x, double r) {
  return (p.price * x - p.alpha(g) + 2.0 * p.kappa(g) * x * r) /
         (2.0 * p.beta(g) + 2.0 * p.kappa(g) * x);
}

// Marginal profit of group g at q_own = 0 with the other group's total fixed.
double marginal_at_zero(const EconParams& p, Group g, double x, double r, double total) {
  return p.price - p.alpha(g) / x - 2.0 * p.kappa(g) * std::max(total - r, 0.0);
}

}  // namespace

NegotiationOutcome total_harvest(const EconParams& params, double x, double r) {
  require_stock(x);
  require_recommendation(r);

  const double free1 = std::max(0.0, free_quota(params, Group::First, x));
  const double free2 = std::max(0.0, free_quota(params, Group::Second, x));
  const double free_total = free1 + free2;

  if (free_total <= 0.0) {
    return {0.0, 0.0, 0.0, Regime::ShutdownUnprofitable};
  }
  if (free_total <= r + kHarvestTolerance) {
    return {free1, free2, free_total, Regime::NonBinding};
  }

  // Deviation costs are active. Interior solution of both first-order
  // conditions first.
  const auto d = derive(params);
  const double hb = (d.u * params.price * x + d.w * x * r - d.v) / (d.bb + d.w * x);
  const double excess = std::max(hb - r, 0.0);
  const double q1 = (x * (params.price - 2.0 * params.kappa1 * excess) - params.alpha1) / (2.0 * params.beta1);
  const double q2 = (x * (params.price - 2.0 * params.kappa2 * excess) - params.alpha2) / (2.0 * params.beta2);
  if (q1 >= 0.0 && q2 >= 0.0) {
    if (hb <= kHarvestTolerance) {
      // Recommendation so tight that nobody fishes. Unreachable for r >= 0
      // under this cost specification; kept as an explicit tag.
      return {0.0, 0.0, 0.0, Regime::ShutdownRestricted};
    }
    return {q1, q2, hb, Regime::Binding};
  }

  // One group is priced out. Try each group alone and keep the candidate that
  // satisfies the complementarity conditions (least violation wins so that
  // rounding at a corner cannot leave us without an answer).
  struct Candidate {
    NegotiationOutcome outcome;
    double violation;
  };
  auto solo = [&](Group active) {
    const Group idle = active == Group::First ? Group::Second : Group::First;
    const double q = std::max(0.0, solo_binding_quota(params, active, x, r));
    const double idle_gain = marginal_at_zero(params, idle, x, r, q);
    const double violation = std::max({0.0, idle_gain, r - q});
    NegotiationOutcome out{0.0, 0.0, q, Regime::Binding};
    (active == Group::First ? out.q1 : out.q2) = q;
    return Candidate{out, violation};
  };
  const Candidate first = solo(Group::First);
  const Candidate second = solo(Group::Second);
  NegotiationOutcome best = first.violation <= second.violation ? first.outcome : second.outcome;
  if (best.h <= kHarvestTolerance) {
    return {0.0, 0.0, 0.0, Regime::ShutdownRestricted};
  }
  return best;
}

std::pair<double, double> individual_quotas(const EconParams& params, double x, double r) {
  const auto out = total_harvest(params, x, r);
  return {out.q1, out.q2};
}

double profit(const EconParams& params, Group g, double q_own, double q_other, double x, double r) {
  require_stock(x);
  if (!(q_own >= 0.0) || !(q_other >= 0.0)) {
    throw std::domain_error("quotas must be non-negative");
  }
  require_recommendation(r);
  return basic_profit<double>(params, g, q_own, q_other, x, r);
}

}  // namespace fishvia
