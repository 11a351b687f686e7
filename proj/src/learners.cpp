#include "ftl_arena/learners.hpp"

#include <cmath>
#include <iostream>

namespace ftla {

namespace {

Vector default_w1(const ConstraintSet& set) {
  Vector e1 = Vector::Zero(set.dim());
  e1[0] = 1.0;
  return support(set, e1).maximizer;
}

void observe_into(LearnerState& state, const Vector& f, bool& warned,
                  const std::string& who) {
  require_dim(f, state.set->dim(), "observe");
  require_finite(f, "observe");
  if (state.loss_norm_bound &&
      f.norm() > *state.loss_norm_bound * (1.0 + 1e-9) && !warned) {
    std::cerr << "warning: " << who << " observed |f| = " << f.norm()
              << " above the declared bound " << *state.loss_norm_bound << "\n";
    warned = true;
  }
  state.cumulative_loss += f;
  state.t += 1;
}

}  // namespace

FtlLearner::FtlLearner(SetPtr set, std::optional<Vector> w1,
                       std::optional<double> loss_norm_bound) {
  state_.set = std::move(set);
  state_.cumulative_loss = Vector::Zero(state_.set->dim());
  state_.loss_norm_bound = loss_norm_bound;
  if (w1) {
    require_dim(*w1, state_.set->dim(), "ftl w1");
    if (!contains(*state_.set, *w1)) {
      throw std::invalid_argument("ftl: w1 must lie in the constraint set");
    }
    w1_ = std::move(*w1);
  } else {
    w1_ = default_w1(*state_.set);
  }
  state_.w_current = w1_;
}

Vector FtlLearner::predict() {
  if (state_.t == 1) {
    state_.w_current = w1_;
  } else {
    state_.w_current = support(*state_.set, -state_.cumulative_loss).maximizer;
  }
  return state_.w_current;
}

void FtlLearner::observe(const Vector& f) {
  observe_into(state_, f, warned_, "ftl");
}

FtrlLearner::FtrlLearner(SetPtr set, std::optional<double> loss_norm_bound) {
  if (set->as_polytope() != nullptr) {
    throw UnsupportedProjection("ftrl: polytope sets have no projection");
  }
  state_.set = std::move(set);
  state_.cumulative_loss = Vector::Zero(state_.set->dim());
  state_.loss_norm_bound = loss_norm_bound;
  state_.w_current = Vector::Zero(state_.set->dim());
}

Vector FtrlLearner::predict() {
  if (state_.t == 1) {
    // the regularizer minimizer; the origin is interior for balls/ellipsoids
    state_.w_current = euclidean_project(*state_.set, Vector::Zero(state_.set->dim()));
  } else {
    const double eta = 1.0 / std::sqrt(static_cast<double>(state_.t - 1));
    state_.w_current =
        euclidean_project(*state_.set, -eta * state_.cumulative_loss);
  }
  return state_.w_current;
}

void FtrlLearner::observe(const Vector& f) {
  observe_into(state_, f, warned_, "ftrl");
}

FtslLearner::FtslLearner(SetPtr set, int horizon,
                         std::optional<double> loss_norm_bound) {
  if (set->as_ball() == nullptr) {
    throw std::invalid_argument("ftsl is defined on ball constraint sets");
  }
  if (horizon < 1) throw std::invalid_argument("ftsl: horizon must be >= 1");
  state_.set = std::move(set);
  state_.cumulative_loss = Vector::Zero(state_.set->dim());
  state_.horizon = horizon;
  state_.loss_norm_bound = loss_norm_bound;
  state_.w_current = Vector::Zero(state_.set->dim());
}

Vector FtslLearner::predict() {
  const int n = *state_.horizon;
  const int t = state_.t;
  if (t > n) throw std::runtime_error("ftsl: round past the declared horizon");
  const double f_norm = state_.cumulative_loss.norm();
  if (t == 1 || f_norm == 0.0) {
    state_.w_current = Vector::Zero(state_.set->dim());
    return state_.w_current;
  }
  const double sigma = (t == n)
                           ? f_norm / std::sqrt(f_norm * f_norm + n)
                           : shrink_factor(f_norm, t);
  const double radius = state_.set->as_ball()->radius;
  state_.w_current = -(radius * sigma / f_norm) * state_.cumulative_loss;
  return state_.w_current;
}

void FtslLearner::observe(const Vector& f) {
  observe_into(state_, f, warned_, "ftsl");
}

AbProdLearner::AbProdLearner(SetPtr set, int horizon,
                             std::unique_ptr<Learner> a,
                             std::unique_ptr<Learner> b, Params params)
    : set_(std::move(set)), a_(std::move(a)), b_(std::move(b)) {
  if (horizon < 1) throw std::invalid_argument("abprod: horizon must be >= 1");
  beta_ = params.beta;
  if (!(beta_ > 0.0 && beta_ < 1.0)) {
    throw std::invalid_argument("abprod: beta must be in (0,1)");
  }
  eta_ = params.eta.value_or(
      std::min(0.5, std::sqrt(std::log(static_cast<double>(horizon)) / horizon)));
  if (!(eta_ > 0.0 && eta_ <= 0.5)) {
    throw std::invalid_argument("abprod: eta must be in (0, 1/2]");
  }
  if (params.scale) {
    scale_ = *params.scale;
  } else {
    const double m = params.m_bound.value_or(1.0);
    scale_ = m * diameter(*set_, Norm::L2);
  }
  if (!(scale_ > 0.0)) throw std::invalid_argument("abprod: scale must be > 0");
  weight_a_ = beta_;
}

std::unique_ptr<AbProdLearner> AbProdLearner::ftl_ftrl(SetPtr set, int horizon,
                                                       Params params) {
  auto a = std::make_unique<FtlLearner>(set);
  auto b = std::make_unique<FtrlLearner>(set);
  return std::make_unique<AbProdLearner>(std::move(set), horizon, std::move(a),
                                         std::move(b), params);
}

void AbProdLearner::refresh_subpredictions() {
  if (cached_round_ != t_) {
    wa_ = a_->predict();
    wb_ = b_->predict();
    cached_round_ = t_;
  }
}

Vector AbProdLearner::predict() {
  refresh_subpredictions();
  const double alpha = mixing_alpha();
  return alpha * wa_ + (1.0 - alpha) * wb_;
}

void AbProdLearner::observe(const Vector& f) {
  refresh_subpredictions();
  double delta = (f.dot(wb_) - f.dot(wa_)) / scale_;
  if (std::abs(delta) > 1.0 + 1e-9) {
    throw std::runtime_error(
        "abprod: |delta| = " + std::to_string(std::abs(delta)) +
        " exceeds 1; the loss-difference scale C = " + std::to_string(scale_) +
        " is too small for this data");
  }
  delta = std::clamp(delta, -1.0, 1.0);
  weight_a_ *= 1.0 + eta_ * delta;
  a_->observe(f);
  b_->observe(f);
  t_ += 1;
}

}  // namespace ftla
