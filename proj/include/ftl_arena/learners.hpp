#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ftl_arena/geometry.hpp"

namespace ftla {

// Shared bookkeeping for the follow-the-X family. `cumulative_loss` is the
// plain running sum of observed loss vectors; `t` is the 1-based index of the
// round about to be played.
struct LearnerState {
  int t = 1;
  Vector cumulative_loss;
  std::optional<int> horizon;
  SetPtr set;
  Vector w_current;
  std::optional<double> loss_norm_bound;  // exceeding it warns, never fails
};

class Learner {
 public:
  virtual ~Learner() = default;

  /// Prediction for the current round; repeatable until observe() is called.
  virtual Vector predict() = 0;

  /// Feed the revealed loss vector and advance to the next round.
  virtual void observe(const Vector& f) = 0;

  virtual std::string name() const = 0;
  virtual int round() const = 0;
};

// Plays the minimizer of the cumulative past loss; round one plays a
// configurable boundary point (default: the point maximizing <w, e_1>).
class FtlLearner : public Learner {
 public:
  explicit FtlLearner(SetPtr set, std::optional<Vector> w1 = std::nullopt,
                      std::optional<double> loss_norm_bound = std::nullopt);

  Vector predict() override;
  void observe(const Vector& f) override;
  std::string name() const override { return "ftl"; }
  int round() const override { return state_.t; }
  const LearnerState& state() const { return state_; }

 private:
  LearnerState state_;
  Vector w1_;
  bool warned_ = false;
};

// Euclidean-regularized leader with step 1/sqrt(t-1), realized as the
// projection of -F_{t-1}/sqrt(t-1); needs a projectable set (ball/ellipsoid).
class FtrlLearner : public Learner {
 public:
  explicit FtrlLearner(SetPtr set,
                       std::optional<double> loss_norm_bound = std::nullopt);

  Vector predict() override;
  void observe(const Vector& f) override;
  std::string name() const override { return "ftrl"; }
  int round() const override { return state_.t; }
  const LearnerState& state() const { return state_; }

 private:
  LearnerState state_;
  bool warned_ = false;
};

// Follow the shrunken leader: the ball-constrained leader scaled toward the
// origin by |F| / sqrt(|F|^2 + t + 2) (final round: ... + n). Defined on
// balls; radius-r balls scale the unit-ball prediction by r.
class FtslLearner : public Learner {
 public:
  FtslLearner(SetPtr set, int horizon,
              std::optional<double> loss_norm_bound = std::nullopt);

  Vector predict() override;
  void observe(const Vector& f) override;
  std::string name() const override { return "ftsl"; }
  int round() const override { return state_.t; }
  const LearnerState& state() const { return state_; }

  /// Shrink factor for the non-final rounds (exposed for the step checks).
  static double shrink_factor(double f_norm, int t) {
    return f_norm / std::sqrt(f_norm * f_norm + t + 2.0);
  }

 private:
  LearnerState state_;
  bool warned_ = false;
};

struct AbProdParams {
  double beta = 0.5;
  std::optional<double> eta;      // default min(1/2, sqrt(ln n / n))
  std::optional<double> scale;    // default m_bound * diameter(set, l2)
  std::optional<double> m_bound;  // loss-norm bound backing the default scale
};

// Multiplicative-weight mix of two sub-learners: the weight on A is updated
// by (1 + eta * delta_t) where delta_t is the normalized loss difference
// <f, w_B - w_A> / C, so the mix inherits B's guarantee up to C ln(1/(1-beta)) / eta.
class AbProdLearner : public Learner {
 public:
  using Params = AbProdParams;

  AbProdLearner(SetPtr set, int horizon, std::unique_ptr<Learner> a,
                std::unique_ptr<Learner> b, Params params = {});

  /// FTL/FTRL pair with defaults.
  static std::unique_ptr<AbProdLearner> ftl_ftrl(SetPtr set, int horizon,
                                                 Params params = {});

  Vector predict() override;
  void observe(const Vector& f) override;
  std::string name() const override { return "abprod"; }
  int round() const override { return t_; }

  double weight_a() const { return weight_a_; }
  double mixing_alpha() const { return weight_a_ / (weight_a_ + 1.0 - beta_); }
  double eta() const { return eta_; }
  double scale() const { return scale_; }

 private:
  void refresh_subpredictions();

  SetPtr set_;
  std::unique_ptr<Learner> a_;
  std::unique_ptr<Learner> b_;
  double beta_;
  double eta_;
  double scale_;
  double weight_a_;
  int t_ = 1;
  int cached_round_ = 0;
  Vector wa_, wb_;
};

}  // namespace ftla
