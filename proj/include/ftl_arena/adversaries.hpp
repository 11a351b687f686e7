#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ftl_arena/rng.hpp"
#include "ftl_arena/types.hpp"

namespace ftla {

// Oblivious loss-vector generators. Deterministic given (seed, parameters);
// one instance per trial, never shared.
class LossSource {
 public:
  virtual ~LossSource() = default;

  /// Loss vector for round t (1-based; callers advance t by one each round).
  virtual Vector next(int t) = 0;

  virtual int dim() const = 0;

  /// Declared bound on |f|_2 for every vector this source can emit.
  virtual double norm_bound() const = 0;

  virtual std::string name() const = 0;
};

enum class ClipMode { NormalizeAlways, NormalizeIfOutside };

// Gaussian draws shifted by L e_1. NormalizeAlways projects every draw to the
// unit sphere (sigma defaults to 1); NormalizeIfOutside only rescales draws
// that leave the unit ball (sigma defaults to 1/4).
class StochasticSource : public LossSource {
 public:
  StochasticSource(int dim, double L, ClipMode mode, std::uint64_t seed,
                   std::optional<double> sigma = std::nullopt);

  Vector next(int t) override;
  int dim() const override { return dim_; }
  double norm_bound() const override { return 1.0 + l_; }
  std::string name() const override { return "stochastic"; }

 private:
  int dim_;
  double l_;
  ClipMode mode_;
  double sigma_;
  Rng rng_;
};

// Unit-norm losses L e_1 + sqrt(1-L^2) fhat_t where the fhat live in
// span{e_2..e_d} and each new fhat is drawn orthogonal to the running fhat sum.
class HalfAdversarialSource : public LossSource {
 public:
  HalfAdversarialSource(int dim, double L, std::uint64_t seed);

  Vector next(int t) override;
  int dim() const override { return dim_; }
  double norm_bound() const override { return 1.0; }
  std::string name() const override { return "half_adversarial"; }

 private:
  int dim_;
  double l_;
  Rng rng_;
  Vector hat_sum_;
};

// Deterministic first-coordinate data: 0.9, then alternating -1 / +1.
class WorstCaseSource : public LossSource {
 public:
  explicit WorstCaseSource(int dim) : dim_(dim) {
    if (dim_ < 1) throw std::invalid_argument("worst_case: dim must be >= 1");
  }

  Vector next(int t) override;
  int dim() const override { return dim_; }
  double norm_bound() const override { return 1.0; }
  std::string name() const override { return "worst_case"; }

 private:
  int dim_;
};

// f_t = (2 X_t - 1, -L) with X_t ~ Bernoulli(P) and P drawn once from
// Beta(K, K); the constant second coordinate keeps |Theta_t| >= L.
class BetaBernoulliSource : public LossSource {
 public:
  BetaBernoulliSource(double K, double L, std::uint64_t seed);

  /// Degenerate variant with P forced instead of sampled (for tests).
  static BetaBernoulliSource with_fixed_p(double K, double L, double p,
                                          std::uint64_t seed);

  Vector next(int t) override;
  int dim() const override { return 2; }
  double norm_bound() const override { return std::sqrt(1.0 + l_ * l_); }
  std::string name() const override { return "beta_bernoulli"; }

  double sampled_p() const { return p_; }

 private:
  double k_;
  double l_;
  Rng rng_;
  double p_;
};

// Conjugate posterior bookkeeping for the Bernoulli parameter under the
// symmetric Beta(K, K) prior.
struct PosteriorState {
  double K;
  int t = 0;
  int x_sum = 0;

  void update(bool x) {
    x_sum += x ? 1 : 0;
    t += 1;
  }
};

/// Posterior mean (K + sum X_i) / (2K + t).
double posterior_mean(const PosteriorState& ps);

/// Minimizer of <w, (2p-1, -L)> over the ellipse x^2 + y^2/h^2 <= 1:
/// (cos phi, h sin phi) with tan(phi) = Lh / (1 - 2p), sin(phi) > 0.
Vector bayes_w(double p, double h, double L);

/// Exact posterior mean-squared error E[(P - Phat_t)^2 | P].
double bayes_error_analytic(double K, int t, double P);

/// <w^{P2} - w^{P1}, f^{P1}> evaluated through bayes_w.
double p2p1_gap(double P1, double P2, double h, double L);

/// Closed-form lower bound that p2p1_gap must dominate.
double p2p1_lower(double P1, double P2, double h, double L);

struct ConcentrationCheck {
  double empirical_prob;  // frequency of |Phat_t - P| beyond the threshold
  double bound;           // 2 exp(-t u^2)
  int trials;
};

ConcentrationCheck phat_concentration_check(double K, int t, double P, double u,
                                            int trials, Rng& rng);

}  // namespace ftla
