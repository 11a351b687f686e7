#include "ftl_arena/adversaries.hpp"

#include <cmath>

namespace ftla {

StochasticSource::StochasticSource(int dim, double L, ClipMode mode,
                                   std::uint64_t seed,
                                   std::optional<double> sigma)
    : dim_(dim),
      l_(L),
      mode_(mode),
      sigma_(sigma.value_or(mode == ClipMode::NormalizeAlways ? 1.0 : 0.25)),
      rng_(seed) {
  if (dim_ < 1) throw std::invalid_argument("stochastic: dim must be >= 1");
  if (l_ < 0.0) throw std::invalid_argument("stochastic: L must be >= 0");
  if (sigma_ <= 0.0) throw std::invalid_argument("stochastic: sigma must be > 0");
}

Vector StochasticSource::next(int) {
  Vector f = sigma_ * rng_.gaussian(dim_);
  while (f.norm() == 0.0) f = sigma_ * rng_.gaussian(dim_);
  const double n = f.norm();
  if (mode_ == ClipMode::NormalizeAlways || n > 1.0) f /= n;
  f[0] += l_;
  return f;
}

HalfAdversarialSource::HalfAdversarialSource(int dim, double L,
                                             std::uint64_t seed)
    : dim_(dim), l_(L), rng_(seed), hat_sum_(Vector::Zero(dim)) {
  if (dim_ < 3) {
    throw std::invalid_argument(
        "half_adversarial: needs dim >= 3 for orthogonal increments");
  }
  if (l_ < 0.0 || l_ > 1.0) {
    throw std::invalid_argument("half_adversarial: L must be in [0,1]");
  }
}

Vector HalfAdversarialSource::next(int t) {
  // draw in S = span{e_2..e_d}; for t >= 2 remove the component along the
  // running hat sum before normalizing
  Vector hat = Vector::Zero(dim_);
  for (;;) {
    for (int i = 1; i < dim_; ++i) hat[i] = rng_.normal();
    if (t >= 2) {
      const double s2 = hat_sum_.squaredNorm();
      if (s2 > 0.0) hat -= (hat.dot(hat_sum_) / s2) * hat_sum_;
    }
    const double n = hat.norm();
    if (n > 1e-12) {
      hat /= n;
      break;
    }
  }
  hat_sum_ += hat;
  Vector f = std::sqrt(1.0 - l_ * l_) * hat;
  f[0] += l_;
  return f;
}

Vector WorstCaseSource::next(int t) {
  Vector f = Vector::Zero(dim_);
  f[0] = (t == 1) ? 0.9 : 2.0 * (t % 2) - 1.0;
  return f;
}

BetaBernoulliSource::BetaBernoulliSource(double K, double L, std::uint64_t seed)
    : k_(K), l_(L), rng_(seed) {
  if (k_ <= 0.0) throw std::invalid_argument("beta_bernoulli: K must be > 0");
  if (l_ <= 0.0 || l_ >= 1.0) {
    throw std::invalid_argument("beta_bernoulli: L must be in (0,1)");
  }
  p_ = rng_.beta(k_, k_);
}

BetaBernoulliSource BetaBernoulliSource::with_fixed_p(double K, double L,
                                                      double p,
                                                      std::uint64_t seed) {
  BetaBernoulliSource src(K, L, seed);
  src.p_ = p;
  return src;
}

Vector BetaBernoulliSource::next(int) {
  const double x = rng_.bernoulli(p_) ? 1.0 : 0.0;
  Vector f(2);
  f[0] = 2.0 * x - 1.0;
  f[1] = -l_;
  return f;
}

double posterior_mean(const PosteriorState& ps) {
  return (ps.K + ps.x_sum) / (2.0 * ps.K + ps.t);
}

Vector bayes_w(double p, double h, double L) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bayes_w: p in (0,1)");
  if (!(h > 0.0 && L > 0.0)) throw std::invalid_argument("bayes_w: h, L > 0");
  const double lh = L * h;
  const double c = 1.0 - 2.0 * p;
  const double den = std::hypot(lh, c);
  Vector w(2);
  w[0] = c / den;       // cos(phi), sign matching tan(phi) = Lh / (1-2p)
  w[1] = h * lh / den;  // h sin(phi), sin(phi) > 0
  return w;
}

double bayes_error_analytic(double K, int t, double P) {
  const double den = (2.0 * K + t) * (2.0 * K + t);
  const double c = 1.0 - 2.0 * P;
  return K * K * c * c / den + t * P * (1.0 - P) / den;
}

double p2p1_gap(double P1, double P2, double h, double L) {
  const Vector w1 = bayes_w(P1, h, L);
  const Vector w2 = bayes_w(P2, h, L);
  Vector f1(2);
  f1[0] = 2.0 * P1 - 1.0;
  f1[1] = -L;
  return (w2 - w1).dot(f1);
}

double p2p1_lower(double P1, double P2, double h, double L) {
  const double hl = h * L;
  const double a = (2.0 * P2 - 2.0 * P1) / hl;
  const double b1 = (1.0 - 2.0 * P1) / hl;
  const double b2 = (1.0 - 2.0 * P2) / hl;
  return (hl / 2.0) * a * a / (std::sqrt(1.0 + b1 * b1) * (1.0 + b2 * b2));
}

ConcentrationCheck phat_concentration_check(double K, int t, double P, double u,
                                            int trials, Rng& rng) {
  if (u <= 0.0) throw std::invalid_argument("phat_concentration_check: u > 0");
  const double threshold =
      (K / (2.0 * K + t)) * std::abs(1.0 - 2.0 * P) + (static_cast<double>(t) / (2.0 * K + t)) * u;
  int exceed = 0;
  for (int trial = 0; trial < trials; ++trial) {
    int x_sum = 0;
    for (int i = 0; i < t; ++i) x_sum += rng.bernoulli(P) ? 1 : 0;
    const double phat = (K + x_sum) / (2.0 * K + t);
    if (std::abs(phat - P) > threshold) ++exceed;
  }
  return ConcentrationCheck{static_cast<double>(exceed) / trials,
                            2.0 * std::exp(-static_cast<double>(t) * u * u), trials};
}

}  // namespace ftla
