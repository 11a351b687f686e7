#include "ftl_arena/verify.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "ftl_arena/bounds.hpp"
#include "ftl_arena/engine.hpp"
#include "ftl_arena/presets.hpp"

namespace ftla {

namespace {

constexpr std::uint64_t kVerifySeed = 0x5eedf00d;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// --- local oracles ---------------------------------------------------------

// Iterative maximizer of <w, theta> over {w'Qw <= 1}: projected ascent on the
// sphere parameterization w = Q^{-1/2} u, independent of the closed form.
double ellipsoid_support_ascent(const Matrix& q, const Vector& theta,
                                Vector* arg = nullptr) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(q);
  const Matrix inv_sqrt = es.eigenvectors() *
                          es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                          es.eigenvectors().transpose();
  const Vector g = inv_sqrt * theta;  // gradient in u-space
  Vector u = Vector::Constant(theta.size(), 1.0 / std::sqrt(double(theta.size())));
  for (int it = 0; it < 100000; ++it) {
    Vector next = u + 0.05 * g;
    const double n = next.norm();
    if (n > 1.0) next /= n;
    if ((next - u).norm() < 1e-14) {
      u = next;
      break;
    }
    u = next;
  }
  if (arg != nullptr) *arg = inv_sqrt * u;
  return (inv_sqrt * u).dot(theta);
}

struct WitnessTuple {
  Vector x, y, z;
  double gamma;
};

// Randomized counterexample search for the strong-convexity inclusion at an
// inflated modulus. Proposals concentrate near the flattest boundary region
// (the short principal axis) where the inclusion is tightest.
bool witness_violation_search(const ConstraintSet& set, double lambda,
                              int samples, Rng& rng, WitnessTuple* found) {
  const auto* e = set.as_ellipsoid();
  if (e == nullptr) return false;
  const int d = set.dim();
  Eigen::Index max_idx;
  e->eigvals.maxCoeff(&max_idx);
  const Vector pole_dir = e->eigvecs.col(max_idx);
  const Matrix inv_sqrt = e->eigvecs *
                          e->eigvals.cwiseSqrt().cwiseInverse().asDiagonal() *
                          e->eigvecs.transpose();
  for (int i = 0; i < samples; ++i) {
    const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    Vector u = sign * pole_dir + 0.3 * rng.gaussian(d);
    u /= u.norm();
    Vector v = u + 0.25 * rng.gaussian(d);
    v /= v.norm();
    const Vector x = inv_sqrt * u;
    const Vector y = inv_sqrt * v;
    const double gamma = rng.uniform(0.4, 0.6);
    Vector mid = gamma * x + (1.0 - gamma) * y;
    mid /= std::sqrt(mid.dot(e->q * mid));
    Vector z = e->q * mid;
    z /= z.norm();
    if (!strong_convexity_witness(set, lambda, x, y, gamma, z)) {
      if (found != nullptr) *found = WitnessTuple{x, y, z, gamma};
      return true;
    }
  }
  return false;
}

// Simple i.i.d. simplex-experiment source: mean mu plus per-coordinate
// uniform noise on [-amp, amp].
class IidBoxSource : public LossSource {
 public:
  IidBoxSource(Vector mu, double amp, std::uint64_t seed)
      : mu_(std::move(mu)), amp_(amp), rng_(seed) {}
  Vector next(int) override {
    Vector f = mu_;
    for (int i = 0; i < f.size(); ++i) f[i] += rng_.uniform(-amp_, amp_);
    return f;
  }
  int dim() const override { return static_cast<int>(mu_.size()); }
  double norm_bound() const override {
    return mu_.lpNorm<Eigen::Infinity>() + amp_ + 1.0;  // crude l2 cover
  }
  std::string name() const override { return "iid_box"; }

 private:
  Vector mu_;
  double amp_;
  Rng rng_;
};

SetPtr make_q4_set() {
  return std::make_shared<ConstraintSet>(ConstraintSet::ellipsoid(preset_q4()));
}

SetPtr make_simplex(int d) {
  std::vector<Vector> verts;
  for (int i = 0; i < d; ++i) {
    Vector v = Vector::Zero(d);
    v[i] = 1.0;
    verts.push_back(std::move(v));
  }
  return std::make_shared<ConstraintSet>(ConstraintSet::polytope(std::move(verts)));
}

std::vector<SetPtr> curvature_test_sets() {
  Matrix q2(2, 2);
  q2 << 1.0, 0.0, 0.0, 4.0;
  return {std::make_shared<ConstraintSet>(ConstraintSet::ball(1.0, 2)),
          std::make_shared<ConstraintSet>(ConstraintSet::ball(1.5, 4)),
          std::make_shared<ConstraintSet>(ConstraintSet::ellipsoid(q2)),
          make_q4_set()};
}

// --- checks -----------------------------------------------------------------

bool check_support_homogeneity(std::string& detail) {
  Rng rng(kVerifySeed);
  for (const auto& set : curvature_test_sets()) {
    for (int i = 0; i < 2000; ++i) {
      const Vector theta = 3.0 * rng.gaussian(set->dim());
      const double a = rng.uniform(0.0, 5.0);
      const double lhs = support(*set, a * theta).value;
      const double rhs = a * support(*set, theta).value;
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) {
        detail = "homogeneity off by " + fmt(lhs - rhs);
        return false;
      }
    }
  }
  return true;
}

bool check_support_convexity(std::string& detail) {
  Rng rng(kVerifySeed + 1);
  auto sets = curvature_test_sets();
  sets.push_back(make_simplex(3));
  for (const auto& set : sets) {
    for (int i = 0; i < 2000; ++i) {
      const Vector t1 = rng.gaussian(set->dim());
      const Vector t2 = rng.gaussian(set->dim());
      const double a = rng.uniform();
      const double lhs = support(*set, a * t1 + (1 - a) * t2).value;
      const double rhs = a * support(*set, t1).value + (1 - a) * support(*set, t2).value;
      if (lhs > rhs + 1e-9) {
        detail = "convexity violated by " + fmt(lhs - rhs);
        return false;
      }
    }
  }
  return true;
}

bool check_support_dominance(std::string& detail) {
  Rng rng(kVerifySeed + 2);
  auto sets = curvature_test_sets();
  sets.push_back(make_simplex(3));
  for (const auto& set : sets) {
    for (int i = 0; i < 20; ++i) {
      const Vector theta = rng.gaussian(set->dim());
      const SupportResult res = support(*set, theta);
      for (int k = 0; k < 1000; ++k) {
        const Vector w = sample_point(*set, rng);
        if (res.maximizer.dot(theta) < w.dot(theta) - 1e-9) {
          detail = "sampled point beats the maximizer by " +
                   fmt(w.dot(theta) - res.maximizer.dot(theta));
          return false;
        }
      }
    }
  }
  return true;
}

bool check_ellipsoid_support_bruteforce(std::string& detail) {
  Rng rng(kVerifySeed + 3);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform_int(3));
    Matrix a(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a(r, c) = rng.normal();
    const Matrix q = a * a.transpose() + 0.3 * Matrix::Identity(d, d);
    const auto set = std::make_shared<ConstraintSet>(ConstraintSet::ellipsoid(q));
    for (int i = 0; i < 5; ++i) {
      const Vector theta = rng.gaussian(d);
      const double closed = support(*set, theta).value;
      const double oracle = ellipsoid_support_ascent(q, theta);
      if (std::abs(closed - oracle) > 1e-6 * std::max(1.0, std::abs(closed))) {
        detail = "closed form " + fmt(closed) + " vs ascent " + fmt(oracle);
        return false;
      }
    }
  }
  return true;
}

bool check_weingarten_vs_lambda0(std::string& detail) {
  Rng rng(kVerifySeed + 4);
  for (const Matrix& q : {preset_q4(), [] {
         Matrix m(2, 2);
         m << 1.0, 0.0, 0.0, 4.0;
         return m;
       }()}) {
    const auto set = std::make_shared<ConstraintSet>(ConstraintSet::ellipsoid(q));
    const double lam0 = *min_principal_curvature(*set);
    double sampled_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
      const Vector w = sample_boundary(*set, rng);
      const double k = weingarten_min_eig(q, w);
      sampled_min = std::min(sampled_min, k);
      if (k < lam0 - 1e-6) {
        detail = "sampled curvature " + fmt(k) + " below lambda0 " + fmt(lam0);
        return false;
      }
    }
    // the poles of the principal axes realize the extremes
    const auto* e = set->as_ellipsoid();
    for (int i = 0; i < set->dim(); ++i) {
      const Vector w = e->eigvecs.col(i) / std::sqrt(e->eigvals[i]);
      sampled_min = std::min(sampled_min, weingarten_min_eig(q, w));
    }
    if (std::abs(sampled_min - lam0) > 1e-6) {
      detail = "pole-augmented sample min " + fmt(sampled_min) +
               " != lambda0 " + fmt(lam0);
      return false;
    }
  }
  return true;
}

bool check_strong_convexity_at_lambda0(std::string& detail) {
  Rng rng(kVerifySeed + 5);
  for (const auto& set : curvature_test_sets()) {
    const double lam0 = *min_principal_curvature(*set);
    const int d = set->dim();
    for (int i = 0; i < 25000; ++i) {
      const Vector x = sample_point(*set, rng);
      const Vector y = sample_point(*set, rng);
      const double gamma = rng.uniform();
      const Vector z = rng.unit_sphere(d);
      if (!strong_convexity_witness(*set, lam0, x, y, gamma, z)) {
        detail = set->kind() + ": inclusion failed at lambda0";
        return false;
      }
    }
  }
  return true;
}

bool check_strong_convexity_violation(std::string& detail) {
  Rng rng(kVerifySeed + 6);
  const auto set = make_q4_set();
  const double lam0 = *min_principal_curvature(*set);
  if (!witness_violation_search(*set, 1.05 * lam0, 100000, rng, nullptr)) {
    detail = "no counterexample found at 1.05 lambda0 within 1e5 samples";
    return false;
  }
  Rng rng2(kVerifySeed + 6);
  if (witness_violation_search(*set, lam0, 100000, rng2, nullptr)) {
    detail = "search produced a counterexample at lambda0 itself";
    return false;
  }
  return true;
}

bool check_projection_idempotent(std::string& detail) {
  Rng rng(kVerifySeed + 7);
  for (const auto& set : curvature_test_sets()) {
    for (int i = 0; i < 2000; ++i) {
      const Vector x = 4.0 * rng.gaussian(set->dim());
      const Vector p = euclidean_project(*set, x);
      const Vector pp = euclidean_project(*set, p);
      if ((pp - p).norm() > 1e-10) {
        detail = "re-projection moved by " + fmt((pp - p).norm());
        return false;
      }
      if (!contains(*set, p)) {
        detail = "projection landed outside the set";
        return false;
      }
    }
  }
  return true;
}

GameTrace play_ftl(SetPtr set, LossSource& src, int n) {
  FtlLearner learner(set);
  return run_game(learner, src, std::move(set), n);
}

bool check_regret_triangle(std::string& detail) {
  int game = 0;
  for (const auto& set : curvature_test_sets()) {
    for (int rep = 0; rep < 5; ++rep, ++game) {
      StochasticSource src(set->dim(), 0.1, ClipMode::NormalizeAlways,
                           Rng::substream_seed(kVerifySeed + 8, game));
      const GameTrace trace = play_ftl(set, src, 500);
      const double def = regret_definition(trace);
      const double abel = regret_abel(trace);
      const BregmanRegret breg = regret_bregman(trace);
      const double scale = std::max({1.0, std::abs(def), std::abs(abel)});
      if (std::abs(def - abel) > 1e-8 * scale ||
          std::abs(def - breg.lower) > 1e-8 * scale ||
          std::abs(def - breg.upper) > 1e-8 * scale) {
        detail = "game " + std::to_string(game) + ": def=" + fmt(def) +
                 " abel=" + fmt(abel) + " bregman=[" + fmt(breg.lower) + "," +
                 fmt(breg.upper) + "]";
        return false;
      }
    }
  }
  return true;
}

bool check_middletheta(std::string& detail) {
  Rng rng(kVerifySeed + 9);
  for (const auto& set : curvature_test_sets()) {
    const double lam0 = *min_principal_curvature(*set);
    for (int i = 0; i < 20000; ++i) {
      const Vector t1 = rng.gaussian(set->dim());
      const Vector t2 = t1 + rng.uniform(0.0, 1.0) * rng.gaussian(set->dim());
      if (t1.norm() < 1e-9 || t2.norm() < 1e-9) continue;
      const Vector w1 = support(*set, t1).maximizer;
      const Vector w2 = support(*set, t2).maximizer;
      const double lhs = (w1 - w2).dot(t1);
      const double rhs = (t2 - t1).squaredNorm() / (2.0 * lam0 * t2.norm());
      if (lhs > rhs + 1e-9) {
        detail = "gap " + fmt(lhs - rhs);
        return false;
      }
    }
  }
  return true;
}

bool check_theta_increment(std::string& detail) {
  const auto set = make_q4_set();
  const int n = 400;
  {
    StochasticSource src(4, 0.1, ClipMode::NormalizeAlways, kVerifySeed + 10);
    if (!theta_increment_check(play_ftl(set, src, n), src.norm_bound())) {
      detail = "stochastic trace violated the 2M/t increment bound";
      return false;
    }
  }
  {
    HalfAdversarialSource src(4, 0.1, kVerifySeed + 11);
    if (!theta_increment_check(play_ftl(set, src, n), src.norm_bound())) {
      detail = "half-adversarial trace violated the 2M/t increment bound";
      return false;
    }
  }
  {
    WorstCaseSource src(4);
    if (!theta_increment_check(play_ftl(set, src, n), src.norm_bound())) {
      detail = "worst-case trace violated the 2M/t increment bound";
      return false;
    }
  }
  return true;
}

bool check_bregman_brackets_ties(std::string& detail) {
  // square with theta landing exactly on a face normal: tied leaders
  std::vector<Vector> verts;
  for (double sx : {1.0, -1.0})
    for (double sy : {1.0, -1.0}) {
      Vector v(2);
      v << sx, sy;
      verts.push_back(v);
    }
  const auto set =
      std::make_shared<ConstraintSet>(ConstraintSet::polytope(verts));
  FtlLearner learner(set);
  std::vector<Vector> losses;
  Vector f1(2), f2(2), f3(2);
  f1 << -1.0, 0.0;   // Theta_1 = (1, 0): tie between (1,1) and (1,-1)
  f2 << 0.0, -1.0;
  f3 << 0.5, 0.25;
  losses = {f1, f2, f3};
  class FixedSource : public LossSource {
   public:
    explicit FixedSource(std::vector<Vector> fs) : fs_(std::move(fs)) {}
    Vector next(int t) override { return fs_.at(t - 1); }
    int dim() const override { return 2; }
    double norm_bound() const override { return 2.0; }
    std::string name() const override { return "fixed"; }

   private:
    std::vector<Vector> fs_;
  } src(losses);
  const GameTrace trace = run_game(learner, src, set, 3);
  const double def = regret_definition(trace);
  const BregmanRegret breg = regret_bregman(trace);
  if (!(breg.lower <= def + 1e-9 && def <= breg.upper + 1e-9)) {
    detail = "def=" + fmt(def) + " outside [" + fmt(breg.lower) + "," +
             fmt(breg.upper) + "]";
    return false;
  }
  if (breg.upper - breg.lower < 1e-6) {
    detail = "tie did not widen the bracket";
    return false;
  }
  return true;
}

bool check_upperboundcos(std::string& detail) {
  Rng rng(kVerifySeed + 12);
  for (int i = 0; i < 100000; ++i) {
    const int d = 2 + static_cast<int>(rng.uniform_int(5));
    const Vector t1 = rng.gaussian(d);
    const Vector t2 = rng.gaussian(d);
    if (t1.norm() == 0.0 || t2.norm() == 0.0) continue;
    const double cosang = t1.dot(t2) / (t1.norm() * t2.norm());
    const double rhs = 0.5 * (t1 - t2).squaredNorm() / (t1.norm() * t2.norm());
    if (1.0 - cosang > rhs + 1e-12) {
      detail = "violated by " + fmt(1.0 - cosang - rhs);
      return false;
    }
  }
  return true;
}

bool check_p2p1(std::string& detail) {
  Rng rng(kVerifySeed + 13);
  for (int i = 0; i < 100000; ++i) {
    const double p1 = rng.uniform(1e-3, 1.0 - 1e-3);
    const double p2 = rng.uniform(1e-3, 1.0 - 1e-3);
    const double h = rng.uniform(0.05, 3.0);
    const double l = rng.uniform(0.05, 0.999);
    const double gap = p2p1_gap(p1, p2, h, l);
    const double lower = p2p1_lower(p1, p2, h, l);
    if (gap < lower - 1e-12) {
      detail = "gap " + fmt(gap) + " below bound " + fmt(lower);
      return false;
    }
  }
  return true;
}

bool check_bayes_error_mc(std::string& detail) {
  Rng rng(kVerifySeed + 14);
  for (const double k : {1.0, 2.0}) {
    for (const int t : {10, 100}) {
      for (const double p : {0.3, 0.7}) {
        const int trials = 40000;
        std::vector<double> sq(trials);
        for (int trial = 0; trial < trials; ++trial) {
          int x_sum = 0;
          for (int i = 0; i < t; ++i) x_sum += rng.bernoulli(p) ? 1 : 0;
          const double phat = (k + x_sum) / (2.0 * k + t);
          sq[trial] = (phat - p) * (phat - p);
        }
        const double mc = pairwise_sum(sq) / trials;
        double var = 0.0;
        for (double v : sq) var += (v - mc) * (v - mc);
        const double se = std::sqrt(var / (trials - 1) / trials);
        const double exact = bayes_error_analytic(k, t, p);
        if (std::abs(mc - exact) > 3.0 * se) {
          detail = "K=" + fmt(k) + " t=" + std::to_string(t) + " P=" + fmt(p) +
                   ": mc " + fmt(mc) + " vs exact " + fmt(exact);
          return false;
        }
      }
    }
  }
  return true;
}

bool check_phat_concentration(std::string& detail) {
  Rng rng(kVerifySeed + 15);
  for (const double p : {0.5, 0.3}) {
    const auto res = phat_concentration_check(1.0, 100, p, 0.2, 20000, rng);
    const double se =
        std::sqrt(std::max(res.bound * (1 - res.bound), 1e-12) / res.trials);
    if (res.empirical_prob > res.bound + 3.0 * se) {
      detail = "P=" + fmt(p) + ": empirical " + fmt(res.empirical_prob) +
               " above bound " + fmt(res.bound);
      return false;
    }
  }
  return true;
}

bool check_bayes_w_minimizes(std::string& detail) {
  Rng rng(kVerifySeed + 16);
  for (int rep = 0; rep < 50; ++rep) {
    const double p = rng.uniform(0.05, 0.95);
    const double h = rng.uniform(0.2, 1.0);
    const double l = rng.uniform(0.1, 0.9);
    const Vector w = bayes_w(p, h, l);
    Vector f(2);
    f << 2.0 * p - 1.0, -l;
    const double val = w.dot(f);
    for (int i = 0; i < 2000; ++i) {
      const double phi = rng.uniform(0.0, 2.0 * M_PI);
      Vector b(2);
      b << std::cos(phi), h * std::sin(phi);
      if (b.dot(f) < val - 1e-9) {
        detail = "boundary point beats bayes_w by " + fmt(val - b.dot(f));
        return false;
      }
    }
  }
  return true;
}

bool check_curvature_bound_monotone(std::string& detail) {
  Rng rng(kVerifySeed + 17);
  for (int i = 0; i < 5000; ++i) {
    const double m = rng.uniform(0.1, 5.0);
    const double lam = rng.uniform(0.01, 3.0);
    const double ln = rng.uniform(0.01, 2.0);
    const double n = 1.0 + rng.uniform(0.0, 10000.0);
    const double base = curvature_bound(m, lam, ln, n);
    if (curvature_bound(m, lam * 1.5, ln, n) > base ||
        curvature_bound(m, lam, ln * 1.5, n) > base ||
        curvature_bound(m * 1.5, lam, ln, n) < base ||
        curvature_bound(m, lam, ln, n + 10.0) < base) {
      detail = "monotonicity violated";
      return false;
    }
  }
  return true;
}

bool check_curvature_dominance(std::string& detail) {
  const auto set = make_q4_set();
  const double lam0 = *min_principal_curvature(*set);
  const double m = 1.1;
  for (int seed = 0; seed < 10; ++seed) {
    StochasticSource src(4, 0.1, ClipMode::NormalizeAlways,
                         Rng::substream_seed(kVerifySeed + 18, seed));
    const int n = 800;
    const GameTrace trace = play_ftl(set, src, n);
    const double realized = regret_definition(trace);
    const double l_n = min_theta_norm(trace);
    const double bound = curvature_bound(m, lam0, l_n, n);
    if (realized > bound + 1e-9) {
      detail = "seed " + std::to_string(seed) + ": regret " + fmt(realized) +
               " above bound " + fmt(bound);
      return false;
    }
    // at the largest grid point below L_n the indicator sum is empty, so the
    // infimum is within one log-grid spacing factor of the fixed-L_n bound
    const double spacing = std::pow(1e4, 1.0 / 63.0);
    const MixedCurvatureBound mixed =
        mixed_curvature_bound(trace, m, lam0, diameter(*set, Norm::L2), l_n);
    if (l_n >= 1e-4 * m && mixed.grid_infimum > spacing * bound * (1.0 + 1e-9)) {
      detail = "mixed-bound grid infimum " + fmt(mixed.grid_infimum) +
               " above spacing-adjusted fixed-L_n bound " + fmt(spacing * bound);
      return false;
    }
  }
  return true;
}

bool check_polytope_switch_bounds(std::string& detail) {
  const auto set = make_simplex(3);
  Vector mu(3);
  mu << 0.1, 0.5, 0.7;
  for (int seed = 0; seed < 10; ++seed) {
    IidBoxSource src(mu, 0.3, Rng::substream_seed(kVerifySeed + 19, seed));
    const GameTrace trace = play_ftl(set, src, 500);
    const double realized = regret_definition(trace);
    const auto b = polytope_switch_bound(trace, diameter(*set, Norm::Linf), 2.0);
    if (!(realized <= b.tight + 1e-9 && b.tight <= b.loose + 1e-9)) {
      detail = "regret " + fmt(realized) + " tight " + fmt(b.tight) +
               " loose " + fmt(b.loose);
      return false;
    }
  }
  return true;
}

bool check_stochastic_polytope_expectation(std::string& detail) {
  const auto set = make_simplex(3);
  Vector mu(3);
  mu << 0.1, 0.5, 0.7;
  const int trials = 30;
  std::vector<double> regrets(trials);
  for (int seed = 0; seed < trials; ++seed) {
    IidBoxSource src(mu, 0.3, Rng::substream_seed(kVerifySeed + 20, seed));
    regrets[seed] = regret_definition(play_ftl(set, src, 1000));
  }
  const double mean = pairwise_sum(regrets) / trials;
  const double bound = stochastic_polytope_bound(1.0, diameter(*set, Norm::L1),
                                                 3, 0.15);
  if (mean > bound) {
    detail = "mean regret " + fmt(mean) + " above " + fmt(bound);
    return false;
  }
  return true;
}

bool check_ftsl_step_inequality(std::string& detail) {
  Rng rng(kVerifySeed + 21);
  for (int i = 0; i < 2000; ++i) {
    const int t = 1 + static_cast<int>(rng.uniform_int(3000));
    const double f_norm = rng.uniform(0.0, 3.0 * std::sqrt(double(t)));
    const double sigma = FtslLearner::shrink_factor(f_norm, t);
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 2000; ++k) {
      const double a = -1.0 + 2.0 * k / 2000.0;
      best = std::max(best, std::sqrt(f_norm * f_norm + 2 * a * f_norm + t + 2.0) -
                                a * sigma);
    }
    const double delta = best - std::sqrt(f_norm * f_norm + t);
    if (delta > 1.0 / std::sqrt(double(t)) + 1e-9) {
      detail = "step inequality violated at t=" + std::to_string(t);
      return false;
    }
  }
  return true;
}

bool check_abprod_tracks_b(std::string& detail) {
  const auto set = make_q4_set();
  const int n = 1000;
  WorstCaseSource src_h(4), src_f(4);
  auto hybrid = AbProdLearner::ftl_ftrl(set, n, {.m_bound = 1.0});
  const double slack =
      hybrid->scale() * std::log(2.0) / hybrid->eta();
  const GameTrace trace_h = run_game(*hybrid, src_h, set, n);
  FtrlLearner ftrl(set);
  const GameTrace trace_f = run_game(ftrl, src_f, set, n);
  double loss_h = 0.0, loss_f = 0.0;
  for (const auto& r : trace_h.rounds) loss_h += r.loss;
  for (const auto& r : trace_f.rounds) loss_f += r.loss;
  if (loss_h > loss_f + slack + 1e-9) {
    detail = "hybrid loss " + fmt(loss_h) + " above ftrl + slack " +
             fmt(loss_f + slack);
    return false;
  }
  return true;
}

struct Check {
  const char* suite;
  const char* name;
  bool (*fn)(std::string&);
};

const Check kChecks[] = {
    {"geometry", "support_positive_homogeneity", check_support_homogeneity},
    {"geometry", "support_convexity", check_support_convexity},
    {"geometry", "support_maximizer_dominance", check_support_dominance},
    {"geometry", "ellipsoid_support_matches_ascent_oracle",
     check_ellipsoid_support_bruteforce},
    {"geometry", "weingarten_min_matches_lambda0", check_weingarten_vs_lambda0},
    {"geometry", "strong_convexity_holds_at_lambda0",
     check_strong_convexity_at_lambda0},
    {"geometry", "strong_convexity_fails_when_inflated",
     check_strong_convexity_violation},
    {"geometry", "projection_idempotent_and_feasible",
     check_projection_idempotent},
    {"identities", "regret_definition_abel_bregman_agree", check_regret_triangle},
    {"identities", "leader_gap_curvature_inequality", check_middletheta},
    {"identities", "theta_increment_bound", check_theta_increment},
    {"identities", "bregman_brackets_tied_rounds", check_bregman_brackets_ties},
    {"lemmas", "one_minus_cosine_bound", check_upperboundcos},
    {"lemmas", "posterior_gap_lower_bound", check_p2p1},
    {"lemmas", "posterior_mse_matches_monte_carlo", check_bayes_error_mc},
    {"lemmas", "posterior_concentration_bound", check_phat_concentration},
    {"lemmas", "bayes_play_minimizes_on_ellipse", check_bayes_w_minimizes},
    {"bounds", "curvature_bound_monotone", check_curvature_bound_monotone},
    {"bounds", "curvature_bound_dominates_realized", check_curvature_dominance},
    {"bounds", "polytope_switch_bounds_dominate", check_polytope_switch_bounds},
    {"bounds", "stochastic_polytope_expected_bound",
     check_stochastic_polytope_expectation},
    {"bounds", "ftsl_step_inequality", check_ftsl_step_inequality},
    {"bounds", "abprod_tracks_safe_learner", check_abprod_tracks_b},
};

}  // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite) {
  if (suite != "all" && suite != "geometry" && suite != "identities" &&
      suite != "lemmas" && suite != "bounds") {
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
  }
  std::vector<CheckResult> results;
  for (const auto& check : kChecks) {
    if (suite != "all" && suite != check.suite) continue;
    std::string detail;
    const bool ok = check.fn(detail);
    results.push_back(CheckResult{check.suite, check.name, ok, detail});
  }
  return results;
}

int cmd_verify(const std::string& suite) {
  std::vector<CheckResult> results;
  try {
    results = run_verify_suite(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  const CheckResult* first_fail = nullptr;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.suite << "/"
              << r.name;
    if (!r.passed && !r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
    if (!r.passed && first_fail == nullptr) first_fail = &r;
  }
  if (first_fail != nullptr) {
    std::cerr << "first failing property: " << first_fail->suite << "/"
              << first_fail->name << "\n";
    return 3;
  }
  std::cout << results.size() << " properties passed\n";
  return 0;
}

}  // namespace ftla
