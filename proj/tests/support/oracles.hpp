#pragma once

// Test-only oracles: independent computation routes used to freeze and check
// expected values. Nothing here may call the library code path it validates.

#include <vector>

#include "ftl_arena/adversaries.hpp"
#include "ftl_arena/engine.hpp"

namespace ftla::test {

/// max <w, theta> over {w'Qw <= 1} by projected ascent on the sphere
/// parameterization (eigendecomposition square root), to ~1e-10.
double ellipsoid_support_ascent(const Matrix& q, const Vector& theta,
                                Vector* arg = nullptr);

/// Projection of x onto a 2-d ellipse {w'Qw <= 1}: dense boundary scan plus
/// golden-section refinement (interior points are returned unchanged).
Vector ellipse_projection_scan(const Matrix& q, const Vector& x);

/// Curvature of the 2-d boundary of {w'Qw <= 1} at parameter phi of the
/// principal-axis parameterization, by second differences.
double ellipse_curvature_fd(const Matrix& q, double phi);

/// Brute-force regret for polytope traces: cumulative loss minus the best
/// vertex in hindsight, scanning vertices directly.
double vertex_scan_regret(const GameTrace& trace);

/// i.i.d. losses mu + Uniform[-amp, amp]^d (the simplex experiments).
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
    return std::sqrt(static_cast<double>(mu_.size())) *
           (mu_.lpNorm<Eigen::Infinity>() + amp_);
  }
  std::string name() const override { return "iid_box"; }

 private:
  Vector mu_;
  double amp_;
  Rng rng_;
};

/// Replays a fixed list of loss vectors.
class FixedSource : public LossSource {
 public:
  explicit FixedSource(std::vector<Vector> fs) : fs_(std::move(fs)) {}

  Vector next(int t) override { return fs_.at(t - 1); }
  int dim() const override { return static_cast<int>(fs_.front().size()); }
  double norm_bound() const override {
    double m = 0.0;
    for (const auto& f : fs_) m = std::max(m, f.norm());
    return m;
  }
  std::string name() const override { return "fixed"; }

 private:
  std::vector<Vector> fs_;
};

}  // namespace ftla::test
