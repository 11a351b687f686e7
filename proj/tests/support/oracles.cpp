#include "support/oracles.hpp"

#include <cmath>

namespace ftla::test {

namespace {

Matrix inv_sqrt_of(const Matrix& q) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(q);
  return es.eigenvectors() *
         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace

double ellipsoid_support_ascent(const Matrix& q, const Vector& theta,
                                Vector* arg) {
  const Matrix s = inv_sqrt_of(q);
  const Vector g = s * theta;
  Vector u = Vector::Constant(theta.size(), 1.0 / std::sqrt(double(theta.size())));
  for (int it = 0; it < 200000; ++it) {
    Vector next = u + 0.05 * g;
    const double n = next.norm();
    if (n > 1.0) next /= n;
    if ((next - u).norm() < 1e-15 && it > 10) {
      u = next;
      break;
    }
    u = next;
  }
  if (arg != nullptr) *arg = s * u;
  return (s * u).dot(theta);
}

Vector ellipse_projection_scan(const Matrix& q, const Vector& x) {
  if (x.dot(q * x) <= 1.0) return x;
  const Matrix s = inv_sqrt_of(q);
  const auto point = [&](double phi) {
    Vector u(2);
    u << std::cos(phi), std::sin(phi);
    return Vector(s * u);
  };
  const auto dist2 = [&](double phi) { return (point(phi) - x).squaredNorm(); };

  const int grid = 2000000;
  double best_phi = 0.0, best = dist2(0.0);
  for (int i = 1; i < grid; ++i) {
    const double phi = 2.0 * M_PI * i / grid;
    const double d = dist2(phi);
    if (d < best) {
      best = d;
      best_phi = phi;
    }
  }
  // golden-section refinement around the winner
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_phi - 2.0 * M_PI / grid;
  double b = best_phi + 2.0 * M_PI / grid;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (dist2(c) < dist2(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  return point(0.5 * (a + b));
}

double ellipse_curvature_fd(const Matrix& q, double phi) {
  const Matrix s = inv_sqrt_of(q);
  const auto gamma = [&](double p) {
    Vector u(2);
    u << std::cos(p), std::sin(p);
    return Vector(s * u);
  };
  const double eps = 1e-4;
  const Vector g1 = (gamma(phi + eps) - gamma(phi - eps)) / (2.0 * eps);
  const Vector g2 =
      (gamma(phi + eps) - 2.0 * gamma(phi) + gamma(phi - eps)) / (eps * eps);
  const double cross = g1[0] * g2[1] - g1[1] * g2[0];
  return std::abs(cross) / std::pow(g1.norm(), 3.0);
}

double vertex_scan_regret(const GameTrace& trace) {
  const auto* poly = trace.set->as_polytope();
  if (poly == nullptr) {
    throw std::invalid_argument("vertex_scan_regret: polytope traces only");
  }
  double cum = 0.0;
  Vector f_sum = Vector::Zero(trace.set->dim());
  for (const auto& r : trace.rounds) {
    cum += r.loss;
    f_sum += r.f;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : poly->vertices) best = std::min(best, v.dot(f_sum));
  return cum - best;
}

}  // namespace ftla::test
