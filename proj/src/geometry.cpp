#include "ftl_arena/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ftla {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDedupTol = 1e-12;

double polytope_tie_tol(const Vector& theta) {
  return 1e-10 * std::max(1.0, theta.norm());
}

// Q^{-1} theta through the cached spectral factorization.
Vector solve_q(const Ellipsoid& e, const Vector& theta) {
  Vector y = e.eigvecs.transpose() * theta;
  y.array() /= e.eigvals.array();
  return e.eigvecs * y;
}

Vector inv_sqrt_q(const Ellipsoid& e, const Vector& x) {
  Vector y = e.eigvecs.transpose() * x;
  y.array() /= e.eigvals.array().sqrt();
  return e.eigvecs * y;
}

// Point of the set maximizing <w, e_1>; the canonical maximizer for theta = 0.
Vector canonical_point(const ConstraintSet& set) {
  if (const auto* p = set.as_polytope()) return p->vertices.front();
  Vector e1 = Vector::Zero(set.dim());
  e1[0] = 1.0;
  return support(set, e1).maximizer;
}

// Projection of weights onto the probability simplex (sort-based).
Vector project_simplex(Vector v) {
  const int k = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + k);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, tau = 0.0;
  int rho = 0;
  for (int i = 0; i < k; ++i) {
    css += u[i];
    const double t = (css - 1.0) / (i + 1);
    if (u[i] - t > 0) {
      rho = i + 1;
      tau = t;
    }
  }
  (void)rho;
  for (int i = 0; i < k; ++i) v[i] = std::max(0.0, v[i] - tau);
  return v;
}

// Distance from x to the convex hull of the vertices: accelerated projected
// gradient on 0.5 |V w - x|^2 over the weight simplex.
double hull_distance(const Polytope& p, const Vector& x) {
  const int k = static_cast<int>(p.vertices.size());
  const int d = static_cast<int>(x.size());
  Matrix V(d, k);
  for (int j = 0; j < k; ++j) V.col(j) = p.vertices[j];
  double lip = (V.transpose() * V).norm();  // Frobenius bound on the Hessian
  if (lip == 0.0) lip = 1.0;
  Vector w = Vector::Constant(k, 1.0 / k);
  Vector w_prev = w;
  double t_prev = 1.0;
  for (int it = 0; it < 5000; ++it) {
    const double t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
    Vector z = w + ((t_prev - 1.0) / t) * (w - w_prev);
    Vector grad = V.transpose() * (V * z - x);
    Vector w_next = project_simplex(z - grad / lip);
    if ((w_next - w).lpNorm<Eigen::Infinity>() < 1e-15 && it > 10) {
      w = w_next;
      break;
    }
    w_prev = w;
    w = w_next;
    t_prev = t;
  }
  return (V * w - x).norm();
}

}  // namespace

ConstraintSet ConstraintSet::ball(double radius, int dim) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be > 0");
  if (dim < 1) throw std::invalid_argument("ball dimension must be >= 1");
  return ConstraintSet(Ball{radius, dim}, dim);
}

ConstraintSet ConstraintSet::ellipsoid(Matrix q) {
  if (q.rows() != q.cols() || q.rows() < 1) {
    throw std::invalid_argument("ellipsoid matrix must be square");
  }
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw std::invalid_argument("ellipsoid matrix must be symmetric (tol 1e-12)");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(q);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("ellipsoid eigendecomposition failed");
  }
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("ellipsoid matrix must be positive definite");
  }
  const int d = static_cast<int>(q.rows());
  return ConstraintSet(Ellipsoid{std::move(q), es.eigenvalues(), es.eigenvectors()}, d);
}

ConstraintSet ConstraintSet::polytope(std::vector<Vector> vertices) {
  if (vertices.empty()) throw std::invalid_argument("polytope needs >= 1 vertex");
  const int d = static_cast<int>(vertices.front().size());
  if (d < 1) throw std::invalid_argument("polytope vertex dimension must be >= 1");
  std::vector<Vector> dedup;
  for (auto& v : vertices) {
    if (v.size() != d) throw DimensionMismatch("polytope vertices differ in dimension");
    require_finite(v, "polytope vertex");
    bool dup = false;
    for (const auto& u : dedup) {
      if ((u - v).lpNorm<Eigen::Infinity>() <= kDedupTol) {
        dup = true;
        break;
      }
    }
    if (!dup) dedup.push_back(std::move(v));
  }
  return ConstraintSet(Polytope{std::move(dedup)}, d);
}

std::string ConstraintSet::kind() const {
  if (as_ball()) return "ball";
  if (as_ellipsoid()) return "ellipsoid";
  return "polytope";
}

SupportResult support(const ConstraintSet& set, const Vector& theta) {
  require_dim(theta, set.dim(), "support");
  require_finite(theta, "support");

  if (theta.norm() == 0.0) {
    return SupportResult{0.0, canonical_point(set), false};
  }

  if (const auto* b = set.as_ball()) {
    const double n = theta.norm();
    return SupportResult{b->radius * n, (b->radius / n) * theta, true};
  }
  if (const auto* e = set.as_ellipsoid()) {
    const Vector v = solve_q(*e, theta);
    const double value = std::sqrt(theta.dot(v));
    return SupportResult{value, v / value, true};
  }
  const auto& verts = set.as_polytope()->vertices;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : verts) best = std::max(best, v.dot(theta));
  const double tol = polytope_tie_tol(theta);
  int arg = -1, ties = 0;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
    if (verts[i].dot(theta) >= best - tol) {
      ++ties;
      if (arg < 0) arg = i;  // lowest index wins
    }
  }
  return SupportResult{best, verts[arg], ties == 1};
}

SubdifferentialExtent subdifferential_extent(const ConstraintSet& set,
                                             const Vector& theta) {
  require_dim(theta, set.dim(), "subdifferential_extent");
  require_finite(theta, "subdifferential_extent");
  if (theta.norm() == 0.0) {
    return SubdifferentialExtent{{}, true};
  }
  if (const auto* p = set.as_polytope()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : p->vertices) best = std::max(best, v.dot(theta));
    const double tol = polytope_tie_tol(theta);
    SubdifferentialExtent out;
    for (const auto& v : p->vertices) {
      if (v.dot(theta) >= best - tol) out.points.push_back(v);
    }
    return out;
  }
  return SubdifferentialExtent{{support(set, theta).maximizer}, false};
}

Vector euclidean_project(const ConstraintSet& set, const Vector& x) {
  require_dim(x, set.dim(), "euclidean_project");
  require_finite(x, "euclidean_project");
  if (const auto* b = set.as_ball()) {
    const double n = x.norm();
    if (n <= b->radius) return x;
    return (b->radius / n) * x;
  }
  const auto* e = set.as_ellipsoid();
  if (e == nullptr) {
    throw UnsupportedProjection("euclidean_project: polytopes are unsupported");
  }
  if (x.dot(e->q * x) <= 1.0) return x;

  // w(lam) = (I + lam Q)^{-1} x; find lam > 0 with w'Qw = 1. In the eigenbasis
  // g(lam) = sum_i l_i y_i^2 / (1 + lam l_i)^2 - 1, strictly decreasing.
  const Vector y = e->eigvecs.transpose() * x;
  const auto g = [&](double lam) {
    double s = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double den = 1.0 + lam * e->eigvals[i];
      s += e->eigvals[i] * y[i] * y[i] / (den * den);
    }
    return s - 1.0;
  };
  const auto gprime = [&](double lam) {
    double s = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double den = 1.0 + lam * e->eigvals[i];
      s -= 2.0 * e->eigvals[i] * e->eigvals[i] * y[i] * y[i] / (den * den * den);
    }
    return s;
  };
  double lo = 0.0, hi = 1.0;
  int grow = 0;
  while (g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 200) throw NonConvergence("euclidean_project: bracket growth failed");
  }
  double lam = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const double val = g(lam);
    if (std::abs(val) <= 1e-12) {
      converged = true;
      break;
    }
    if (val > 0.0) {
      lo = lam;
    } else {
      hi = lam;
    }
    const double step = lam - val / gprime(lam);
    lam = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
  }
  if (!converged && std::abs(g(lam)) > 1e-12) {
    throw NonConvergence("euclidean_project: Newton did not reach residual 1e-12");
  }
  Vector z = y;
  for (int i = 0; i < z.size(); ++i) z[i] /= 1.0 + lam * e->eigvals[i];
  return e->eigvecs * z;
}

std::optional<double> min_principal_curvature(const ConstraintSet& set) {
  if (const auto* b = set.as_ball()) return 1.0 / b->radius;
  if (const auto* e = set.as_ellipsoid()) {
    return e->eigvals.minCoeff() / std::sqrt(e->eigvals.maxCoeff());
  }
  return std::nullopt;  // flat faces
}

double weingarten_min_eig(const Matrix& q, const Vector& w) {
  if (w.size() != q.rows()) throw DimensionMismatch("weingarten_min_eig");
  const double resid = std::abs(w.dot(q * w) - 1.0);
  if (resid > 1e-9) {
    throw std::invalid_argument("weingarten_min_eig: w is not on the boundary");
  }
  const int d = static_cast<int>(w.size());
  const Vector grad = 2.0 * (q * w);
  // tangent basis: columns 2..d of a full orthonormal basis with grad first
  Eigen::HouseholderQR<Matrix> qr(grad);
  const Matrix full = qr.householderQ();
  const Matrix tangent = full.rightCols(d - 1);
  const Matrix m = tangent.transpose() * (2.0 * q) * tangent / grad.norm();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  return es.eigenvalues().minCoeff();
}

bool strong_convexity_witness(const ConstraintSet& set, double lambda,
                              const Vector& x, const Vector& y, double gamma,
                              const Vector& z) {
  require_dim(x, set.dim(), "strong_convexity_witness x");
  require_dim(y, set.dim(), "strong_convexity_witness y");
  require_dim(z, set.dim(), "strong_convexity_witness z");
  if (!contains(set, x) || !contains(set, y)) {
    throw std::invalid_argument("strong_convexity_witness: x, y must lie in the set");
  }
  if (gamma < 0.0 || gamma > 1.0) {
    throw std::invalid_argument("strong_convexity_witness: gamma must be in [0,1]");
  }
  if (std::abs(z.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("strong_convexity_witness: z must be a unit vector");
  }
  const Vector point = gamma * x + (1.0 - gamma) * y +
                       gamma * (1.0 - gamma) * (lambda / 2.0) *
                           (x - y).squaredNorm() * z;
  return contains(set, point);
}

double diameter(const ConstraintSet& set, Norm norm) {
  if (const auto* b = set.as_ball()) {
    switch (norm) {
      case Norm::L2:
        return 2.0 * b->radius;
      case Norm::L1:
        return 2.0 * b->radius * std::sqrt(static_cast<double>(b->dim));
      case Norm::Linf:
        return 2.0 * b->radius;
    }
  }
  if (const auto* e = set.as_ellipsoid()) {
    const int d = static_cast<int>(e->q.rows());
    if (norm == Norm::L2) return 2.0 / std::sqrt(e->eigvals.minCoeff());
    if (norm == Norm::Linf) {
      double best = 0.0;
      for (int i = 0; i < d; ++i) {
        Vector ei = Vector::Zero(d);
        ei[i] = 1.0;
        best = std::max(best, std::sqrt(ei.dot(solve_q(*e, ei))));
      }
      return 2.0 * best;
    }
    // l1: the set is centrally symmetric, so diam = 2 max |w|_1, and the max
    // of |w|_1 is the largest support value over sign-pattern directions.
    double best = 0.0;
    const std::uint64_t count = 1ull << (d - 1);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Vector s(d);
      s[0] = 1.0;
      for (int i = 1; i < d; ++i) s[i] = (mask >> (i - 1)) & 1 ? 1.0 : -1.0;
      best = std::max(best, std::sqrt(s.dot(solve_q(*e, s))));
    }
    return 2.0 * best;
  }
  const auto& verts = set.as_polytope()->vertices;
  double best = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      const Vector diff = verts[i] - verts[j];
      switch (norm) {
        case Norm::L1:
          best = std::max(best, diff.lpNorm<1>());
          break;
        case Norm::L2:
          best = std::max(best, diff.norm());
          break;
        case Norm::Linf:
          best = std::max(best, diff.lpNorm<Eigen::Infinity>());
          break;
      }
    }
  }
  return best;
}

bool contains(const ConstraintSet& set, const Vector& x, double tol) {
  require_dim(x, set.dim(), "contains");
  if (const auto* b = set.as_ball()) return x.norm() <= b->radius + tol;
  if (const auto* e = set.as_ellipsoid()) return x.dot(e->q * x) <= 1.0 + tol;
  return hull_distance(*set.as_polytope(), x) <= tol;
}

Vector sample_point(const ConstraintSet& set, Rng& rng) {
  if (const auto* b = set.as_ball()) {
    const double r = b->radius * std::pow(rng.uniform_open(), 1.0 / b->dim);
    return r * rng.unit_sphere(b->dim);
  }
  if (const auto* e = set.as_ellipsoid()) {
    const int d = static_cast<int>(e->q.rows());
    const double r = std::pow(rng.uniform_open(), 1.0 / d);
    return inv_sqrt_q(*e, r * rng.unit_sphere(d));
  }
  const auto& verts = set.as_polytope()->vertices;
  Vector w(verts.size());
  for (int i = 0; i < w.size(); ++i) w[i] = -std::log(rng.uniform_open());
  w /= w.sum();
  Vector out = Vector::Zero(set.dim());
  for (std::size_t i = 0; i < verts.size(); ++i) out += w[i] * verts[i];
  return out;
}

Vector sample_boundary(const ConstraintSet& set, Rng& rng) {
  if (const auto* b = set.as_ball()) return b->radius * rng.unit_sphere(b->dim);
  if (const auto* e = set.as_ellipsoid()) {
    return inv_sqrt_q(*e, rng.unit_sphere(static_cast<int>(e->q.rows())));
  }
  const auto& verts = set.as_polytope()->vertices;
  return verts[rng.uniform_int(verts.size())];
}

}  // namespace ftla
