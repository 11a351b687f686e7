#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "ftl_arena/rng.hpp"
#include "ftl_arena/types.hpp"

namespace ftla {

struct Ball {
  double radius;
  int dim;
};

struct Ellipsoid {
  Matrix q;  // symmetric positive definite; the set is {w : w'Qw <= 1}
  // spectral data cached at construction (Q = V diag(eigvals) V')
  Vector eigvals;
  Matrix eigvecs;
};

struct Polytope {
  std::vector<Vector> vertices;  // deduplicated, all the same dimension
};

// A non-empty compact convex body. Immutable after construction; every
// operation below is pure and safe to call concurrently.
class ConstraintSet {
 public:
  static ConstraintSet ball(double radius, int dim);
  static ConstraintSet ellipsoid(Matrix q);
  static ConstraintSet polytope(std::vector<Vector> vertices);

  int dim() const { return dim_; }

  const Ball* as_ball() const { return std::get_if<Ball>(&body_); }
  const Ellipsoid* as_ellipsoid() const { return std::get_if<Ellipsoid>(&body_); }
  const Polytope* as_polytope() const { return std::get_if<Polytope>(&body_); }

  std::string kind() const;

 private:
  ConstraintSet(std::variant<Ball, Ellipsoid, Polytope> body, int dim)
      : body_(std::move(body)), dim_(dim) {}

  std::variant<Ball, Ellipsoid, Polytope> body_;
  int dim_;
};

using SetPtr = std::shared_ptr<const ConstraintSet>;

struct SupportResult {
  double value;      // max over the set of <w, theta>
  Vector maximizer;  // a point attaining the max (canonical when theta = 0)
  bool unique;       // false when the maximizing face has more than one point
};

struct SubdifferentialExtent {
  std::vector<Vector> points;  // vertices of the exposed face, or the singleton
  bool entire_set = false;     // theta = 0: the subdifferential is the whole set
};

/// Support function with maximizer. Ties on polytopes resolve to the lowest
/// vertex index within tolerance 1e-10 * max(1, |theta|).
SupportResult support(const ConstraintSet& set, const Vector& theta);

SubdifferentialExtent subdifferential_extent(const ConstraintSet& set,
                                             const Vector& theta);

/// Euclidean projection onto the set. Balls are closed-form; ellipsoids use a
/// safeguarded Newton on the Lagrangian parameter (residual 1e-12); polytopes
/// are unsupported.
Vector euclidean_project(const ConstraintSet& set, const Vector& x);

/// Smallest principal curvature of the boundary; nullopt for polytopes.
std::optional<double> min_principal_curvature(const ConstraintSet& set);

/// Minimum eigenvalue of the Weingarten map of {w : w'Qw <= 1} at boundary
/// point w: min over unit v orthogonal to Qw of v'(2Q)v / |2Qw|.
double weingarten_min_eig(const Matrix& q, const Vector& w);

/// Whether gx + (1-g)y + g(1-g)(lambda/2)|x-y|^2 z stays inside the set.
/// Preconditions: x, y in the set, gamma in [0,1], |z| = 1.
bool strong_convexity_witness(const ConstraintSet& set, double lambda,
                              const Vector& x, const Vector& y, double gamma,
                              const Vector& z);

enum class Norm { L1, L2, Linf };

/// sup over pairs in the set of |w1 - w2| in the requested norm. Ellipsoid
/// l1/linf values are evaluated by exact support scans over sign patterns.
double diameter(const ConstraintSet& set, Norm norm);

bool contains(const ConstraintSet& set, const Vector& x,
              double tol = kMembershipTol);

/// Uniform-ish point inside the set (exact for balls/ellipsoids; random
/// convex combination of vertices for polytopes). Deterministic given rng.
Vector sample_point(const ConstraintSet& set, Rng& rng);

/// Random boundary point (balls/ellipsoids; a vertex for polytopes).
Vector sample_boundary(const ConstraintSet& set, Rng& rng);

}  // namespace ftla
