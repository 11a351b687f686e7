#pragma once

#include <functional>
#include <map>
#include <span>

#include "ftl_arena/engine.hpp"

namespace ftla {

struct BoundReport {
  std::string bound_name;
  double bound_value;
  double realized_regret;
  bool satisfied;  // realized <= bound + 1e-9
  std::map<std::string, double> params;

  static BoundReport make(std::string name, double bound, double realized,
                          std::map<std::string, double> params = {}) {
    return BoundReport{std::move(name), bound, realized,
                       realized <= bound + 1e-9, std::move(params)};
  }
};

/// 2 M^2 (1 + ln n) / (lambda0 L_n).
double curvature_bound(double M, double lambda0, double L_n, double n);

/// The data-dependent form at a given cutoff L:
/// 2M^2(1+ln n)/(lambda0 L) + L W sum_t t [|Theta_t| <= L].
double mixed_curvature_bound_at(const GameTrace& trace, double M,
                                double lambda0, double W, double L);

struct MixedCurvatureBound {
  double at_l;
  double grid_infimum;
  double grid_argmin_l;
};

/// As above, plus the infimum over a 64-point log grid L in [1e-4 M, M].
MixedCurvatureBound mixed_curvature_bound(const GameTrace& trace, double M,
                                          double lambda0, double W, double L);

struct PolytopeSwitchBound {
  double tight;  // W* sum_t t [switch] |Theta_t - Theta_{t-1}|_1
  double loose;  // F W* sum_t [switch]
};

/// Switch-counting bounds for FTL on a polytope, norm pair (l1, linf):
/// theta increments in l1, the diameter W_dual in linf.
PolytopeSwitchBound polytope_switch_bound(const GameTrace& trace, double W_dual,
                                          double F_range);

/// 2 M W (1 + 4 d M^2 / r^2); horizon-free expected-regret bound.
double stochastic_polytope_bound(double M, double W_l1, int d, double r);

/// Coefficient of ln n in the lower bound: (1/(84 sqrt 2)) (1/(hL) - 1),
/// clamped to 0 once hL >= 1.
double lower_bound_rate(double h, double L);

struct McRow {
  int n;
  double mean;
  double std_error;
};

using LearnerFactory = std::function<std::unique_ptr<Learner>(int horizon)>;
using SourceFactory = std::function<std::unique_ptr<LossSource>(std::uint64_t seed)>;

/// Mean and standard error of the realized regret for every n in the grid.
/// Trial substreams derive from (master_seed, global trial index); trials run
/// concurrently but aggregate in index order (pairwise summation), so the
/// table is deterministic.
std::vector<McRow> monte_carlo_regret(const LearnerFactory& learner_factory,
                                      const SourceFactory& source_factory,
                                      SetPtr set, const std::vector<int>& n_grid,
                                      int trials, std::uint64_t master_seed,
                                      int threads = 0);

struct ModelFit {
  double intercept;
  double slope;
  double r2;
};

struct GrowthFitReport {
  ModelFit log_model;   // mean ~ a + b ln n
  ModelFit sqrt_model;  // mean ~ a + b sqrt n
  bool log_preferred;   // log R^2 beats sqrt R^2
};

/// Least-squares comparison of logarithmic vs square-root growth; needs at
/// least 4 grid points.
GrowthFitReport ftrl_stochastic_log_check(const std::vector<McRow>& table);

/// Order-insensitive pairwise summation.
double pairwise_sum(std::span<const double> xs);

}  // namespace ftla
