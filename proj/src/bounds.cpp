#include "ftl_arena/bounds.hpp"

#include <cmath>
#include <future>
#include <thread>

namespace ftla {

double curvature_bound(double M, double lambda0, double L_n, double n) {
  if (!(M > 0.0 && lambda0 > 0.0 && L_n > 0.0 && n >= 1.0)) {
    throw std::invalid_argument("curvature_bound: parameters must be positive");
  }
  return 2.0 * M * M * (1.0 + std::log(n)) / (lambda0 * L_n);
}

double mixed_curvature_bound_at(const GameTrace& trace, double M,
                                double lambda0, double W, double L) {
  double indicator_sum = 0.0;
  for (const auto& r : trace.rounds) {
    if (r.theta.norm() <= L) indicator_sum += r.t;
  }
  return curvature_bound(M, lambda0, L, trace.n) + L * W * indicator_sum;
}

MixedCurvatureBound mixed_curvature_bound(const GameTrace& trace, double M,
                                          double lambda0, double W, double L) {
  MixedCurvatureBound out;
  out.at_l = mixed_curvature_bound_at(trace, M, lambda0, W, L);
  out.grid_infimum = std::numeric_limits<double>::infinity();
  out.grid_argmin_l = 0.0;
  const double lo = std::log(1e-4 * M);
  const double hi = std::log(M);
  for (int i = 0; i < 64; ++i) {
    const double l = std::exp(lo + (hi - lo) * i / 63.0);
    const double v = mixed_curvature_bound_at(trace, M, lambda0, W, l);
    if (v < out.grid_infimum) {
      out.grid_infimum = v;
      out.grid_argmin_l = l;
    }
  }
  return out;
}

PolytopeSwitchBound polytope_switch_bound(const GameTrace& trace, double W_dual,
                                          double F_range) {
  if (trace.set->as_polytope() == nullptr) {
    throw std::invalid_argument("polytope_switch_bound: polytope traces only");
  }
  if (!trace.w_next_final) {
    throw std::invalid_argument("polytope_switch_bound: FTL traces only");
  }
  double tight = 0.0;
  int switches = 0;
  for (int t = 1; t <= trace.n; ++t) {
    const Vector& w_t = trace.rounds[t - 1].w;
    const Vector& w_next =
        (t < trace.n) ? trace.rounds[t].w : *trace.w_next_final;
    if ((w_next - w_t).norm() <= 1e-9) continue;
    ++switches;
    const Vector prev_theta =
        (t >= 2) ? trace.theta_at(t - 1) : Vector(Vector::Zero(trace.set->dim()));
    tight += t * (trace.theta_at(t) - prev_theta).lpNorm<1>();
  }
  return PolytopeSwitchBound{W_dual * tight, F_range * W_dual * switches};
}

double stochastic_polytope_bound(double M, double W_l1, int d, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("stochastic_polytope_bound: r > 0");
  return 2.0 * M * W_l1 * (1.0 + 4.0 * d * M * M / (r * r));
}

double lower_bound_rate(double h, double L) {
  const double hl = h * L;
  if (!(hl > 0.0)) throw std::invalid_argument("lower_bound_rate: hL > 0");
  if (hl >= 1.0) return 0.0;
  return (1.0 / (84.0 * std::sqrt(2.0))) * (1.0 / hl - 1.0);
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

std::vector<McRow> monte_carlo_regret(const LearnerFactory& learner_factory,
                                      const SourceFactory& source_factory,
                                      SetPtr set, const std::vector<int>& n_grid,
                                      int trials, std::uint64_t master_seed,
                                      int threads) {
  if (trials < 2) throw std::invalid_argument("monte_carlo_regret: trials >= 2");
  if (n_grid.empty()) throw std::invalid_argument("monte_carlo_regret: empty grid");
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  std::vector<McRow> table;
  table.reserve(n_grid.size());
  for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
    const int n = n_grid[gi];
    std::vector<double> regrets(trials);
    const auto worker = [&](int first, int step) {
      for (int trial = first; trial < trials; trial += step) {
        const std::uint64_t stream = gi * static_cast<std::uint64_t>(trials) + trial;
        auto source = source_factory(Rng::substream_seed(master_seed, stream));
        auto learner = learner_factory(n);
        const GameTrace trace = run_game(*learner, *source, set, n);
        regrets[trial] = regret_definition(trace);
      }
    };
    const int workers = std::min(threads, trials);
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      futs.push_back(std::async(std::launch::async, worker, w, workers));
    }
    for (auto& f : futs) f.get();

    const double mean = pairwise_sum(regrets) / trials;
    std::vector<double> sq(trials);
    for (int i = 0; i < trials; ++i) {
      sq[i] = (regrets[i] - mean) * (regrets[i] - mean);
    }
    const double var = pairwise_sum(sq) / (trials - 1);
    table.push_back(McRow{n, mean, std::sqrt(var / trials)});
  }
  return table;
}

namespace {

ModelFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double ssr = 0, sst = 0;
  const double ymean = sy / n;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = intercept + slope * xs[i];
    ssr += (ys[i] - pred) * (ys[i] - pred);
    sst += (ys[i] - ymean) * (ys[i] - ymean);
  }
  return ModelFit{intercept, slope, sst > 0 ? 1.0 - ssr / sst : 1.0};
}

}  // namespace

GrowthFitReport ftrl_stochastic_log_check(const std::vector<McRow>& table) {
  if (table.size() < 4) {
    throw std::invalid_argument(
        "ftrl_stochastic_log_check: need at least 4 grid points");
  }
  std::vector<double> lx, sx, y;
  for (const auto& row : table) {
    lx.push_back(std::log(static_cast<double>(row.n)));
    sx.push_back(std::sqrt(static_cast<double>(row.n)));
    y.push_back(row.mean);
  }
  GrowthFitReport report;
  report.log_model = fit_line(lx, y);
  report.sqrt_model = fit_line(sx, y);
  report.log_preferred = report.log_model.r2 > report.sqrt_model.r2;
  return report;
}

}  // namespace ftla
