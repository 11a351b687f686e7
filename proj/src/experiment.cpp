#include "ftl_arena/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <thread>

#include "ftl_arena/csv.hpp"
#include "ftl_arena/svg.hpp"

namespace ftla {

namespace {

namespace fs = std::filesystem;

struct Series {
  LearnerSpec learner;
  double l_value;
  std::string id;  // e.g. "ftl" or "ftl_L0.1"
};

std::string format_l(double l) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", l);
  return buf;
}

std::vector<Series> enumerate_series(const ExperimentConfig& cfg) {
  std::vector<Series> out;
  const bool multi_l = cfg.adversary.l_values.size() > 1;
  for (const auto& learner : cfg.learners) {
    for (double l : cfg.adversary.l_values) {
      Series s{learner, l, learner.name()};
      if (multi_l) s.id += "_L" + format_l(l);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

struct AxisTransform {
  std::string suffix;
  std::string label;
  double (*fn)(double);
};

std::vector<AxisTransform> axis_conventions(const std::string& axes,
                                            const std::string& var) {
  std::vector<AxisTransform> out = {
      {"loglin", "ln(" + var + ")", [](double t) { return std::log(t); }},
      {"sqrtlin", "sqrt(" + var + ")", [](double t) { return std::sqrt(t); }},
  };
  if (axes == "linlin") {
    out.push_back({"linlin", var, [](double t) { return t; }});
  }
  return out;
}

// Per-round mean/stderr across trials plus the retained trial-0 trace.
struct SeriesRunResult {
  std::vector<double> mean_curve;
  std::vector<double> stderr_curve;
  double final_mean = 0.0;
  double final_stderr = 0.0;
  GameTrace trace0;
};

SeriesRunResult run_series(const ExperimentConfig& cfg, const Series& series,
                           int n) {
  const int trials = cfg.trials;
  std::vector<std::vector<double>> curves(trials);
  std::vector<GameTrace> trace0_slot(1);

  const double m_bound =
      make_source(cfg.adversary, series.l_value, cfg.set->dim(), 0)->norm_bound();

  const auto worker = [&](int first, int step) {
    for (int trial = first; trial < trials; trial += step) {
      auto source = make_source(cfg.adversary, series.l_value, cfg.set->dim(),
                                Rng::substream_seed(cfg.master_seed, trial));
      auto learner = make_learner(series.learner, cfg.set, n, m_bound);
      GameTrace trace = run_game(*learner, *source, cfg.set, n);
      curves[trial] = regret_curve(trace);
      if (trial == 0) trace0_slot[0] = std::move(trace);
    }
  };
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  workers = std::min(workers, trials);
  std::vector<std::future<void>> futs;
  for (int w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, worker, w, workers));
  }
  for (auto& f : futs) f.get();

  SeriesRunResult res;
  res.trace0 = std::move(trace0_slot[0]);
  res.mean_curve.resize(n);
  res.stderr_curve.resize(n);
  std::vector<double> tmp(trials), sq(trials);
  for (int t = 0; t < n; ++t) {
    for (int i = 0; i < trials; ++i) tmp[i] = curves[i][t];
    const double mean = pairwise_sum(tmp) / trials;
    double se = 0.0;
    if (trials > 1) {
      for (int i = 0; i < trials; ++i) sq[i] = (tmp[i] - mean) * (tmp[i] - mean);
      se = std::sqrt(pairwise_sum(sq) / (trials - 1) / trials);
    }
    res.mean_curve[t] = mean;
    res.stderr_curve[t] = se;
  }
  res.final_mean = res.mean_curve.back();
  res.final_stderr = res.stderr_curve.back();
  return res;
}

// Decimated point list so curve SVGs stay small; always keeps the last round.
std::vector<int> svg_rounds(int n) {
  std::vector<int> ts;
  const int stride = std::max(1, n / 400);
  for (int t = 1; t <= n; t += stride) ts.push_back(t);
  if (ts.back() != n) ts.push_back(n);
  return ts;
}

int guarded(const std::string& config_path, const RunOverrides& overrides,
            bool sweep_mode) {
  ExperimentConfig cfg;
  try {
    cfg = ExperimentConfig::from_file(config_path);
    if (!sweep_mode && !cfg.n) {
      throw ConfigError("'run' needs a config with 'n'");
    }
    if (sweep_mode && cfg.n_grid.empty()) {
      throw ConfigError("'sweep' needs a config with 'n_grid'");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  if (overrides.seed) cfg.master_seed = *overrides.seed;
  if (overrides.out_dir) cfg.outputs.csv_dir = *overrides.out_dir;
  if (overrides.no_svg) cfg.outputs.svg = false;

  try {
    const fs::path out_dir(cfg.outputs.csv_dir);
    fs::create_directories(out_dir);
    const auto series = enumerate_series(cfg);

    if (!sweep_mode) {
      const int n = *cfg.n;
      std::vector<SeriesRunResult> results;
      results.reserve(series.size());
      for (const auto& s : series) {
        std::cout << "running " << cfg.name << " series " << s.id << " (n=" << n
                  << ", trials=" << cfg.trials << ")\n";
        results.push_back(run_series(cfg, s, n));
      }

      for (std::size_t i = 0; i < series.size(); ++i) {
        auto out = open_output(out_dir / (cfg.name + "_trace_" + series[i].id + ".csv"));
        write_trace_csv(results[i].trace0, out);
      }
      {
        auto out = open_output(out_dir / (cfg.name + "_summary.csv"));
        CsvWriter csv(out);
        csv.field("experiment").field("series").field("learner").field("adversary")
            .field("L").field("n").field("trials").field("master_seed")
            .field("mean_regret").field("stderr");
        csv.end_row();
        for (std::size_t i = 0; i < series.size(); ++i) {
          csv.field(cfg.name).field(series[i].id).field(series[i].learner.name())
              .field(cfg.adversary.name()).field(series[i].l_value).field(n)
              .field(cfg.trials)
              .field(static_cast<unsigned long long>(cfg.master_seed))
              .field(results[i].final_mean).field(results[i].final_stderr);
          csv.end_row();
        }
      }
      {
        auto out = open_output(out_dir / (cfg.name + "_curves.csv"));
        CsvWriter csv(out);
        csv.field("series").field("t").field("mean_regret").field("stderr");
        csv.end_row();
        for (std::size_t i = 0; i < series.size(); ++i) {
          for (int t = 1; t <= n; ++t) {
            csv.field(series[i].id).field(t).field(results[i].mean_curve[t - 1])
                .field(results[i].stderr_curve[t - 1]);
            csv.end_row();
          }
        }
      }
      if (cfg.outputs.svg) {
        const auto rounds = svg_rounds(n);
        for (const auto& axis : axis_conventions(cfg.outputs.axes, "t")) {
          SvgChart chart;
          chart.title = cfg.name + " (regret vs " + axis.label + ")";
          chart.x_label = axis.label;
          chart.y_label = "regret";
          for (std::size_t i = 0; i < series.size(); ++i) {
            SvgSeries s;
            s.label = series[i].id;
            for (int t : rounds) {
              s.x.push_back(axis.fn(t));
              s.y.push_back(results[i].mean_curve[t - 1]);
              s.band.push_back(results[i].stderr_curve[t - 1]);
            }
            chart.series.push_back(std::move(s));
          }
          auto out = open_output(out_dir / (cfg.name + "_" + axis.suffix + ".svg"));
          chart.render(out);
        }
      }
      std::cout << "wrote outputs to " << out_dir.string() << "\n";
      return 0;
    }

    // sweep mode
    std::vector<std::vector<McRow>> tables;
    for (const auto& s : series) {
      std::cout << "sweeping " << cfg.name << " series " << s.id << " over "
                << cfg.n_grid.size() << " horizons\n";
      const double m_bound =
          make_source(cfg.adversary, s.l_value, cfg.set->dim(), 0)->norm_bound();
      const LearnerFactory lf = [&](int horizon) {
        return make_learner(s.learner, cfg.set, horizon, m_bound);
      };
      const SourceFactory sf = [&](std::uint64_t seed) {
        return make_source(cfg.adversary, s.l_value, cfg.set->dim(), seed);
      };
      if (cfg.trials >= 2) {
        tables.push_back(monte_carlo_regret(lf, sf, cfg.set, cfg.n_grid,
                                            cfg.trials, cfg.master_seed));
      } else {
        // deterministic source, single trial
        std::vector<McRow> table;
        for (std::size_t gi = 0; gi < cfg.n_grid.size(); ++gi) {
          const int n = cfg.n_grid[gi];
          auto source = sf(Rng::substream_seed(cfg.master_seed, gi));
          auto learner = lf(n);
          table.push_back(
              McRow{n, regret_definition(run_game(*learner, *source, cfg.set, n)),
                    0.0});
        }
        tables.push_back(std::move(table));
      }
    }

    {
      auto out = open_output(out_dir / (cfg.name + "_mc.csv"));
      CsvWriter csv(out);
      csv.field("experiment").field("series").field("learner").field("adversary")
          .field("L").field("n").field("trials").field("master_seed")
          .field("mean_regret").field("stderr");
      csv.end_row();
      for (std::size_t i = 0; i < series.size(); ++i) {
        for (const auto& row : tables[i]) {
          csv.field(cfg.name).field(series[i].id).field(series[i].learner.name())
              .field(cfg.adversary.name()).field(series[i].l_value).field(row.n)
              .field(cfg.trials)
              .field(static_cast<unsigned long long>(cfg.master_seed))
              .field(row.mean).field(row.std_error);
          csv.end_row();
        }
      }
    }
    {
      auto out = open_output(out_dir / (cfg.name + "_fit.csv"));
      CsvWriter csv(out);
      csv.field("series").field("model").field("intercept").field("slope")
          .field("r2").field("preferred");
      csv.end_row();
      for (std::size_t i = 0; i < series.size(); ++i) {
        if (tables[i].size() < 4) {
          std::cout << "series " << series[i].id
                    << ": grid too short for a growth fit (need >= 4 points); "
                       "tables were still written\n";
          continue;
        }
        const GrowthFitReport fit = ftrl_stochastic_log_check(tables[i]);
        csv.field(series[i].id).field("log").field(fit.log_model.intercept)
            .field(fit.log_model.slope).field(fit.log_model.r2)
            .field(fit.log_preferred ? "yes" : "no");
        csv.end_row();
        csv.field(series[i].id).field("sqrt").field(fit.sqrt_model.intercept)
            .field(fit.sqrt_model.slope).field(fit.sqrt_model.r2)
            .field(fit.log_preferred ? "no" : "yes");
        csv.end_row();
        std::cout << "series " << series[i].id << ": log R2=" << fit.log_model.r2
                  << " sqrt R2=" << fit.sqrt_model.r2 << " -> "
                  << (fit.log_preferred ? "log" : "sqrt") << " growth\n";
      }
    }
    if (cfg.outputs.svg) {
      for (const auto& axis : axis_conventions(cfg.outputs.axes, "n")) {
        SvgChart chart;
        chart.title = cfg.name + " (mean regret vs " + axis.label + ")";
        chart.x_label = axis.label;
        chart.y_label = "mean regret";
        for (std::size_t i = 0; i < series.size(); ++i) {
          SvgSeries s;
          s.label = series[i].id;
          for (const auto& row : tables[i]) {
            s.x.push_back(axis.fn(row.n));
            s.y.push_back(row.mean);
            s.band.push_back(row.std_error);
          }
          chart.series.push_back(std::move(s));
        }
        auto out = open_output(out_dir / (cfg.name + "_" + axis.suffix + ".svg"));
        chart.render(out);
      }
    }
    std::cout << "wrote outputs to " << out_dir.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int cmd_run(const std::string& config_path, const RunOverrides& overrides) {
  return guarded(config_path, overrides, /*sweep_mode=*/false);
}

int cmd_sweep(const std::string& config_path, const RunOverrides& overrides) {
  return guarded(config_path, overrides, /*sweep_mode=*/true);
}

}  // namespace ftla
