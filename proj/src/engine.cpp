#include "ftl_arena/engine.hpp"

#include <cmath>
#include <ostream>

#include "ftl_arena/csv.hpp"

namespace ftla {

namespace {

constexpr double kSwitchTol = 1e-9;

void require_ftl_trace(const GameTrace& trace, const char* op) {
  if (!trace.w_next_final) {
    throw std::invalid_argument(std::string(op) +
                                ": trace lacks the round-(n+1) leader (FTL traces only)");
  }
}

// Extremes of <v, theta_next> over the subdifferential at theta. The face of
// a polytope is spanned by its vertices; theta = 0 exposes the whole set.
void face_extremes(const ConstraintSet& set, const Vector& theta,
                   const Vector& theta_next, double* lo, double* hi) {
  const SubdifferentialExtent ext = subdifferential_extent(set, theta);
  if (ext.entire_set) {
    *hi = support(set, theta_next).value;
    *lo = -support(set, -theta_next).value;
    return;
  }
  *lo = std::numeric_limits<double>::infinity();
  *hi = -std::numeric_limits<double>::infinity();
  for (const auto& v : ext.points) {
    const double val = v.dot(theta_next);
    *lo = std::min(*lo, val);
    *hi = std::max(*hi, val);
  }
}

}  // namespace

GameTrace run_game(Learner& learner, LossSource& source, SetPtr set, int n,
                   bool diagnostics) {
  if (n < 1) throw std::invalid_argument("run_game: n must be >= 1");
  if (source.dim() != set->dim()) {
    throw DimensionMismatch("run_game: source and set dimensions differ");
  }
  if (learner.round() != 1) {
    throw std::invalid_argument("run_game: learner must start at round 1");
  }
  GameTrace trace;
  trace.n = n;
  trace.set = set;
  trace.learner_name = learner.name();
  trace.rounds.reserve(n);
  Vector loss_sum = Vector::Zero(set->dim());
  for (int t = 1; t <= n; ++t) {
    Vector w = learner.predict();
    Vector f = source.next(t);
    require_dim(f, set->dim(), "run_game loss");
    const double loss = f.dot(w);
    loss_sum += f;
    Vector theta = -loss_sum / t;
    if (diagnostics) {
      require_finite(w, "run_game prediction");
      require_finite(f, "run_game loss");
      if (!contains(*set, w)) {
        throw std::runtime_error("run_game: prediction left the set at round " +
                                 std::to_string(t));
      }
    }
    trace.rounds.push_back(Round{t, std::move(w), std::move(f), loss, std::move(theta)});
    learner.observe(trace.rounds.back().f);
  }
  if (dynamic_cast<FtlLearner*>(&learner) != nullptr) {
    trace.w_next_final = learner.predict();
  }
  return trace;
}

double regret_definition(const GameTrace& trace) {
  double cum = 0.0;
  for (const auto& r : trace.rounds) cum += r.loss;
  const Vector f_sum = trace.final_loss_sum();
  return cum + support(*trace.set, -f_sum).value;
}

std::vector<double> regret_curve(const GameTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.rounds.size());
  double cum = 0.0;
  Vector f_sum = Vector::Zero(trace.set->dim());
  for (const auto& r : trace.rounds) {
    cum += r.loss;
    f_sum += r.f;
    out.push_back(cum + support(*trace.set, -f_sum).value);
  }
  return out;
}

double regret_abel(const GameTrace& trace) {
  require_ftl_trace(trace, "regret_abel");
  double sum = 0.0;
  for (int t = 1; t <= trace.n; ++t) {
    const Vector& w_t = trace.rounds[t - 1].w;
    const Vector& w_next =
        (t < trace.n) ? trace.rounds[t].w : *trace.w_next_final;
    sum += t * (w_next - w_t).dot(trace.theta_at(t));
  }
  return sum;
}

BregmanRegret regret_bregman(const GameTrace& trace) {
  double lower = 0.0, upper = 0.0;
  for (int t = 1; t <= trace.n; ++t) {
    const Vector& theta = trace.theta_at(t);
    const double phi = support(*trace.set, theta).value;
    double inner_lo, inner_hi;
    if (t == 1) {
      // Theta_0 = 0 with grad(0) := w_1
      const double v = trace.rounds[0].w.dot(theta);
      inner_lo = inner_hi = v;
    } else {
      face_extremes(*trace.set, trace.theta_at(t - 1), theta, &inner_lo, &inner_hi);
    }
    lower += t * (phi - inner_hi);
    upper += t * (phi - inner_lo);
  }
  return BregmanRegret{lower, upper};
}

int switch_count(const GameTrace& trace) {
  require_ftl_trace(trace, "switch_count");
  int count = 0;
  for (int t = 1; t <= trace.n; ++t) {
    const Vector& w_t = trace.rounds[t - 1].w;
    const Vector& w_next =
        (t < trace.n) ? trace.rounds[t].w : *trace.w_next_final;
    if ((w_next - w_t).norm() > kSwitchTol) ++count;
  }
  return count;
}

bool theta_increment_check(const GameTrace& trace, double M) {
  for (int t = 2; t <= trace.n; ++t) {
    const double inc = (trace.theta_at(t) - trace.theta_at(t - 1)).norm();
    if (inc > 2.0 * M / t + 1e-12) return false;
  }
  return true;
}

double min_theta_norm(const GameTrace& trace) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : trace.rounds) best = std::min(best, r.theta.norm());
  return best;
}

void write_trace_csv(const GameTrace& trace, std::ostream& out) {
  const int d = trace.set->dim();
  CsvWriter csv(out);
  csv.field("t");
  for (int i = 1; i <= d; ++i) csv.field("w_" + std::to_string(i));
  for (int i = 1; i <= d; ++i) csv.field("f_" + std::to_string(i));
  csv.field("loss").field("cum_loss").field("theta_norm").field("regret_to_date");
  csv.end_row();

  double cum = 0.0;
  Vector f_sum = Vector::Zero(d);
  for (const auto& r : trace.rounds) {
    cum += r.loss;
    f_sum += r.f;
    csv.field(r.t);
    for (int i = 0; i < d; ++i) csv.field(r.w[i]);
    for (int i = 0; i < d; ++i) csv.field(r.f[i]);
    csv.field(r.loss).field(cum).field(r.theta.norm());
    csv.field(cum + support(*trace.set, -f_sum).value);
    csv.end_row();
  }
}

}  // namespace ftla
