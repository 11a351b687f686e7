#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ftl_arena/adversaries.hpp"
#include "ftl_arena/geometry.hpp"
#include "ftl_arena/learners.hpp"

namespace ftla {

struct Round {
  int t;
  Vector w;
  Vector f;
  double loss;   // <f, w>
  Vector theta;  // -(1/t) sum_{i<=t} f_i
};

// Full per-round record of one learner-vs-source game. Immutable once built;
// every regret variant below derives from it.
struct GameTrace {
  int n = 0;
  std::vector<Round> rounds;
  std::optional<Vector> w_next_final;  // leader for round n+1 (FTL traces)
  SetPtr set;
  std::string learner_name;

  const Vector& theta_at(int t) const { return rounds.at(t - 1).theta; }

  Vector final_loss_sum() const {
    return rounds.empty() ? Vector()
                          : Vector(-n * rounds.back().theta);
  }
};

/// Plays n rounds of predict / reveal / observe. FTL traces also record the
/// round-(n+1) leader. Deterministic given the source seed.
GameTrace run_game(Learner& learner, LossSource& source, SetPtr set, int n,
                   bool diagnostics = false);

/// sum_t <f_t, w_t> - min_w <w, F_n>, the defining regret.
double regret_definition(const GameTrace& trace);

/// Per-round prefix regrets R_1..R_n (each by the definition above).
std::vector<double> regret_curve(const GameTrace& trace);

/// Summation-by-parts form sum_t t <w_{t+1} - w_t, Theta_t>; FTL traces only.
double regret_abel(const GameTrace& trace);

struct BregmanRegret {
  double lower;
  double upper;
};

/// sum_t t D(Theta_t, Theta_{t-1}) through the support function, with the
/// round-one convention grad(0) := w_1. Lower and upper coincide whenever
/// every leader is unique; on tied rounds they bracket the regret.
BregmanRegret regret_bregman(const GameTrace& trace);

/// Rounds t with |w_{t+1} - w_t| > 1e-9; FTL traces only.
int switch_count(const GameTrace& trace);

/// Whether |Theta_t - Theta_{t-1}| <= 2M/t holds for every t >= 2.
bool theta_increment_check(const GameTrace& trace, double M);

/// Smallest |Theta_t| over the trace (the realized L_n).
double min_theta_norm(const GameTrace& trace);

/// Columns: t, w_1..w_d, f_1..f_d, loss, cum_loss, theta_norm, regret_to_date.
void write_trace_csv(const GameTrace& trace, std::ostream& out);

}  // namespace ftla
