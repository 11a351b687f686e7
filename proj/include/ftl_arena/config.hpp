#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftl_arena/bounds.hpp"
#include "ftl_arena/geometry.hpp"

namespace ftla {

enum class LearnerKind { Ftl, Ftrl, Ftsl, AbProd };
enum class AdversaryKind { Stochastic, HalfAdversarial, WorstCase, BetaBernoulli };

struct LearnerSpec {
  LearnerKind kind;
  std::optional<Vector> w1;          // ftl
  std::optional<double> beta;        // abprod
  std::optional<double> eta;         // abprod
  std::optional<double> scale;       // abprod
  std::optional<double> m_bound;     // abprod

  std::string name() const;
};

struct AdversarySpec {
  AdversaryKind kind;
  std::vector<double> l_values;          // >1 entry runs each variant
  ClipMode clip_mode = ClipMode::NormalizeAlways;
  std::optional<double> sigma;
  double k = 1.0;                        // beta_bernoulli prior
  std::optional<std::uint64_t> seed;     // overrides the master seed stream

  std::string name() const;
};

struct OutputOptions {
  std::string csv_dir = "out";
  bool svg = true;
  std::string axes = "loglin";  // loglin | sqrtlin | linlin
};

// Declarative experiment description. Parsing is strict: unknown keys are
// rejected with a message naming the offending key.
struct ExperimentConfig {
  std::string name;
  SetPtr set;
  std::vector<LearnerSpec> learners;
  AdversarySpec adversary;
  std::optional<int> n;                // run mode
  std::vector<int> n_grid;             // sweep mode
  int trials = 1;
  std::uint64_t master_seed = 0;
  OutputOptions outputs;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
};

/// Source for one (spec, L) variant. The stream seed is the adversary's seed
/// override when present, else `seed`.
std::unique_ptr<LossSource> make_source(const AdversarySpec& spec, double L,
                                        int dim, std::uint64_t seed);

/// Learner for a given horizon; `m_bound` backs the abprod default scale.
std::unique_ptr<Learner> make_learner(const LearnerSpec& spec, SetPtr set,
                                      int horizon, double m_bound);

}  // namespace ftla
