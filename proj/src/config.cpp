#include "ftl_arena/config.hpp"

#include <fstream>

#include "json.hpp"

namespace ftla {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key '" + key + "' in " + context);
    }
  }
}

Vector parse_vector(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(context + " must be a non-empty array of numbers");
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(context + " must contain numbers");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  require_finite(v, context.c_str());
  return v;
}

SetPtr parse_set(const json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError("'set' must be an object with exactly one variant key");
  }
  if (j.contains("ball")) {
    const json& b = j["ball"];
    check_keys(b, "set.ball", {"radius", "dim"});
    if (!b.contains("radius") || !b.contains("dim")) {
      throw ConfigError("set.ball needs 'radius' and 'dim'");
    }
    return std::make_shared<ConstraintSet>(
        ConstraintSet::ball(b["radius"].get<double>(), b["dim"].get<int>()));
  }
  if (j.contains("ellipsoid")) {
    const json& e = j["ellipsoid"];
    check_keys(e, "set.ellipsoid", {"q"});
    if (!e.contains("q") || !e["q"].is_array() || e["q"].empty()) {
      throw ConfigError("set.ellipsoid needs a row-major matrix 'q'");
    }
    const int d = static_cast<int>(e["q"].size());
    Matrix q(d, d);
    for (int r = 0; r < d; ++r) {
      const json& row = e["q"][r];
      if (!row.is_array() || static_cast<int>(row.size()) != d) {
        throw ConfigError("set.ellipsoid.q must be square");
      }
      for (int c = 0; c < d; ++c) q(r, c) = row[c].get<double>();
    }
    return std::make_shared<ConstraintSet>(ConstraintSet::ellipsoid(std::move(q)));
  }
  if (j.contains("polytope")) {
    const json& p = j["polytope"];
    check_keys(p, "set.polytope", {"vertices"});
    if (!p.contains("vertices") || !p["vertices"].is_array() || p["vertices"].empty()) {
      throw ConfigError("set.polytope needs a 'vertices' list");
    }
    std::vector<Vector> verts;
    for (const auto& v : p["vertices"]) {
      verts.push_back(parse_vector(v, "polytope vertex"));
    }
    return std::make_shared<ConstraintSet>(ConstraintSet::polytope(std::move(verts)));
  }
  throw ConfigError("unknown key '" + j.items().begin().key() +
                    "' in set (expected ball, ellipsoid, or polytope)");
}

LearnerSpec parse_learner(const json& j) {
  if (!j.is_object() || !j.contains("learner")) {
    throw ConfigError("each learners[] entry needs a 'learner' key");
  }
  check_keys(j, "learners[]", {"learner", "params"});
  const std::string kind = j["learner"].get<std::string>();
  LearnerSpec spec;
  const json params = j.value("params", json::object());
  if (kind == "ftl") {
    spec.kind = LearnerKind::Ftl;
    check_keys(params, "ftl params", {"w1"});
    if (params.contains("w1")) spec.w1 = parse_vector(params["w1"], "ftl w1");
  } else if (kind == "ftrl") {
    spec.kind = LearnerKind::Ftrl;
    check_keys(params, "ftrl params", {});
  } else if (kind == "ftsl") {
    spec.kind = LearnerKind::Ftsl;
    check_keys(params, "ftsl params", {});
  } else if (kind == "abprod") {
    spec.kind = LearnerKind::AbProd;
    check_keys(params, "abprod params", {"beta", "eta", "scale", "m_bound"});
    if (params.contains("beta")) spec.beta = params["beta"].get<double>();
    if (params.contains("eta")) spec.eta = params["eta"].get<double>();
    if (params.contains("scale")) spec.scale = params["scale"].get<double>();
    if (params.contains("m_bound")) spec.m_bound = params["m_bound"].get<double>();
  } else {
    throw ConfigError("unknown learner '" + kind + "'");
  }
  return spec;
}

AdversarySpec parse_adversary(const json& j) {
  if (!j.is_object() || !j.contains("adversary")) {
    throw ConfigError("'adversary' needs an 'adversary' kind key");
  }
  check_keys(j, "adversary", {"adversary", "params"});
  const std::string kind = j["adversary"].get<std::string>();
  const json params = j.value("params", json::object());
  AdversarySpec spec;

  const auto parse_l = [&](double fallback) {
    if (!params.contains("L")) {
      spec.l_values = {fallback};
    } else if (params["L"].is_array()) {
      for (const auto& l : params["L"]) spec.l_values.push_back(l.get<double>());
      if (spec.l_values.empty()) throw ConfigError("adversary params.L is empty");
    } else {
      spec.l_values = {params["L"].get<double>()};
    }
  };

  if (kind == "stochastic") {
    spec.kind = AdversaryKind::Stochastic;
    check_keys(params, "stochastic params", {"L", "clip_mode", "sigma", "seed"});
    parse_l(0.0);
    if (params.contains("clip_mode")) {
      const std::string mode = params["clip_mode"].get<std::string>();
      if (mode == "normalize_always") {
        spec.clip_mode = ClipMode::NormalizeAlways;
      } else if (mode == "normalize_if_outside") {
        spec.clip_mode = ClipMode::NormalizeIfOutside;
      } else {
        throw ConfigError("unknown clip_mode '" + mode + "'");
      }
    }
    if (params.contains("sigma")) spec.sigma = params["sigma"].get<double>();
  } else if (kind == "half_adversarial") {
    spec.kind = AdversaryKind::HalfAdversarial;
    check_keys(params, "half_adversarial params", {"L", "seed"});
    parse_l(0.0);
  } else if (kind == "worst_case") {
    spec.kind = AdversaryKind::WorstCase;
    check_keys(params, "worst_case params", {"seed"});
    spec.l_values = {0.0};
  } else if (kind == "beta_bernoulli") {
    spec.kind = AdversaryKind::BetaBernoulli;
    check_keys(params, "beta_bernoulli params", {"L", "K", "seed"});
    parse_l(0.5);
    if (params.contains("K")) spec.k = params["K"].get<double>();
  } else {
    throw ConfigError("unknown adversary '" + kind + "'");
  }
  if (params.contains("seed")) spec.seed = params["seed"].get<std::uint64_t>();
  return spec;
}

bool filesystem_safe(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::string LearnerSpec::name() const {
  switch (kind) {
    case LearnerKind::Ftl: return "ftl";
    case LearnerKind::Ftrl: return "ftrl";
    case LearnerKind::Ftsl: return "ftsl";
    case LearnerKind::AbProd: return "abprod";
  }
  return "?";
}

std::string AdversarySpec::name() const {
  switch (kind) {
    case AdversaryKind::Stochastic: return "stochastic";
    case AdversaryKind::HalfAdversarial: return "half_adversarial";
    case AdversaryKind::WorstCase: return "worst_case";
    case AdversaryKind::BetaBernoulli: return "beta_bernoulli";
  }
  return "?";
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"name", "set", "learners", "adversary", "n", "n_grid", "trials",
              "master_seed", "outputs"});
  for (const char* key : {"name", "set", "learners", "adversary"}) {
    if (!j.contains(key)) {
      throw ConfigError(std::string("config is missing required key '") + key + "'");
    }
  }

  ExperimentConfig cfg;
  cfg.name = j["name"].get<std::string>();
  if (!filesystem_safe(cfg.name)) {
    throw ConfigError("config 'name' must be non-empty and filesystem-safe");
  }
  cfg.set = parse_set(j["set"]);
  if (!j["learners"].is_array() || j["learners"].empty()) {
    throw ConfigError("'learners' must be a non-empty list");
  }
  for (const auto& l : j["learners"]) cfg.learners.push_back(parse_learner(l));
  cfg.adversary = parse_adversary(j["adversary"]);

  if (j.contains("n")) {
    cfg.n = j["n"].get<int>();
    if (*cfg.n < 1) throw ConfigError("'n' must be >= 1");
  }
  if (j.contains("n_grid")) {
    for (const auto& n : j["n_grid"]) {
      const int v = n.get<int>();
      if (v < 1) throw ConfigError("'n_grid' entries must be >= 1");
      cfg.n_grid.push_back(v);
    }
    if (cfg.n_grid.empty()) throw ConfigError("'n_grid' must be non-empty");
  }
  if (!cfg.n && cfg.n_grid.empty()) {
    throw ConfigError("config needs 'n' (run) or 'n_grid' (sweep)");
  }

  cfg.trials = j.value("trials", 1);
  if (cfg.trials < 1) throw ConfigError("'trials' must be >= 1");
  cfg.master_seed = j.value("master_seed", std::uint64_t{0});

  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    check_keys(o, "outputs", {"csv_dir", "svg", "axes"});
    cfg.outputs.csv_dir = o.value("csv_dir", cfg.outputs.csv_dir);
    cfg.outputs.svg = o.value("svg", cfg.outputs.svg);
    cfg.outputs.axes = o.value("axes", cfg.outputs.axes);
    if (cfg.outputs.axes != "loglin" && cfg.outputs.axes != "sqrtlin" &&
        cfg.outputs.axes != "linlin") {
      throw ConfigError("outputs.axes must be loglin, sqrtlin, or linlin");
    }
  }
  return cfg;
}

std::unique_ptr<LossSource> make_source(const AdversarySpec& spec, double L,
                                        int dim, std::uint64_t seed) {
  const std::uint64_t s = spec.seed.value_or(seed);
  switch (spec.kind) {
    case AdversaryKind::Stochastic:
      return std::make_unique<StochasticSource>(dim, L, spec.clip_mode, s,
                                                spec.sigma);
    case AdversaryKind::HalfAdversarial:
      return std::make_unique<HalfAdversarialSource>(dim, L, s);
    case AdversaryKind::WorstCase:
      return std::make_unique<WorstCaseSource>(dim);
    case AdversaryKind::BetaBernoulli:
      if (dim != 2) {
        throw ConfigError("beta_bernoulli requires a 2-dimensional set");
      }
      return std::make_unique<BetaBernoulliSource>(spec.k, L, s);
  }
  throw ConfigError("unreachable adversary kind");
}

std::unique_ptr<Learner> make_learner(const LearnerSpec& spec, SetPtr set,
                                      int horizon, double m_bound) {
  switch (spec.kind) {
    case LearnerKind::Ftl:
      return std::make_unique<FtlLearner>(std::move(set), spec.w1, m_bound);
    case LearnerKind::Ftrl:
      return std::make_unique<FtrlLearner>(std::move(set), m_bound);
    case LearnerKind::Ftsl:
      return std::make_unique<FtslLearner>(std::move(set), horizon, m_bound);
    case LearnerKind::AbProd: {
      AbProdLearner::Params params;
      if (spec.beta) params.beta = *spec.beta;
      params.eta = spec.eta;
      params.scale = spec.scale;
      params.m_bound = spec.m_bound.value_or(m_bound);
      return AbProdLearner::ftl_ftrl(std::move(set), horizon, params);
    }
  }
  throw ConfigError("unreachable learner kind");
}

}  // namespace ftla
