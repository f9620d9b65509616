#include "rsopt/config.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace rsopt {

using nlohmann::json;

int ProblemConfig::num_states() const {
  return type == Type::kPoisson ? states
                                : (means.empty() ? 0 : static_cast<int>(means[0].size()));
}

int ProblemConfig::num_regimes() const {
  return type == Type::kPoisson ? static_cast<int>(lambda.size())
                                : static_cast<int>(means.size());
}

std::unique_ptr<ObjectiveModel> ProblemConfig::make() const {
  if (type == Type::kPoisson)
    return std::make_unique<PoissonOrderSize>(lambda, states);
  return std::make_unique<CorrelatedNoiseObjective>(means, phi, sigma_w);
}

int HypermodelConfig::scripted_regime(long n) const {
  for (const ScriptSegment& seg : script)
    if (seg.until < 0 || n < seg.until) return seg.regime;
  return script.back().regime;
}

std::unique_ptr<Sampler> AlgorithmConfig::make(int num_states) const {
  switch (name) {
    case Name::kAdaptiveSearch:
      if (mode == Mode::kConstant)
        return std::make_unique<AdaptiveSearch>(
            AdaptiveSearch::constant_step(num_states, mu, gamma));
      return std::make_unique<AdaptiveSearch>(
          AdaptiveSearch::decreasing_step_fixed_gamma(num_states, alpha,
                                                      fixed_gamma));
    case Name::kRandomSearch:
      if (mode == Mode::kAdaptive)
        return std::make_unique<RandomSearch>(
            RandomSearch::adaptive_mode(num_states, mu));
      return std::make_unique<RandomSearch>(RandomSearch::static_mode(num_states));
    case Name::kUcb:
      if (mode == Mode::kAdaptive)
        return std::make_unique<UpperConfidenceBound>(
            UpperConfidenceBound::adaptive_mode(num_states, mu));
      return std::make_unique<UpperConfidenceBound>(
          UpperConfidenceBound::static_mode(num_states));
  }
  throw std::logic_error("AlgorithmConfig: unknown algorithm");
}

double AlgorithmConfig::metric_mu(long n) const {
  if (mode == Mode::kConstant || mode == Mode::kAdaptive) return mu;
  return 1.0 / static_cast<double>(n + 1);
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::runtime_error("config error at '" + field + "': " + why);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse config file " + path + ": " +
                             e.what());
  }
  return doc;
}

ProblemConfig parse_problem(const json& j) {
  ProblemConfig p;
  const std::string type = j.value("type", "poisson");
  if (type == "poisson") {
    p.type = ProblemConfig::Type::kPoisson;
    if (!j.contains("lambda")) fail("problem.lambda", "required");
    if (j.at("lambda").is_array())
      p.lambda = j.at("lambda").get<std::vector<double>>();
    else
      p.lambda = {j.at("lambda").get<double>()};
    p.states = j.value("states", 11);
    if (p.states < 2) fail("problem.states", "must be >= 2");
  } else if (type == "table") {
    p.type = ProblemConfig::Type::kTable;
    if (!j.contains("means")) fail("problem.means", "required");
    p.means = j.at("means").get<std::vector<std::vector<double>>>();
    p.phi = j.value("phi", 0.0);
    p.sigma_w = j.value("sigma_w", 0.0);
  } else {
    fail("problem.type", "must be 'poisson' or 'table'");
  }
  return p;
}

HypermodelConfig parse_hypermodel(const json& j) {
  HypermodelConfig h;
  if (j.contains("generator"))
    h.generator = j.at("generator").get<std::vector<std::vector<double>>>();
  h.epsilon = j.value("epsilon", 0.01);
  if (j.contains("initial_dist"))
    h.initial_dist = j.at("initial_dist").get<std::vector<double>>();
  if (j.contains("script")) {
    for (const json& seg : j.at("script")) {
      ScriptSegment s;
      s.until = seg.value("until", -1L);
      s.regime = seg.at("regime").get<int>();
      h.script.push_back(s);
    }
    if (h.script.empty()) fail("hypermodel.script", "must not be empty");
    if (h.script.back().until >= 0)
      fail("hypermodel.script", "last segment must be open-ended");
  }
  if (h.generator.empty() && !h.scripted())
    fail("hypermodel.generator", "required unless a script is given");
  return h;
}

AlgorithmConfig parse_algorithm(const json& j) {
  AlgorithmConfig a;
  const std::string name = j.at("name").get<std::string>();
  if (name == "as")
    a.name = AlgorithmConfig::Name::kAdaptiveSearch;
  else if (name == "rs")
    a.name = AlgorithmConfig::Name::kRandomSearch;
  else if (name == "ucb")
    a.name = AlgorithmConfig::Name::kUcb;
  else
    fail("algorithms[].name", "must be 'as', 'rs' or 'ucb'");

  const bool is_as = a.name == AlgorithmConfig::Name::kAdaptiveSearch;
  const std::string mode = j.value("mode", is_as ? "constant" : "static");
  if (mode == "constant")
    a.mode = AlgorithmConfig::Mode::kConstant;
  else if (mode == "decreasing")
    a.mode = AlgorithmConfig::Mode::kDecreasing;
  else if (mode == "static")
    a.mode = AlgorithmConfig::Mode::kStatic;
  else if (mode == "adaptive")
    a.mode = AlgorithmConfig::Mode::kAdaptive;
  else
    fail("algorithms[].mode", "unknown mode '" + mode + "'");

  a.mu = j.value("mu", 0.01);
  a.gamma = j.value("gamma", 0.1);
  a.alpha = j.value("alpha", 0.2);
  a.fixed_gamma = j.value("fixed_gamma", 0.0);
  a.label = j.value("label", name);

  if (is_as) {
    if (a.mode != AlgorithmConfig::Mode::kConstant &&
        a.mode != AlgorithmConfig::Mode::kDecreasing)
      fail("algorithms[].mode", "'as' supports 'constant' or 'decreasing'");
  } else {
    if (a.mode != AlgorithmConfig::Mode::kStatic &&
        a.mode != AlgorithmConfig::Mode::kAdaptive)
      fail("algorithms[].mode", "baselines support 'static' or 'adaptive'");
  }
  return a;
}

RunConfig parse_run(const json& j) {
  RunConfig r;
  r.horizon = j.value("horizon", 10000L);
  r.replications = j.value("replications", 100);
  r.seed = j.value("seed", std::uint64_t{1});
  r.threads = j.value("threads", 1);
  const std::string budget = j.value("budget", "iterations");
  if (budget == "iterations")
    r.budget_by_evaluations = false;
  else if (budget == "evaluations")
    r.budget_by_evaluations = true;
  else
    fail("run.budget", "must be 'iterations' or 'evaluations'");
  if (r.horizon < 0) fail("run.horizon", "must be >= 0");
  if (r.replications < 1) fail("run.replications", "must be >= 1");
  return r;
}

ReportConfig parse_report(const json& j) {
  ReportConfig rep;
  if (j.contains("checkpoints"))
    rep.checkpoints = j.at("checkpoints").get<std::vector<long>>();
  rep.trace_stride = j.value("trace_stride", 0L);
  rep.trace_replications = j.value("trace_replications", 1);
  rep.tie_tol = j.value("tie_tol", 1e-12);
  return rep;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  const json doc = load_json(path);
  ExperimentConfig cfg;
  if (!doc.contains("problem")) fail("problem", "required");
  cfg.problem = parse_problem(doc.at("problem"));
  if (doc.contains("hypermodel"))
    cfg.hypermodel = parse_hypermodel(doc.at("hypermodel"));
  if (!doc.contains("algorithms") || doc.at("algorithms").empty())
    fail("algorithms", "need at least one algorithm");
  for (const json& a : doc.at("algorithms"))
    cfg.algorithms.push_back(parse_algorithm(a));
  if (doc.contains("run")) cfg.run = parse_run(doc.at("run"));
  if (doc.contains("report")) cfg.report = parse_report(doc.at("report"));
  return cfg;
}

Table1Config load_table1_config(const std::string& path) {
  const json doc = load_json(path);
  Table1Config cfg;
  if (!doc.contains("cells") || doc.at("cells").empty())
    fail("cells", "need at least one (lambda, states) cell");
  for (const json& c : doc.at("cells")) {
    Table1Cell cell;
    cell.lambda = c.at("lambda").get<double>();
    cell.states = c.value("states", 11);
    cell.horizon = c.value("horizon", 10000L);
    if (!c.contains("checkpoints")) fail("cells[].checkpoints", "required");
    cell.checkpoints = c.at("checkpoints").get<std::vector<long>>();
    cfg.cells.push_back(cell);
  }
  cfg.alpha = doc.value("alpha", 0.2);
  if (doc.contains("run")) cfg.run = parse_run(doc.at("run"));
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  return sweep_from_experiment_file(path);
}

SweepConfig sweep_from_experiment_file(const std::string& path) {
  const json doc = load_json(path);
  SweepConfig cfg;
  if (!doc.contains("problem")) fail("problem", "required");
  cfg.problem = parse_problem(doc.at("problem"));
  if (!doc.contains("hypermodel") || !doc.at("hypermodel").contains("generator"))
    fail("hypermodel.generator", "required for a sweep");
  cfg.generator =
      doc.at("hypermodel").at("generator").get<std::vector<std::vector<double>>>();
  if (!doc.contains("sweep")) fail("sweep", "required");
  const json& sweep = doc.at("sweep");
  if (!sweep.contains("epsilons")) fail("sweep.epsilons", "required");
  cfg.epsilons = sweep.at("epsilons").get<std::vector<double>>();
  for (const json& a : doc.at("algorithms"))
    cfg.algorithms.push_back(parse_algorithm(a));
  cfg.run = doc.contains("run") ? parse_run(doc.at("run")) : RunConfig{};
  cfg.run.horizon = sweep.value("horizon", cfg.run.horizon);
  cfg.run.replications = sweep.value("replications", cfg.run.replications);
  if (doc.contains("report"))
    cfg.tie_tol = doc.at("report").value("tie_tol", 1e-12);
  return cfg;
}

OdeCheckConfig load_ode_check_config(const std::string& path) {
  const json doc = load_json(path);
  OdeCheckConfig cfg;
  if (!doc.contains("problem")) fail("problem", "required");
  cfg.problem = parse_problem(doc.at("problem"));
  cfg.gamma = doc.value("gamma", 0.1);
  if (doc.contains("mus")) cfg.mus = doc.at("mus").get<std::vector<double>>();
  cfg.horizon_time = doc.value("horizon_time", 5.0);
  cfg.replications = doc.value("replications", 300);
  cfg.seed = doc.value("seed", std::uint64_t{1});
  cfg.threads = doc.value("threads", 1);
  return cfg;
}

}  // namespace rsopt
