#include "rsopt/algorithms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsopt {

int argmax_smallest_index(const std::vector<double>& values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

int Sampler::propose(RandomSource& rng) {
  if (awaiting_observe_)
    throw std::logic_error("Sampler: propose() called twice without observe()");
  proposed_ = do_propose(rng);
  awaiting_observe_ = true;
  return proposed_;
}

void Sampler::observe(int state, double value, EvaluationChannel& extra) {
  if (!awaiting_observe_)
    throw std::logic_error("Sampler: observe() without a pending proposal");
  if (state != proposed_)
    throw std::logic_error("Sampler: observation does not match the proposal");
  awaiting_observe_ = false;
  do_observe(state, value, extra);
}

AdaptiveSearch AdaptiveSearch::constant_step(int num_states, double mu,
                                             double gamma) {
  if (num_states < 2)
    throw std::invalid_argument("AdaptiveSearch: need at least two states");
  if (!(mu > 0.0 && mu <= 1.0))
    throw std::invalid_argument("AdaptiveSearch: mu must be in (0, 1]");
  if (!(gamma > 0.0))
    throw std::invalid_argument("AdaptiveSearch: gamma must be > 0");
  AdaptiveSearch as;
  as.beliefs_.values.assign(num_states, 0.0);
  as.beliefs_.step_size = mu;
  as.beliefs_.exploration = gamma;
  as.occupation_.assign(num_states, 0.0);
  return as;
}

AdaptiveSearch AdaptiveSearch::decreasing_step(int num_states, double alpha) {
  return decreasing_step_fixed_gamma(num_states, alpha, 0.0);
}

AdaptiveSearch AdaptiveSearch::decreasing_step_fixed_gamma(int num_states,
                                                           double alpha,
                                                           double gamma) {
  if (num_states < 2)
    throw std::invalid_argument("AdaptiveSearch: need at least two states");
  AdaptiveSearch as;
  as.decreasing_ = true;
  as.alpha_ = alpha;
  as.fixed_gamma_ = gamma;
  as.beliefs_.values.assign(num_states, 0.0);
  as.occupation_.assign(num_states, 0.0);
  as.refresh_schedule();
  return as;
}

void AdaptiveSearch::refresh_schedule() {
  if (decreasing_) {
    const StepSchedule s = decreasing_schedules(iteration_, alpha_);
    beliefs_.step_size = s.mu;
    beliefs_.exploration = fixed_gamma_ > 0.0 ? fixed_gamma_ : s.gamma;
  }
}

int AdaptiveSearch::do_propose(RandomSource& rng) {
  refresh_schedule();
  last_dist_ = smooth_best_response(beliefs_);
  return sample_state(last_dist_, rng);
}

void AdaptiveSearch::do_observe(int state, double value, EvaluationChannel&) {
  beliefs_ = belief_update(beliefs_, state, value, last_dist_);
  const double mu = beliefs_.step_size;
  for (double& z : occupation_) z *= 1.0 - mu;
  occupation_[static_cast<std::size_t>(state)] += mu;
  ++iteration_;
}

int AdaptiveSearch::estimate() const { return argmax_smallest_index(occupation_); }

RandomSearch RandomSearch::static_mode(int num_states) {
  if (num_states < 2)
    throw std::invalid_argument("RandomSearch: need at least two states");
  RandomSearch rs;
  rs.num_states_ = num_states;
  rs.weights_.assign(num_states, 0.0);
  return rs;
}

RandomSearch RandomSearch::adaptive_mode(int num_states, double mu) {
  if (!(mu > 0.0 && mu <= 1.0))
    throw std::invalid_argument("RandomSearch: mu must be in (0, 1]");
  RandomSearch rs = static_mode(num_states);
  rs.adaptive_ = true;
  rs.mu_ = mu;
  return rs;
}

int RandomSearch::do_propose(RandomSource& rng) {
  if (current_ < 0)
    current_ = static_cast<int>(
        rng.uniform_below(static_cast<std::uint64_t>(num_states_)));
  // Candidate uniform on the other states.
  int candidate = static_cast<int>(
      rng.uniform_below(static_cast<std::uint64_t>(num_states_ - 1)));
  if (candidate >= current_) ++candidate;
  return candidate;
}

void RandomSearch::do_observe(int candidate, double candidate_value,
                              EvaluationChannel& extra) {
  const double incumbent_value = extra.evaluate(current_);
  if (candidate_value < incumbent_value) current_ = candidate;
  if (adaptive_) {
    for (double& w : weights_) w *= 1.0 - mu_;
    weights_[static_cast<std::size_t>(current_)] += mu_;
  } else {
    weights_[static_cast<std::size_t>(current_)] += 1.0;
  }
}

int RandomSearch::estimate() const { return argmax_smallest_index(weights_); }

UpperConfidenceBound UpperConfidenceBound::static_mode(int num_states) {
  if (num_states < 2)
    throw std::invalid_argument("UpperConfidenceBound: need at least two states");
  UpperConfidenceBound ucb;
  ucb.num_states_ = num_states;
  ucb.counts_.assign(num_states, 0.0);
  ucb.reward_sums_.assign(num_states, 0.0);
  return ucb;
}

UpperConfidenceBound UpperConfidenceBound::adaptive_mode(int num_states,
                                                         double mu) {
  if (!(mu > 0.0 && mu <= 1.0))
    throw std::invalid_argument("UpperConfidenceBound: mu must be in (0, 1]");
  UpperConfidenceBound ucb = static_mode(num_states);
  ucb.adaptive_ = true;
  ucb.mu_ = mu;
  return ucb;
}

int UpperConfidenceBound::do_propose(RandomSource&) {
  // Initialization sweep: one pull per state, in index order.
  if (iteration_ < num_states_) return static_cast<int>(iteration_);

  double total = 0.0;
  for (double c : counts_) total += c;
  const double log_total = std::log(std::max(total, 1.0));

  int best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < num_states_; ++i) {
    const double mean = reward_sums_[i] / counts_[i];
    const double index = mean + std::sqrt(2.0 * log_total / counts_[i]);
    if (index > best_index) {
      best_index = index;
      best = i;
    }
  }
  return best;
}

void UpperConfidenceBound::do_observe(int state, double value,
                                      EvaluationChannel&) {
  if (adaptive_) {
    for (int i = 0; i < num_states_; ++i) {
      counts_[i] *= 1.0 - mu_;
      reward_sums_[i] *= 1.0 - mu_;
    }
  }
  counts_[static_cast<std::size_t>(state)] += 1.0;
  reward_sums_[static_cast<std::size_t>(state)] += -value;
  ++iteration_;
}

int UpperConfidenceBound::estimate() const {
  // Best observed mean reward; unpulled states lose to any pulled one.
  int best = 0;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < num_states_; ++i) {
    if (counts_[i] <= 0.0) continue;
    const double mean = reward_sums_[i] / counts_[i];
    if (mean > best_mean) {
      best_mean = mean;
      best = i;
    }
  }
  return best;
}

}  // namespace rsopt
