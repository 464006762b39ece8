#ifndef NPG_POLICY_H_
#define NPG_POLICY_H_

#include <span>
#include <vector>

#include "npg/game.h"
#include "npg/rng.h"

namespace npg {

// Per-action linear logit parameters of one agent: for action k,
// x(k) = intercept(k) + slope(k) * s_i. Stored row-major as K x 2.
class AgentParams {
 public:
  AgentParams() = default;
  explicit AgentParams(int num_actions)
      : num_actions_(num_actions), data_(2 * num_actions, 0.0) {}

  int num_actions() const { return num_actions_; }
  int size() const { return static_cast<int>(data_.size()); }

  double& intercept(int k) { return data_[2 * k]; }
  double intercept(int k) const { return data_[2 * k]; }
  double& slope(int k) { return data_[2 * k + 1]; }
  double slope(int k) const { return data_[2 * k + 1]; }
  double logit(int k, double level) const {
    return data_[2 * k] + data_[2 * k + 1] * level;
  }

  std::span<double> flat() { return data_; }
  std::span<const double> flat() const { return data_; }

  friend bool operator==(const AgentParams&, const AgentParams&) = default;

 private:
  int num_actions_ = 0;
  std::vector<double> data_;
};

// Joint parameters theta = (theta_1, ..., theta_N). The same type is used for
// an agent's belief view: its own true block plus its copies of the others.
using ParamSet = std::vector<AgentParams>;

enum class PolicyKind {
  kNetworked,    // logit minus mellow-max of the other agents' logits
  kIndependent,  // own logit only
};

// log((1/m) sum_j exp(x_j)), evaluated with max subtraction. Throws
// std::invalid_argument on empty input.
double MellowMax(std::span<const double> values);

// Action distribution of `agent` at `state` under the parameter view.
std::vector<double> PolicyProbs(int agent, const State& state,
                                const ParamSet& view, PolicyKind kind);

// Inverse-CDF draw from a probability vector.
int SampleFromProbs(std::span<const double> probs, RngStream& stream);

int SampleAction(int agent, const State& state, const ParamSet& view,
                 PolicyKind kind, RngStream& stream);

// Gradient of log pi_owner(action | state) with respect to the parameters of
// `wrt`, in AgentParams::flat() layout (length 2K).
std::vector<double> ScoreFunction(int wrt, int owner, int action,
                                  const State& state, const ParamSet& view,
                                  PolicyKind kind);

// sum_n grad_wrt log pi_n(a_n | state): the joint-policy score used by the
// gradient estimator.
std::vector<double> JointScore(int wrt, std::span<const int> actions,
                               const State& state, const ParamSet& view,
                               PolicyKind kind);

// Entries i.i.d. N(0, stddev^2), one derived stream per agent.
ParamSet InitParams(int num_agents, int num_actions, double stddev,
                    std::uint64_t seed);

}  // namespace npg

#endif  // NPG_POLICY_H_
