#pragma once

#include <cstdint>
#include <vector>

#include "gossipnet/params.hpp"
#include "gossipnet/rng.hpp"
#include "gossipnet/state.hpp"

namespace gossipnet {

struct SimConfig {
  Params params;
  double horizon = 1e6;  // total simulated time
  double warmup = 0.0;   // leading time excluded from the averages
  std::uint64_t seed = 1;
  int replications = 1;

  void validate() const;
};

// Time-averaged estimates over [warmup, horizon], pooled with equal
// weights across replications.
struct SimEstimate {
  double f_hat = 0.0;       // fraction of nodes with an unreliable packet
  double x1_hat = 0.0;      // version age, averaged over nodes
  double f_stderr = 0.0;    // across-replication standard errors; 0 for a
  double x1_stderr = 0.0;   // single replication
  std::vector<double> per_node_age;
  std::uint64_t events_processed = 0;
  // Accumulated measurement-window length, for audits; equals
  // horizon - warmup up to floating-point roundoff.
  double window_time = 0.0;
};

// Superposed rate of all transitions: lambda_e + lambda_u + lambda_r plus
// n*lambda of gossip when n >= 2.
double total_event_rate(const Params& params);

struct SampledTransition {
  double waiting_time;
  Transition transition;
};

// One draw of the competing clocks: an exponential waiting time at the
// total rate plus a categorical pick of which transition fired.
SampledTransition next_transition(const Params& params, RandomStream& rng);

// A single replication, strictly sequential.
SimEstimate run_replication(const SimConfig& config, std::uint64_t seed);

// All replications, seeded seed, seed+1, ... and merged by replication
// index. Identical config gives bit-identical output regardless of how
// the replications are scheduled.
SimEstimate run(const SimConfig& config);

}  // namespace gossipnet
