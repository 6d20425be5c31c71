#pragma once

#include <vector>

#include "gossipnet/params.hpp"

namespace gossipnet {

// Long-term expectations for the typical k-node subset, k = 1..n; vectors
// are indexed k-1. Under reliability_first:
//   a_k  expected set reliability status (1 = unreliable wins the merge)
//   b_k  the same with the unreliable source adjoined to the set
//   c_k  probability the freshest reliable member has age 0
//   d_k  probability the freshest reliable member has age 1
//   e_k  expected set version age
// Under freshness_first, a/b/e hold the freshness-policy counterparts and
// c/d stay empty. f_value duplicates a_1 and x1_value duplicates e_1 when
// the respective chain is populated.
struct ChainResult {
  int n = 0;
  Policy policy = Policy::reliability_first;
  std::vector<double> a, b, c, d, e;
  double f_value = 0.0;
  double x1_value = 0.0;
};

// Dissemination weight k(n-k)lambda/(n-1) of the k-subset boundary.
// Zero for n = 1 and at k = n, which is what lets every chain iterate
// backward from k = n without needing a value beyond the end.
double gossip_weight(const Params& params, int k);

// Reliability chain under the reliability-first policy: fills c, b, a and
// f_value = a_1.
ChainResult solve_reliability_chain(const Params& params);

// Version-age chain under the reliability-first policy: fills c, d, e and
// x1_value = e_1. The c chain is the same computation as in
// solve_reliability_chain.
ChainResult solve_age_chain(const Params& params);

// Freshness-first chains: fills a, b, e with the freshness counterparts,
// f_value = a_1, x1_value = e_1.
ChainResult solve_freshness_chain(const Params& params);

// All chains for the policy carried by params.
ChainResult solve(const Params& params);

// Closed-form limit of the unreliable fraction as the gossip rate grows:
// (lambda_e/(lambda_e+lambda_r))^2 * lambda_u/(lambda_u+lambda_r).
double large_gossip_limit(const Params& params);

}  // namespace gossipnet
