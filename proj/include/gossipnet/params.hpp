#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gossipnet/packet.hpp"

namespace gossipnet {

// Network size and the four Poisson rates. lambda_u and lambda_r are
// source totals split uniformly over the n nodes; lambda is one node's
// total gossip output split over its n-1 peers.
struct Params {
  int n = 100;
  double lambda_e = 2.0;  // event update rate
  double lambda_u = 5.0;  // unreliable source, total
  double lambda_r = 1.0;  // reliable source, total
  double lambda = 0.1;    // per-node gossip output, total
  Policy policy = Policy::reliability_first;

  double source_rate_u() const { return lambda_u / n; }  // per target node
  double source_rate_r() const { return lambda_r / n; }
  // per ordered pair; only meaningful for n >= 2
  double gossip_rate() const { return lambda / (n - 1); }

  void validate() const {
    if (n < 1) throw std::invalid_argument("n must be a positive integer");
    if (!(lambda_e > 0.0) || !std::isfinite(lambda_e))
      throw std::invalid_argument("lambda_e must be positive and finite");
    for (double v : {lambda_u, lambda_r, lambda})
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("rates must be nonnegative and finite");
  }
};

inline std::string_view policy_name(Policy p) {
  return p == Policy::reliability_first ? "reliability" : "freshness";
}

inline Policy parse_policy(std::string_view s) {
  if (s == "reliability") return Policy::reliability_first;
  if (s == "freshness") return Policy::freshness_first;
  throw std::invalid_argument("unknown policy '" + std::string(s) +
                              "' (expected reliability or freshness)");
}

}  // namespace gossipnet
