#include "gossipnet/chains.hpp"

#include <cassert>
#include <stdexcept>

namespace gossipnet {

namespace {

// Per-k transition rates seen by a typical k-subset.
struct SubsetRates {
  double src_u;  // k*lambda_u/n
  double src_r;  // k*lambda_r/n
  double w;      // gossip boundary weight
};

SubsetRates rates_at(const Params& p, int k) {
  return {k * p.lambda_u / p.n, k * p.lambda_r / p.n, gossip_weight(p, k)};
}

// The age-style chains divide by k*(lambda_u+lambda_r)/n + w_k, which
// vanishes at k = n exactly when both source rates are zero.
void require_source(const Params& p) {
  if (p.lambda_u + p.lambda_r <= 0.0)
    throw std::invalid_argument(
        "lambda_u + lambda_r must be positive: with no source at all the "
        "long-term age diverges and the unreliable fraction is undefined");
}

std::vector<double> compute_c(const Params& p) {
  std::vector<double> c(static_cast<std::size_t>(p.n));
  double next = 0.0;  // multiplied by w = 0 at k = n
  for (int k = p.n; k >= 1; --k) {
    const auto r = rates_at(p, k);
    next = (r.src_r + next * r.w) / (p.lambda_e + r.src_r + r.w);
    c[static_cast<std::size_t>(k - 1)] = next;
  }
  return c;
}

std::vector<double> compute_b(const Params& p, const std::vector<double>& c) {
  std::vector<double> b(static_cast<std::size_t>(p.n));
  double next = 0.0;
  for (int k = p.n; k >= 1; --k) {
    const auto r = rates_at(p, k);
    const double ck = c[static_cast<std::size_t>(k - 1)];
    next = ((1.0 - ck) * p.lambda_e + next * r.w) /
           (p.lambda_e + r.src_r + r.w);
    b[static_cast<std::size_t>(k - 1)] = next;
  }
  return b;
}

std::vector<double> compute_a(const Params& p, const std::vector<double>& b) {
  std::vector<double> a(static_cast<std::size_t>(p.n));
  double next = 0.0;
  for (int k = p.n; k >= 1; --k) {
    const auto r = rates_at(p, k);
    const double bk = b[static_cast<std::size_t>(k - 1)];
    next = (bk * r.src_u + next * r.w) / (r.src_u + r.src_r + r.w);
    a[static_cast<std::size_t>(k - 1)] = next;
  }
  return a;
}

std::vector<double> compute_d(const Params& p, const std::vector<double>& c) {
  std::vector<double> d(static_cast<std::size_t>(p.n));
  double next = 0.0;
  for (int k = p.n; k >= 1; --k) {
    const auto r = rates_at(p, k);
    const double ck = c[static_cast<std::size_t>(k - 1)];
    next = (ck * p.lambda_e + next * r.w) / (p.lambda_e + r.src_r + r.w);
    d[static_cast<std::size_t>(k - 1)] = next;
  }
  return d;
}

std::vector<double> compute_e(const Params& p, const std::vector<double>& d) {
  std::vector<double> e(static_cast<std::size_t>(p.n));
  double next = 0.0;
  for (int k = p.n; k >= 1; --k) {
    const auto r = rates_at(p, k);
    const double dk = d[static_cast<std::size_t>(k - 1)];
    next = (p.lambda_e + dk * r.src_u + next * r.w) /
           (r.src_u + r.src_r + r.w);
    e[static_cast<std::size_t>(k - 1)] = next;
  }
  return e;
}

std::vector<double> compute_b_freshness(const Params& p) {
  std::vector<double> b(static_cast<std::size_t>(p.n));
  double next = 0.0;
  for (int k = p.n; k >= 1; --k) {
    const auto r = rates_at(p, k);
    next = (p.lambda_e + next * r.w) / (p.lambda_e + r.src_r + r.w);
    b[static_cast<std::size_t>(k - 1)] = next;
  }
  return b;
}

std::vector<double> compute_e_freshness(const Params& p) {
  std::vector<double> e(static_cast<std::size_t>(p.n));
  double next = 0.0;
  for (int k = p.n; k >= 1; --k) {
    const auto r = rates_at(p, k);
    next = (p.lambda_e + next * r.w) / (r.src_u + r.src_r + r.w);
    e[static_cast<std::size_t>(k - 1)] = next;
  }
  return e;
}

}  // namespace

double gossip_weight(const Params& params, int k) {
  assert(k >= 1 && k <= params.n);
  if (params.n == 1) return 0.0;
  return static_cast<double>(k) * (params.n - k) * params.lambda /
         (params.n - 1);
}

ChainResult solve_reliability_chain(const Params& params) {
  params.validate();
  require_source(params);
  ChainResult r;
  r.n = params.n;
  r.policy = Policy::reliability_first;
  r.c = compute_c(params);
  r.b = compute_b(params, r.c);
  r.a = compute_a(params, r.b);
  r.f_value = r.a.front();
  return r;
}

ChainResult solve_age_chain(const Params& params) {
  params.validate();
  require_source(params);
  ChainResult r;
  r.n = params.n;
  r.policy = Policy::reliability_first;
  r.c = compute_c(params);
  r.d = compute_d(params, r.c);
  r.e = compute_e(params, r.d);
  r.x1_value = r.e.front();
  return r;
}

ChainResult solve_freshness_chain(const Params& params) {
  params.validate();
  require_source(params);
  ChainResult r;
  r.n = params.n;
  r.policy = Policy::freshness_first;
  r.b = compute_b_freshness(params);
  r.a = compute_a(params, r.b);  // same recursion, freshness b chain
  r.e = compute_e_freshness(params);
  r.f_value = r.a.front();
  r.x1_value = r.e.front();
  return r;
}

ChainResult solve(const Params& params) {
  if (params.policy == Policy::freshness_first)
    return solve_freshness_chain(params);
  ChainResult r = solve_reliability_chain(params);
  r.d = compute_d(params, r.c);
  r.e = compute_e(params, r.d);
  r.x1_value = r.e.front();
  return r;
}

double large_gossip_limit(const Params& params) {
  params.validate();
  require_source(params);
  const double ratio_e = params.lambda_e / (params.lambda_e + params.lambda_r);
  const double ratio_u = params.lambda_u / (params.lambda_u + params.lambda_r);
  return ratio_e * ratio_e * ratio_u;
}

}  // namespace gossipnet
