#include "gossipnet/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gossipnet {

void SimConfig::validate() const {
  params.validate();
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("horizon must be positive and finite");
  if (!(warmup >= 0.0) || !(warmup < horizon))
    throw std::invalid_argument("warmup must satisfy 0 <= warmup < horizon");
  if (replications < 1)
    throw std::invalid_argument("replications must be >= 1");
}

double total_event_rate(const Params& params) {
  double total = params.lambda_e + params.lambda_u + params.lambda_r;
  if (params.n >= 2) total += params.n * params.lambda;
  return total;
}

SampledTransition next_transition(const Params& params, RandomStream& rng) {
  const double total = total_event_rate(params);
  if (!(total > 0.0))
    throw std::invalid_argument("total transition rate must be positive");

  const double waiting_time = rng.exponential(total);
  const double gossip_total = params.n >= 2 ? params.n * params.lambda : 0.0;

  double x = rng.uniform() * total;
  if ((x -= params.lambda_e) < 0.0)
    return {waiting_time, Transition::event_update()};
  if ((x -= params.lambda_u) < 0.0)
    return {waiting_time, Transition::from_unreliable(rng.uniform_int(params.n))};
  if ((x -= params.lambda_r) < 0.0)
    return {waiting_time, Transition::from_reliable(rng.uniform_int(params.n))};
  if (gossip_total > 0.0) {
    const int source = rng.uniform_int(params.n);
    int target = rng.uniform_int(params.n - 1);
    if (target >= source) ++target;
    return {waiting_time, Transition::gossip(source, target)};
  }
  // roundoff pushed x past every live category; lambda_e is always positive
  return {waiting_time, Transition::event_update()};
}

namespace {

// Per-node lazy age integration. A node's age integral over a span where
// its version is constant is  integral(V_E) - version * span, so only the
// running integral of the event version has to be advanced every step;
// nodes are settled when their version changes and at window boundaries.
struct AgeLedger {
  std::vector<double> acc;      // settled age integral per node
  std::vector<double> t_last;   // clock at last settle
  std::vector<double> iv_last;  // event-version integral at last settle

  explicit AgeLedger(int n)
      : acc(static_cast<std::size_t>(n), 0.0),
        t_last(static_cast<std::size_t>(n), 0.0),
        iv_last(static_cast<std::size_t>(n), 0.0) {}

  void settle(int node, std::uint64_t version, double t, double iv) {
    const auto i = static_cast<std::size_t>(node);
    acc[i] += (iv - iv_last[i]) - static_cast<double>(version) * (t - t_last[i]);
    t_last[i] = t;
    iv_last[i] = iv;
  }
};

}  // namespace

SimEstimate run_replication(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  const Params& p = config.params;
  const int n = p.n;
  const double horizon = config.horizon;
  const double warmup = config.warmup;

  RandomStream rng(seed);
  NetworkState state(n);
  AgeLedger ledger(n);

  double iv = 0.0;  // integral of the event version since time 0
  double f_integral = 0.0;
  double window_time = 0.0;
  int unreliable_count = 0;
  std::uint64_t events = 0;
  bool warmed = warmup <= 0.0;

  while (true) {
    const auto [dt, tr] = next_transition(p, rng);
    const double t_event = state.clock + dt;
    const double seg_end = std::min(t_event, horizon);

    double from = state.clock;
    if (!warmed && seg_end >= warmup) {
      // advance to the warmup boundary, then restart the window there
      iv += static_cast<double>(state.event_version) * (warmup - from);
      for (int i = 0; i < n; ++i) {
        ledger.settle(i, state.packets[static_cast<std::size_t>(i)].version,
                      warmup, iv);
        ledger.acc[static_cast<std::size_t>(i)] = 0.0;
      }
      warmed = true;
      from = warmup;
    }
    iv += static_cast<double>(state.event_version) * (seg_end - from);
    if (warmed) {
      const double dur = seg_end - from;
      f_integral += (static_cast<double>(unreliable_count) / n) * dur;
      window_time += dur;
    }
    state.clock = seg_end;
    if (t_event >= horizon) break;

    if (tr.kind == Transition::Kind::event_update) {
      apply_transition(state, tr, p.policy);
    } else {
      Packet& cell = state.packets[static_cast<std::size_t>(tr.target)];
      const Packet before = cell;
      apply_transition(state, tr, p.policy);
      if (cell.version != before.version)
        ledger.settle(tr.target, before.version, state.clock, iv);
      unreliable_count += (cell.tag == ReliabilityTag::unreliable ? 1 : 0) -
                          (before.tag == ReliabilityTag::unreliable ? 1 : 0);
    }
    ++events;
  }

  for (int i = 0; i < n; ++i)
    ledger.settle(i, state.packets[static_cast<std::size_t>(i)].version,
                  horizon, iv);

  const double window = horizon - warmup;
  SimEstimate est;
  est.per_node_age.resize(static_cast<std::size_t>(n));
  double age_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    // clamp roundoff dust; the integrals are nonnegative by construction
    const double avg = std::max(0.0, ledger.acc[static_cast<std::size_t>(i)] / window);
    est.per_node_age[static_cast<std::size_t>(i)] = avg;
    age_sum += avg;
  }
  est.f_hat = std::clamp(f_integral / window, 0.0, 1.0);
  est.x1_hat = age_sum / n;
  est.events_processed = events;
  est.window_time = window_time;
  return est;
}

SimEstimate run(const SimConfig& config) {
  config.validate();
  const int reps = config.replications;
  std::vector<SimEstimate> results(static_cast<std::size_t>(reps));

  if (reps == 1) {
    results[0] = run_replication(config, config.seed);
  } else {
    // replications are independent; results land in their slot, so the
    // merge below is deterministic whatever the thread schedule
    std::atomic<int> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = std::min<int>(reps, static_cast<int>(hw));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r; (r = cursor.fetch_add(1)) < reps;) {
          try {
            results[static_cast<std::size_t>(r)] = run_replication(
                config, config.seed + static_cast<std::uint64_t>(r));
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  SimEstimate pooled;
  pooled.per_node_age.assign(static_cast<std::size_t>(config.params.n), 0.0);
  for (const SimEstimate& r : results) {
    pooled.f_hat += r.f_hat;
    pooled.x1_hat += r.x1_hat;
    pooled.window_time += r.window_time;
    pooled.events_processed += r.events_processed;
    for (std::size_t i = 0; i < pooled.per_node_age.size(); ++i)
      pooled.per_node_age[i] += r.per_node_age[i];
  }
  pooled.f_hat /= reps;
  pooled.x1_hat /= reps;
  pooled.window_time /= reps;
  for (double& v : pooled.per_node_age) v /= reps;

  if (reps > 1) {
    double f_var = 0.0;
    double x_var = 0.0;
    for (const SimEstimate& r : results) {
      f_var += (r.f_hat - pooled.f_hat) * (r.f_hat - pooled.f_hat);
      x_var += (r.x1_hat - pooled.x1_hat) * (r.x1_hat - pooled.x1_hat);
    }
    f_var /= reps - 1;
    x_var /= reps - 1;
    pooled.f_stderr = std::sqrt(f_var / reps);
    pooled.x1_stderr = std::sqrt(x_var / reps);
  }
  return pooled;
}

}  // namespace gossipnet
