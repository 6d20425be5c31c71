#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gossipnet/simulator.hpp"

namespace gossipnet {

enum class SweepAxis { n, lambda, lambda_e, lambda_u, lambda_r };

std::string_view axis_name(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

// One parameter sweep: solver values at every grid point, optionally a
// simulation alongside for comparison.
struct SweepSpec {
  SweepAxis swept = SweepAxis::n;
  std::vector<double> grid;  // strictly increasing, positive
  Params base;
  std::vector<Policy> policies = {Policy::reliability_first,
                                  Policy::freshness_first};
  bool compare = false;
  double horizon = 1e6;
  double warmup = 1e3;
  std::uint64_t seed = 1;
  int replications = 1;

  void validate() const;
};

struct SweepRow {
  SweepAxis swept = SweepAxis::n;
  double swept_value = 0.0;
  Params params;  // fully resolved, including policy
  double f_solver = 0.0;
  double x1_solver = 0.0;
  bool simulated = false;
  double f_sim = 0.0;
  double f_sim_stderr = 0.0;
  double x1_sim = 0.0;
  double x1_sim_stderr = 0.0;
  double horizon = 0.0;
  double warmup = 0.0;
  std::uint64_t seed = 0;
  int replications = 0;
};

// Rows in grid order, one per policy at each grid point. Each simulated
// row gets its own seed (spec.seed + row_index * spec.replications) so
// replication streams never overlap across rows; the seed used is
// recorded in the row.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

extern const char* const kSweepCsvHeader;

// 12 significant digits, enough to reproduce the solver values on re-read.
std::string format_g12(double v);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Writes atomically enough for our purposes: any failure removes the
// partial file before throwing.
void write_sweep_csv_file(const std::string& path,
                          const std::vector<SweepRow>& rows);

std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace gossipnet
