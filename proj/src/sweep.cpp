#include "gossipnet/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gossipnet/chains.hpp"

namespace gossipnet {

const char* const kSweepCsvHeader =
    "swept_param,swept_value,n,lambda_e,lambda_u,lambda_r,lambda,policy,"
    "f_solver,x1_solver,f_sim,f_sim_stderr,x1_sim,x1_sim_stderr,horizon,"
    "warmup,seed,replications";

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::n: return "n";
    case SweepAxis::lambda: return "lambda";
    case SweepAxis::lambda_e: return "lambda_e";
    case SweepAxis::lambda_u: return "lambda_u";
    case SweepAxis::lambda_r: return "lambda_r";
  }
  return "n";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "n") return SweepAxis::n;
  if (name == "lambda") return SweepAxis::lambda;
  if (name == "lambda_e") return SweepAxis::lambda_e;
  if (name == "lambda_u") return SweepAxis::lambda_u;
  if (name == "lambda_r") return SweepAxis::lambda_r;
  throw std::invalid_argument(
      "unknown sweep parameter '" + std::string(name) +
      "' (expected n, lambda, lambda_e, lambda_u or lambda_r)");
}

void SweepSpec::validate() const {
  base.validate();
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  double prev = 0.0;
  for (double v : grid) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("grid values must be positive and finite");
    if (v <= prev)
      throw std::invalid_argument("grid values must be strictly increasing");
    if (swept == SweepAxis::n &&
        (v != std::floor(v) || v > static_cast<double>(std::numeric_limits<int>::max())))
      throw std::invalid_argument("an n grid must hold positive integers");
    prev = v;
  }
  if (policies.empty())
    throw std::invalid_argument("at least one policy is required");
  if (compare) {
    SimConfig probe{base, horizon, warmup, seed, replications};
    probe.validate();
  }
}

namespace {

Params resolve(const Params& base, SweepAxis axis, double value) {
  Params p = base;
  switch (axis) {
    case SweepAxis::n: p.n = static_cast<int>(value); break;
    case SweepAxis::lambda: p.lambda = value; break;
    case SweepAxis::lambda_e: p.lambda_e = value; break;
    case SweepAxis::lambda_u: p.lambda_u = value; break;
    case SweepAxis::lambda_r: p.lambda_r = value; break;
  }
  return p;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.grid.size() * spec.policies.size());
  std::size_t row_index = 0;
  for (double value : spec.grid) {
    for (Policy policy : spec.policies) {
      Params params = resolve(spec.base, spec.swept, value);
      params.policy = policy;
      const ChainResult chains = solve(params);

      SweepRow row;
      row.swept = spec.swept;
      row.swept_value = value;
      row.params = params;
      row.f_solver = chains.f_value;
      row.x1_solver = chains.x1_value;
      if (spec.compare) {
        SimConfig cfg{params, spec.horizon, spec.warmup,
                      spec.seed + row_index * static_cast<std::uint64_t>(
                                      spec.replications),
                      spec.replications};
        const SimEstimate est = run(cfg);
        row.simulated = true;
        row.f_sim = est.f_hat;
        row.f_sim_stderr = est.f_stderr;
        row.x1_sim = est.x1_hat;
        row.x1_sim_stderr = est.x1_stderr;
        row.horizon = cfg.horizon;
        row.warmup = cfg.warmup;
        row.seed = cfg.seed;
        row.replications = cfg.replications;
      }
      rows.push_back(row);
      ++row_index;
    }
  }
  return rows;
}

std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << axis_name(r.swept) << ',' << format_g12(r.swept_value) << ','
        << r.params.n << ',' << format_g12(r.params.lambda_e) << ','
        << format_g12(r.params.lambda_u) << ','
        << format_g12(r.params.lambda_r) << ','
        << format_g12(r.params.lambda) << ',' << policy_name(r.params.policy)
        << ',' << format_g12(r.f_solver) << ',' << format_g12(r.x1_solver)
        << ',';
    if (r.simulated) {
      out << format_g12(r.f_sim) << ',' << format_g12(r.f_sim_stderr) << ','
          << format_g12(r.x1_sim) << ',' << format_g12(r.x1_sim_stderr) << ','
          << format_g12(r.horizon) << ',' << format_g12(r.warmup) << ','
          << r.seed << ',' << r.replications;
    } else {
      out << ",,,,,,,";
    }
    out << '\n';
  }
}

void write_sweep_csv_file(const std::string& path,
                          const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_sweep_csv(out, rows);
  out.flush();
  if (!out) {
    out.close();
    std::remove(path.c_str());
    throw std::runtime_error("failed while writing '" + path + "'");
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

}  // namespace

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader)
    throw std::runtime_error("sweep CSV header mismatch");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 18)
      throw std::runtime_error("sweep CSV row has wrong field count");
    SweepRow r;
    r.swept = parse_axis(f[0]);
    r.swept_value = parse_double(f[1]);
    r.params.n = static_cast<int>(parse_double(f[2]));
    r.params.lambda_e = parse_double(f[3]);
    r.params.lambda_u = parse_double(f[4]);
    r.params.lambda_r = parse_double(f[5]);
    r.params.lambda = parse_double(f[6]);
    r.params.policy = parse_policy(f[7]);
    r.f_solver = parse_double(f[8]);
    r.x1_solver = parse_double(f[9]);
    r.simulated = !f[10].empty();
    if (r.simulated) {
      r.f_sim = parse_double(f[10]);
      r.f_sim_stderr = parse_double(f[11]);
      r.x1_sim = parse_double(f[12]);
      r.x1_sim_stderr = parse_double(f[13]);
      r.horizon = parse_double(f[14]);
      r.warmup = parse_double(f[15]);
      r.seed = static_cast<std::uint64_t>(std::stoull(f[16]));
      r.replications = static_cast<int>(std::stoi(f[17]));
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gossipnet
