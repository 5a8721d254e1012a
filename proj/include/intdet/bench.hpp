// Width-ratio benchmark over random interval matrices.
//
// For each size a batch of matrices is generated; every method's enclosure
// width is compared against the reference method on the same matrix.  Runs
// where either enclosure is unbounded (or the method rejects the input)
// are counted as failures and excluded from the averages, so failures plus
// included runs always equal the batch size.  Generation and evaluation
// are sequential and deterministic; timing is measured but never feeds
// back into results, so the ratio columns are bit-reproducible.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "intdet/precondition.hpp"
#include "intdet/random.hpp"

namespace intdet {

struct method_spec {
  method_kind method = method_kind::ge;
  precond_kind precond = precond_kind::none;

  bool operator==(const method_spec&) const = default;
};

struct bench_config {
  std::vector<std::size_t> sizes{5, 10, 15, 20, 25, 30};
  double radius = 1e-5;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  bool symmetric = false;
  std::vector<method_spec> methods;  // empty selects the default set
  method_spec reference{method_kind::ge, precond_kind::inv};
};

struct bench_cell {
  std::size_t size = 0;
  method_spec method;
  double mean_ratio = 0.0;
  double var_ratio = 0.0;
  std::size_t failures = 0;
  std::size_t included = 0;
  double mean_time_s = 0.0;
  double sd_time_s = 0.0;
};

struct bench_report {
  std::vector<bench_cell> cells;

  void write_csv(std::ostream& out) const {
    out << "size,method,precond,mean_ratio,var_ratio,failures,mean_time_s,sd_time_s\n";
    char buf[160];
    for (const bench_cell& c : cells) {
      std::snprintf(buf, sizeof buf, "%zu,%s,%s,%.6g,%.6g,%zu,%.6g,%.6g\n",
                    c.size, to_string(c.method.method), to_string(c.method.precond),
                    c.mean_ratio, c.var_ratio, c.failures, c.mean_time_s,
                    c.sd_time_s);
      out << buf;
    }
  }
};

inline std::vector<method_spec> default_bench_methods(bool symmetric) {
  std::vector<method_spec> m{{method_kind::ge, precond_kind::inv},
                             {method_kind::cramer, precond_kind::inv},
                             {method_kind::hadamard, precond_kind::inv},
                             {method_kind::gerschgorin, precond_kind::inv}};
  if (symmetric) m.push_back({method_kind::eig_sym, precond_kind::none});
  return m;
}

namespace detail {

struct timed_run {
  det_enclosure enc;
  double seconds = 0.0;
};

inline timed_run run_timed(const interval_matrix& A, const method_spec& m) {
  timed_run r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.enc = det_with_precond(A, m.method, m.precond);
  } catch (const precondition_error&) {
    r.enc = failed_enclosure(m.method);
    r.enc.precond = m.precond;
  } catch (const std::invalid_argument&) {
    r.enc = failed_enclosure(m.method);
    r.enc.precond = m.precond;
  }
  const auto t1 = std::chrono::steady_clock::now();
  r.seconds = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

}  // namespace detail

inline bench_report run_bench(const bench_config& cfg) {
  if (cfg.count == 0) throw std::invalid_argument("run_bench: count must be positive");
  if (!(cfg.radius > 0.0)) throw std::invalid_argument("run_bench: radius must be positive");
  if (cfg.sizes.empty()) throw std::invalid_argument("run_bench: no sizes given");
  for (std::size_t s : cfg.sizes)
    if (s == 0 || s > 200) throw std::invalid_argument("run_bench: size out of range");

  std::vector<method_spec> methods =
      cfg.methods.empty() ? default_bench_methods(cfg.symmetric) : cfg.methods;
  bool has_ref = false;
  for (const method_spec& m : methods) has_ref = has_ref || m == cfg.reference;
  if (!has_ref) methods.insert(methods.begin(), cfg.reference);

  bench_report report;
  for (std::size_t size : cfg.sizes) {
    std::vector<std::vector<double>> ratios(methods.size());
    std::vector<std::vector<double>> times(methods.size());
    std::vector<std::size_t> failures(methods.size(), 0);

    for (std::size_t idx = 0; idx < cfg.count; ++idx) {
      const interval_matrix A =
          gen_random(size, cfg.radius, cfg.seed, idx, cfg.symmetric);
      const detail::timed_run ref = detail::run_timed(A, cfg.reference);
      const bool ref_ok = !ref.enc.failed && bounded(ref.enc.value);

      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        const detail::timed_run r =
            methods[mi] == cfg.reference ? ref : detail::run_timed(A, methods[mi]);
        times[mi].push_back(r.seconds);
        const bool ok = ref_ok && !r.enc.failed && bounded(r.enc.value);
        if (!ok) {
          ++failures[mi];
          continue;
        }
        ratios[mi].push_back(width(r.enc.value) / width(ref.enc.value));
      }
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      bench_cell c;
      c.size = size;
      c.method = methods[mi];
      c.failures = failures[mi];
      c.included = ratios[mi].size();
      double rm = 0.0;
      for (double v : ratios[mi]) rm += v;
      rm = c.included ? rm / double(c.included) : std::nan("");
      double rv = 0.0;
      for (double v : ratios[mi]) rv += (v - rm) * (v - rm);
      rv = c.included ? rv / double(c.included) : std::nan("");
      c.mean_ratio = rm;
      c.var_ratio = rv;
      double tm = 0.0;
      for (double v : times[mi]) tm += v;
      tm /= double(times[mi].size());
      double tv = 0.0;
      for (double v : times[mi]) tv += (v - tm) * (v - tm);
      c.mean_time_s = tm;
      c.sd_time_s = std::sqrt(tv / double(times[mi].size()));
      report.cells.push_back(c);
    }
  }
  return report;
}

}  // namespace intdet
