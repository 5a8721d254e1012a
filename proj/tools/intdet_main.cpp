// Command-line front end: determinant enclosures, exact vertex hulls,
// random test matrices, and the width-ratio benchmark.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "intdet/bench.hpp"
#include "intdet/hull.hpp"
#include "intdet/matrix_io.hpp"
#include "intdet/precondition.hpp"
#include "intdet/random.hpp"

namespace {

constexpr int kExitFailedEnclosure = 3;

// Decimal display rounds outward so the printed interval still encloses
// the result; the hex line carries the exact bounds.
void print_interval(const intdet::interval& v) {
  const double lo = std::floor(v.lo() * 1000.0) / 1000.0;
  const double hi = std::ceil(v.hi() * 1000.0) / 1000.0;
  std::printf("[%.3f, %.3f]\n", lo, hi);
  std::printf("hex [%a, %a]\n", v.lo(), v.hi());
}

int run_det(const std::string& file, const std::string& method,
            const std::string& precond, bool monotone) {
  const intdet::interval_matrix A = intdet::read_matrix_file(file);
  const intdet::method_kind m = intdet::method_from_string(method);
  const intdet::precond_kind k = intdet::precond_from_string(precond);
  const intdet::det_enclosure r = monotone
                                      ? intdet::refine_monotonicity(A, m, k)
                                      : intdet::det_with_precond(A, m, k);
  if (r.failed || !intdet::bounded(r.value)) {
    std::printf("no bounded enclosure (%s, %s)\n", intdet::to_string(m),
                intdet::to_string(k));
    return kExitFailedEnclosure;
  }
  print_interval(r.value);
  return 0;
}

int run_hull(const std::string& file) {
  const intdet::interval_matrix A = intdet::read_matrix_file(file);
  const intdet::hull_result h = intdet::vertex_hull_det(A);
  print_interval(h.enclosure);
  std::cout << "exact [" << h.exact_lo << ", " << h.exact_hi << "]\n";
  std::printf("vertices %zu\n", h.vertex_count);
  return 0;
}

int run_bench_cmd(const intdet::bench_config& cfg, const std::string& out_path) {
  const intdet::bench_report rep = intdet::run_bench(cfg);
  if (out_path.empty()) {
    rep.write_csv(std::cout);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw intdet::io_error("cannot open '" + out_path + "' for writing");
  rep.write_csv(out);
  return 0;
}

int run_gen(std::size_t n, double radius, std::uint64_t seed, bool symmetric,
            const std::string& out_path) {
  intdet::write_matrix_file(out_path,
                            intdet::gen_random(n, radius, seed, 0, symmetric));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verified enclosures of interval matrix determinants"};
  app.require_subcommand(1);

  std::string det_file, det_method = "ge", det_precond = "none";
  bool det_monotone = false;
  CLI::App* det = app.add_subcommand("det", "enclose det(A) for a matrix file");
  det->add_option("--file", det_file, "matrix JSON file")->required();
  det->add_option("--method", det_method, "enclosure method")
      ->check(CLI::IsMember({"ge", "had", "gersch", "cram", "eig"}));
  det->add_option("--precond", det_precond, "preconditioner")
      ->check(CLI::IsMember({"none", "inv", "lu", "ldl"}));
  det->add_flag("--monotone", det_monotone, "apply the monotonicity refinement");

  std::string hull_file;
  CLI::App* hull = app.add_subcommand(
      "hull", "exact determinant hull by vertex enumeration (small matrices)");
  hull->add_option("--file", hull_file, "matrix JSON file")->required();

  intdet::bench_config cfg;
  std::string bench_out;
  CLI::App* bench =
      app.add_subcommand("bench", "width-ratio benchmark over random matrices");
  bench->add_option("--sizes", cfg.sizes, "comma-separated matrix sizes")
      ->delimiter(',');
  bench->add_option("--radius", cfg.radius, "entry radius");
  bench->add_option("--count", cfg.count, "matrices per size");
  bench->add_option("--seed", cfg.seed, "generator seed");
  bench->add_flag("--symmetric", cfg.symmetric, "symmetric test matrices");
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");

  std::size_t gen_n = 0;
  double gen_radius = 0.0;
  std::uint64_t gen_seed = 1;
  bool gen_symmetric = false;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "write a random interval matrix");
  gen->add_option("--n", gen_n, "matrix size")->required();
  gen->add_option("--radius", gen_radius, "entry radius")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_flag("--symmetric", gen_symmetric, "mirror the upper triangle");
  gen->add_option("--out", gen_out, "output JSON file")->required();

  try {
    app.parse(argc, argv);
    if (*det) return run_det(det_file, det_method, det_precond, det_monotone);
    if (*hull) return run_hull(hull_file);
    if (*bench) return run_bench_cmd(cfg, bench_out);
    if (*gen) return run_gen(gen_n, gen_radius, gen_seed, gen_symmetric, gen_out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
