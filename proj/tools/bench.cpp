// Benchmarks the transcript-free kernel against the reference implementation
// and a parallel Monte-Carlo run against a single-threaded one.
//
//   gt_bench [n] [trials]    (defaults: n=200000, trials=2000)

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "grouptest/driver.hpp"
#include "grouptest/fast_run.hpp"
#include "grouptest/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const gt::Label n = argc > 1 ? static_cast<gt::Label>(std::atoll(argv[1])) : 200000;
  const std::int64_t trials = argc > 2 ? std::atoll(argv[2]) : 2000;
  const double p = 0.1;
  const int m = 7;

  gt::sim::InstanceSpec spec;
  spec.n = n;
  spec.model = gt::sim::Model::iid;
  spec.p = p;
  spec.seed = 12345;
  const gt::DefectivePattern pattern = gt::sim::generate(spec);

  std::cout << "instance: n=" << n << " p=" << p << " m=" << m << "\n";

  auto start = std::chrono::steady_clock::now();
  const gt::RunResult ref = gt::run_gbs(pattern, m);
  const double ref_time = seconds_since(start);

  start = std::chrono::steady_clock::now();
  gt::fast::PlainResult fast{};
  const int kernel_reps = 50;
  for (int i = 0; i < kernel_reps; ++i) fast = gt::fast::run_plain(pattern, m);
  const double fast_time = seconds_since(start) / kernel_reps;

  std::cout << "reference: " << ref.tests_used << " tests in " << ref_time * 1e3 << " ms\n";
  std::cout << "kernel:    " << fast.tests << " tests in " << fast_time * 1e3
            << " ms (avg of " << kernel_reps << ")\n";
  if (fast.tests != ref.tests_used) {
    std::cout << "MISMATCH between kernel and reference\n";
    return 1;
  }
  std::cout << "speedup:   " << (fast_time > 0 ? ref_time / fast_time : 0.0) << "x\n\n";

  spec.n = 20000;
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif

  start = std::chrono::steady_clock::now();
  const gt::sim::RunStats parallel =
      gt::sim::monte_carlo(spec, m, trials, gt::sim::TrialMode::plain);
  const double parallel_time = seconds_since(start);

#ifdef _OPENMP
  omp_set_num_threads(1);
#endif
  start = std::chrono::steady_clock::now();
  const gt::sim::RunStats serial =
      gt::sim::monte_carlo(spec, m, trials, gt::sim::TrialMode::plain);
  const double serial_time = seconds_since(start);
#ifdef _OPENMP
  omp_set_num_threads(max_threads);
#endif

  std::cout << "monte-carlo: n=" << spec.n << " trials=" << trials << "\n";
  std::cout << "serial:    " << serial_time * 1e3 << " ms ("
            << static_cast<double>(trials) / serial_time << " trials/s)\n";
  std::cout << "parallel:  " << parallel_time * 1e3 << " ms ("
            << static_cast<double>(trials) / parallel_time << " trials/s, " << max_threads
            << " threads)\n";
  if (serial.tests != parallel.tests || serial.mean_tests_per_item != parallel.mean_tests_per_item) {
    std::cout << "MISMATCH between serial and parallel results\n";
    return 1;
  }
  std::cout << "speedup:   " << serial_time / parallel_time << "x, results identical\n";
  return 0;
}
