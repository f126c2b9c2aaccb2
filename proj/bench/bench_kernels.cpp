// Timing comparison between the OpenMP kernels and their serial reference
// implementations. Run without arguments for the full table, or with
// --smoke for a fast pass that just exercises every code path.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "l2dict/kernels.hpp"

using namespace l2dict;

namespace {

std::vector<double> random_buffer(std::mt19937_64& rng, size_t n) {
  std::vector<double> xs(n);
  for (double& x : xs) x = ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
  return xs;
}

std::vector<double> random_symmetric(std::mt19937_64& rng, int n) {
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
      a[static_cast<size_t>(i) * n + j] = a[static_cast<size_t>(j) * n + i] = v;
    }
  return a;
}

template <class F>
double time_ms(F&& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (ms < best) best = ms;
  }
  return best;
}

void report(const char* name, double serial_ms, double omp_ms) {
  std::printf("%-34s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, omp_ms, serial_ms / omp_ms);
}

}  // namespace

int main(int argc, char** argv) {
  const bool smoke = argc > 1 && std::strcmp(argv[1], "--smoke") == 0;
  std::mt19937_64 rng(99);

  const int eig_n = smoke ? 24 : 256;
  const int mm_n = smoke ? 32 : 384;
  const size_t samples = smoke ? 20000 : 2000000;
  const int sample_dim = 8;
  const size_t sum_n = smoke ? 100000 : 20000000;
  const int repeats = smoke ? 1 : 3;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    std::vector<double> a = random_symmetric(rng, eig_n);
    const double serial_ms =
        time_ms([&] { (void)kernels::serial::jacobi_eig(a.data(), eig_n, true); }, repeats);
    const double omp_ms = time_ms([&] { (void)kernels::jacobi_eig(a.data(), eig_n, true); }, repeats);
    char label[64];
    std::snprintf(label, sizeof(label), "jacobi_eig n=%d", eig_n);
    report(label, serial_ms, omp_ms);
  }
  {
    std::vector<double> a = random_buffer(rng, static_cast<size_t>(mm_n) * mm_n);
    std::vector<double> b = random_buffer(rng, static_cast<size_t>(mm_n) * mm_n);
    std::vector<double> c(static_cast<size_t>(mm_n) * mm_n);
    const double serial_ms =
        time_ms([&] { kernels::serial::matmul(a.data(), b.data(), c.data(), mm_n, mm_n, mm_n); }, repeats);
    const double omp_ms = time_ms([&] { kernels::matmul(a.data(), b.data(), c.data(), mm_n, mm_n, mm_n); }, repeats);
    char label[64];
    std::snprintf(label, sizeof(label), "matmul n=%d", mm_n);
    report(label, serial_ms, omp_ms);
  }
  {
    std::vector<double> data = random_buffer(rng, samples * sample_dim);
    std::vector<double> out(static_cast<size_t>(sample_dim) * sample_dim);
    const double serial_ms =
        time_ms([&] { kernels::serial::second_moment(data.data(), samples, sample_dim, out.data()); }, repeats);
    const double omp_ms =
        time_ms([&] { kernels::second_moment(data.data(), samples, sample_dim, out.data()); }, repeats);
    char label[64];
    std::snprintf(label, sizeof(label), "second_moment N=%zu dim=%d", samples, sample_dim);
    report(label, serial_ms, omp_ms);
  }
  {
    std::vector<double> xs = random_buffer(rng, sum_n);
    volatile double sink = 0.0;
    const double serial_ms = time_ms([&] { sink = kernels::serial::naive_sum(xs); }, repeats);
    const double omp_ms = time_ms([&] { sink = kernels::pairwise_sum(xs); }, repeats);
    (void)sink;
    char label[64];
    std::snprintf(label, sizeof(label), "sum N=%zu (naive vs pairwise)", sum_n);
    report(label, serial_ms, omp_ms);
  }
  return 0;
}
