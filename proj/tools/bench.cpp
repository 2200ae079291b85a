// Compares the OpenMP kernels against their serial reference implementations:
// group DFT (mixed-radix FFT vs naive double loop), convolution, weighted
// prime sums and character-sum scans.  Reports timings and the maximum
// deviation between the two routes.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "primeprod/analytic.hpp"
#include "primeprod/charfourier.hpp"
#include "primeprod/modgroup.hpp"
#include "primeprod/selberg.hpp"

using namespace primeprod;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

GroupFunction random_function(const UnitGroupPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GroupFunction f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = {dist(rng), dist(rng)};
  return f;
}

void bench_transform(std::uint64_t q) {
  auto g = UnitGroup::make(q);
  std::mt19937_64 rng(17);
  GroupFunction f = random_function(g, rng);

  auto t0 = Clock::now();
  Spectrum ref = transform_reference(f);
  double t_ref = seconds_since(t0);

  const int reps = 20;
  t0 = Clock::now();
  Spectrum fast = transform(f);
  for (int i = 1; i < reps; ++i) fast = transform(f);
  double t_fast = seconds_since(t0) / reps;

  double dev = 0.0;
  for (std::size_t i = 0; i < fast.size(); ++i)
    dev = std::max(dev, std::abs(fast[i] - ref[i]));

  std::printf("transform      q=%-7llu phi=%-6llu serial %.4fs  fast %.6fs  x%-8.1f dev %.2e\n",
              (unsigned long long)q, (unsigned long long)g->phi(), t_ref, t_fast,
              t_ref / t_fast, dev);
}

void bench_convolve(std::uint64_t q) {
  auto g = UnitGroup::make(q);
  std::mt19937_64 rng(23);
  GroupFunction a = random_function(g, rng);
  GroupFunction b = random_function(g, rng);

  auto t0 = Clock::now();
  GroupFunction ref = convolve_reference(a, b);
  double t_ref = seconds_since(t0);

  t0 = Clock::now();
  GroupFunction fast = convolve(a, b);
  double t_fast = seconds_since(t0);

  double dev = 0.0;
  for (std::size_t i = 0; i < fast.size(); ++i)
    dev = std::max(dev, std::abs(fast[i] - ref[i]));

  std::printf("convolve       q=%-7llu phi=%-6llu serial %.4fs  fast %.6fs  x%-8.1f dev %.2e\n",
              (unsigned long long)q, (unsigned long long)g->phi(), t_ref, t_fast,
              t_ref / t_fast, dev);
}

void bench_heathbrown(std::uint64_t q) {
  auto g = UnitGroup::make(q);

  auto t0 = Clock::now();
  std::complex<double> ref = heathbrown_raw_reference(g->trivial_character(), 1.2);
  double t_ref = seconds_since(t0);

  t0 = Clock::now();
  PrimeMassResult fast = heathbrown_sum(g->trivial_character(), 1.2);
  double t_fast = seconds_since(t0);

  std::printf("prime mass     q=%-7llu serial %.4fs  chunked %.4fs  x%-8.1f dev %.2e\n",
              (unsigned long long)q, t_ref, t_fast, t_ref / t_fast,
              std::abs(fast.raw - ref));
}

void bench_charsum(std::uint64_t q) {
  auto g = UnitGroup::make(q);
  auto chars = characters(g);

  auto t0 = Clock::now();
  auto all = char_sum_scan_all(g);
  double t_all = seconds_since(t0);

  t0 = Clock::now();
  double serial_max = 0.0;
  for (std::uint32_t i = 1; i < chars.size(); ++i)
    serial_max = std::max(serial_max, char_sum_scan(chars[i]).max_partial);
  double t_serial = seconds_since(t0);

  double par_max = 0.0;
  for (std::uint32_t i = 1; i < all.size(); ++i)
    par_max = std::max(par_max, all[i].max_partial);

  std::printf("charsum scan   q=%-7llu serial %.4fs  parallel %.4fs  x%-8.1f dev %.2e\n",
              (unsigned long long)q, t_serial, t_all, t_serial / t_all,
              std::abs(par_max - serial_max));
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  bench_transform(840);
  bench_transform(4999);
  bench_transform(10007);
  bench_convolve(840);
  bench_convolve(2310);
  bench_heathbrown(100003);
  bench_heathbrown(999983);
  bench_charsum(997);
  bench_charsum(1155);
  return 0;
}
