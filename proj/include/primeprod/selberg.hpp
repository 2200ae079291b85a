#ifndef PRIMEPROD_SELBERG_HPP
#define PRIMEPROD_SELBERG_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "primeprod/charfourier.hpp"
#include "primeprod/modgroup.hpp"

namespace primeprod {

// Selberg sieve weights at level D, z = D^{1/2}:
//   G(z)   = sum_{n<=z} mu^2(n)/phi(n)
//   rho_d  = (d mu(d) / G(z)) sum_{n<=z, d|n} mu^2(n)/phi(n)   (rho_1 = 1)
//   lambda_d = sum_{[d1,d2]=d} rho_{d1} rho_{d2}
//   w(n)   = sum_{d|n} lambda_d = (sum_{d|n} rho_d)^2 >= 0
// Everything is computed in exact rationals while z stays below the exact
// ceiling (the upper-bound property is an exact inequality); doubles beyond.
class SieveWeights {
 public:
  static constexpr double kExactZLimit = 1e4;

  SieveWeights(UnitGroupPtr group, double level_D, double exact_z_limit = kExactZLimit);

  const UnitGroupPtr& group() const { return g_; }
  double level() const { return D_; }
  double z() const { return z_; }
  bool exact() const { return exact_; }

  double Gz() const { return Gz_d_; }
  const std::vector<double>& rho() const { return rho_d_; }  // index d, [0, zi]
  const std::vector<std::pair<std::uint64_t, double>>& lambda() const { return lambda_d_; }
  double lambda_at(std::uint64_t d) const;
  double max_abs_lambda() const;

  const mpq_class& Gz_exact() const { return Gz_q_; }
  const std::vector<mpq_class>& rho_exact() const { return rho_q_; }
  const std::vector<std::pair<std::uint64_t, mpq_class>>& lambda_exact() const {
    return lambda_q_;
  }

  // w(n) for n in [0, q); index 0 unused (w(0) = 0 by convention).
  std::vector<double> weight_table() const;
  std::vector<mpq_class> weight_table_exact() const;  // requires exact()

  // sum_{d|n} rho_d per n in [0, q); squaring it reproduces w.
  std::vector<double> rho_divisor_sums() const;
  std::vector<mpq_class> rho_divisor_sums_exact() const;

  GroupFunction weight_function() const;  // w restricted to the units

 private:
  UnitGroupPtr g_;
  double D_;
  double z_;
  std::uint64_t zi_;
  bool exact_;
  mpq_class Gz_q_;
  std::vector<mpq_class> rho_q_;
  std::vector<std::pair<std::uint64_t, mpq_class>> lambda_q_;
  double Gz_d_ = 0.0;
  std::vector<double> rho_d_;
  std::vector<std::pair<std::uint64_t, double>> lambda_d_;
};

struct WellApproxReport {
  double ratio = 0.0;        // what(chi0) / fhat_z(chi0)
  double reference = 0.0;    // 2 log q / log D
  double w_mass = 0.0;       // what(chi0)
  double f_mass = 0.0;       // fhat_z(chi0)
};
// Rejects a degenerate f_z (no primes in [z, q)).
WellApproxReport well_approx_ratio(const SieveWeights& w);

struct FourierScanReport {
  double trivial = 0.0;          // what(chi0)
  double max_nontrivial = 0.0;   // max_{chi != chi0} |what(chi)|
  std::uint32_t argmax_index = 0;
  double ratio = 0.0;            // max_nontrivial / trivial
  bool cube_free = true;         // scan hypothesis flag
};
FourierScanReport sieve_fourier_scan(const SieveWeights& w);

struct CharSumScanReport {
  double max_partial = 0.0;  // max_N |sum_{n<=N} chi(n)|
  std::uint64_t argmax_N = 0;
  double pv_bound = 0.0;     // sqrt(q) ln q
  std::array<double, 4> burgess_envelope{};  // N^{1-1/r} q^{(r+1)/(4r^2)}, r=1..4
};
// Rejects the trivial character.
CharSumScanReport char_sum_scan(const DirichletCharacter& chi);
// All nontrivial characters mod q, indexed by flat character index (entry 0
// is unused).  OpenMP-parallel across characters.
std::vector<CharSumScanReport> char_sum_scan_all(const UnitGroupPtr& group);

// alpha_0 = 1, alpha_r = (r^2+3r+1)/(4r(r+1)); decreasing to 1/4.
double burgess_exponent_ladder(int r);

}  // namespace primeprod

#endif
