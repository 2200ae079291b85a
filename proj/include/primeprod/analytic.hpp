#ifndef PRIMEPROD_ANALYTIC_HPP
#define PRIMEPROD_ANALYTIC_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "primeprod/modgroup.hpp"

namespace primeprod {

// Triangular cutoff: f(t) = alpha - t on [0, alpha], 0 beyond; t < 0 rejected.
struct WeightFunction {
  double alpha = 1.0;
  double operator()(double t) const;
};

// F(z) = integral_0^inf f(t) e^{-zt} dt = (e^{-alpha z} - (1 - alpha z)) / z^2,
// = alpha^2/2 at z = 0; the power series is used for |z| < 1e-4.
// Re F >= 0 on the closed right half-plane.
std::complex<double> laplace_weight_transform(double alpha, std::complex<double> z);

// Weighted prime mass sum_p chi(p) (log p / p) f(log p / log q) over primes
// p <= q^alpha coprime to q; prime powers are excluded by construction and
// their mass reported separately.  normalized = (2/(alpha^2 log q)) Re raw.
struct PrimeMassResult {
  double alpha = 0.0;
  std::complex<double> raw;
  double normalized = 0.0;
  double prime_power_mass = 0.0;  // sum over p^k <= q^alpha, k >= 2 (chi0 weight)
};

// Chunked Kahan reduction in fixed order: bit-identical across thread counts.
PrimeMassResult heathbrown_sum(const DirichletCharacter& chi, double alpha);
// Strictly serial single-accumulator route, kept as the summation oracle.
std::complex<double> heathbrown_raw_reference(const DirichletCharacter& chi, double alpha);

// Per-label normalized masses: classify maps unit indices to labels
// < num_labels; masses sum to the chi0-normalized total.
std::vector<double> coset_masses(const UnitGroupPtr& group, double alpha,
                                 const std::function<std::uint32_t(std::uint32_t)>& classify,
                                 std::uint32_t num_labels);

// Case certificate for the order-8 quotient scenario: the primes hypothesis
// puts mass M on the coset x^i H and N on x^j H with M + N close to 1, while
// the weighted-prime-sum bound caps Re(chi(x^i) M + chi(x^j) N) at 1/4 for
// the lifted characters chi = chi1^t.  The certificate normalizes (M, N) to
// unit total mass and evaluates each case's inequality system there; the
// combined bound (sqrt8+1)/4 < 1 is reported alongside.
struct CaseInequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.25;
  bool satisfied = true;
};

struct CaseCertificate {
  std::string case_name;  // "i0" | "i26" | "i4" | "coset_degenerate"
  bool contradiction_found = false;
  bool hypothesis_ok = true;  // M, N >= 0 and |M+N-1| <= tol
  double M = 0.0, N = 0.0, tol = 0.0;
  std::vector<CaseInequality> inequalities;
  double combined_bound = 0.0;  // derived cap on M+N (0 when unused)
};

CaseCertificate thm2_case_certificate(int i, int j, double M, double N, double tol = 0.05);

// 2.7 cos(2*2pi z) + 1.8 cos(3*2pi z) + 0.29 cos(6*2pi z) - 1 scanned over
// [10/29, 19/29]; symmetric about z = 1/2.
double thm3_cosine_value(double z);

struct CosineCertificate {
  double lo = 0.0, hi = 0.0;
  double grid_step = 0.0;
  double min_value = 0.0;
  double argmin = 0.0;
  double value_at_half = 0.0;
  bool positive_on_interval = false;
};

// grid_step <= 1e-4 required.
CosineCertificate thm3_cosine_certificate(double grid_step);

// M = 2.7 S(chi1^2) + 1.8 S(chi1^3) + 0.29 S(chi1^6) - S(chi0) with the
// alpha = 6/5 normalization; chi1 must have order dividing 3k+2, k <= 9.
struct MCombination {
  double value = 0.0;
  std::array<double, 4> S{};  // S(chi1^2), S(chi1^3), S(chi1^6), S(chi0)
  double coefficient_sum = 0.0;  // 2.7 + 1.8 + 0.29
};
MCombination thm3_M_combination(const DirichletCharacter& chi1, double alpha = 1.2);

// Least prime p coprime to q with chi(p) = target (+1 or -1); chi must be
// real and nontrivial.  Throws ResourceLimitError past the search ceiling.
std::uint64_t least_prime_with_char_value(const DirichletCharacter& chi, int target,
                                          std::uint64_t ceiling = 10'000'000);

}  // namespace primeprod

#endif
