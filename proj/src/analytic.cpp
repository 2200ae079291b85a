#include "primeprod/analytic.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "primeprod/errors.hpp"
#include "primeprod/kahan.hpp"
#include "primeprod/primes.hpp"

namespace primeprod {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 1 << 15;  // fixed reduction chunking
}  // namespace

double WeightFunction::operator()(double t) const {
  if (t < 0.0) throw std::invalid_argument("WeightFunction: t >= 0 required");
  return t <= alpha ? alpha - t : 0.0;
}

std::complex<double> laplace_weight_transform(double alpha, std::complex<double> z) {
  if (std::abs(z) < 1e-4) {
    // sum_{j>=0} (-alpha)^{j+2} z^j / (j+2)!  truncated well below 1e-16
    std::complex<double> sum = 0.0;
    double coef = alpha * alpha / 2.0;  // j = 0
    std::complex<double> zp = 1.0;
    for (int j = 0; j <= 8; ++j) {
      sum += coef * zp;
      zp *= z;
      coef *= -alpha / double(j + 3);
    }
    return sum;
  }
  return (std::exp(-alpha * z) - (1.0 - alpha * z)) / (z * z);
}

namespace {

struct PrimeTermTable {
  std::vector<std::uint64_t> primes;  // coprime to q, <= q^alpha
  std::vector<double> weight;        // (log p / p) f(log p / log q)
};

PrimeTermTable prime_terms(const UnitGroup& G, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("heathbrown_sum: alpha in (0, 2] required");
  const std::uint64_t q = G.q();
  const double logq = std::log(double(q));
  const double limit_d = std::pow(double(q), alpha);
  if (limit_d > double(kSieveCeiling))
    throw ResourceLimitError("heathbrown_sum: q^alpha exceeds the sieve ceiling");
  const std::uint64_t limit = static_cast<std::uint64_t>(limit_d);
  WeightFunction f{alpha};
  PrimeTermTable t;
  auto snap = primes_snapshot(limit);
  for (std::uint64_t p : primes_leq(snap, limit)) {
    if (q % p == 0) continue;
    double lp = std::log(double(p));
    t.primes.push_back(p);
    t.weight.push_back(lp / double(p) * f(lp / logq));
  }
  return t;
}

double prime_power_mass(const UnitGroup& G, double alpha) {
  const std::uint64_t q = G.q();
  const double logq = std::log(double(q));
  const double limit = std::pow(double(q), alpha);
  WeightFunction f{alpha};
  KahanSum acc;
  auto snap = primes_snapshot(static_cast<std::uint64_t>(std::sqrt(limit)) + 1);
  for (std::uint64_t p : *snap) {
    double pk = double(p) * double(p);
    if (pk > limit) break;
    double lp = std::log(double(p));
    for (int k = 2; pk <= limit; ++k, pk *= double(p))
      acc.add(lp / pk * f(std::log(pk) / logq));
  }
  return acc.value();
}

}  // namespace

PrimeMassResult heathbrown_sum(const DirichletCharacter& chi, double alpha) {
  const UnitGroup& G = *chi.group();
  PrimeTermTable t = prime_terms(G, alpha);
  const std::size_t n = t.primes.size();
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::complex<double>> partial(chunks, 0.0);
  const bool trivial = chi.is_trivial();
  const std::uint64_t L = G.group_exponent();
  const auto& exps = chi.exponents();

#pragma omp parallel for schedule(dynamic) if (chunks > 1 && !omp_in_parallel())
  for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(lo + kChunk, n);
    KahanComplexSum acc;
    for (std::size_t i = lo; i < hi; ++i) {
      if (trivial) {
        acc.add(t.weight[i]);
      } else {
        std::int64_t num = G.phase_numerator(exps, t.primes[i]);
        acc.add(std::polar(t.weight[i], 2.0 * kPi * double(num) / double(L)));
      }
    }
    partial[static_cast<std::size_t>(c)] = acc.value();
  }

  KahanComplexSum total;
  for (const auto& p : partial) total.add(p);  // fixed combine order

  PrimeMassResult r;
  r.alpha = alpha;
  r.raw = total.value();
  const double logq = std::log(double(G.q()));
  r.normalized = 2.0 / (alpha * alpha * logq) * r.raw.real();
  r.prime_power_mass = prime_power_mass(G, alpha);
  return r;
}

std::complex<double> heathbrown_raw_reference(const DirichletCharacter& chi, double alpha) {
  const UnitGroup& G = *chi.group();
  PrimeTermTable t = prime_terms(G, alpha);
  const bool trivial = chi.is_trivial();
  const std::uint64_t L = G.group_exponent();
  const auto& exps = chi.exponents();
  KahanComplexSum acc;
  for (std::size_t i = 0; i < t.primes.size(); ++i) {
    if (trivial) {
      acc.add(t.weight[i]);
    } else {
      std::int64_t num = G.phase_numerator(exps, t.primes[i]);
      acc.add(std::polar(t.weight[i], 2.0 * kPi * double(num) / double(L)));
    }
  }
  return acc.value();
}

std::vector<double> coset_masses(const UnitGroupPtr& group, double alpha,
                                 const std::function<std::uint32_t(std::uint32_t)>& classify,
                                 std::uint32_t num_labels) {
  const UnitGroup& G = *group;
  PrimeTermTable t = prime_terms(G, alpha);
  std::vector<KahanSum> acc(num_labels);
  for (std::size_t i = 0; i < t.primes.size(); ++i) {
    std::uint32_t label = classify(G.unit_index(t.primes[i]));
    if (label >= num_labels)
      throw std::invalid_argument("coset_masses: label out of range");
    acc[label].add(t.weight[i]);
  }
  const double norm = 2.0 / (alpha * alpha * std::log(double(G.q())));
  std::vector<double> out(num_labels);
  for (std::uint32_t l = 0; l < num_labels; ++l) out[l] = norm * acc[l].value();
  return out;
}

namespace {

int inverse_mod8(int j) {
  for (int t = 1; t < 8; t += 2)
    if (j * t % 8 == 1) return t;
  throw std::logic_error("inverse_mod8: even input");
}

}  // namespace

CaseCertificate thm2_case_certificate(int i, int j, double M, double N, double tol) {
  CaseCertificate cert;
  cert.M = M;
  cert.N = N;
  cert.tol = tol;
  if (i < 0 || i >= 8 || j < 0 || j >= 8 || i % 2 != 0 || j % 2 != 1) {
    // A0 = {x^i, x^j} with i-j even lies in a coset of <x^2>
    cert.case_name = "coset_degenerate";
    return cert;
  }
  // absorb floating dust from grid generation; genuinely negative masses or a
  // vanishing total are outside the hypothesis and reported as such
  if (M < 0.0 && M >= -1e-12) M = 0.0;
  if (N < 0.0 && N >= -1e-12) N = 0.0;
  cert.hypothesis_ok = M >= 0.0 && N >= 0.0 && std::abs(M + N - 1.0) <= tol;
  if (M + N <= 0.0 || M < 0.0 || N < 0.0) {
    cert.case_name = i == 0 ? "i0" : (i == 4 ? "i4" : "i26");
    return cert;
  }

  // normalize the mass split to unit total; the inequality system with
  // M+N = 1 exactly is infeasible for every case
  const double s = M + N;
  const double m = M / s, n = N / s;
  const int jbar = inverse_mod8(j);

  auto re_chi = [](int t, int l) {  // Re chi1^t(x^l) with chi1(x) = e(1/8)
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    static const double table[8] = {1.0,  inv_sqrt2, 0.0, -inv_sqrt2,
                                    -1.0, -inv_sqrt2, 0.0, inv_sqrt2};
    return table[t * l % 8];  // exact at the axis points
  };
  auto add_ineq = [&](const std::string& name, int t) {
    CaseInequality iq;
    iq.name = name;
    iq.lhs = re_chi(t, i) * m + re_chi(t, j) * n;
    iq.rhs = 0.25;
    iq.satisfied = iq.lhs <= iq.rhs;
    cert.inequalities.push_back(iq);
  };

  const double sqrt8 = std::sqrt(8.0);
  if (i == 0) {
    cert.case_name = "i0";
    add_ineq("M + N/sqrt2", jbar);
    cert.combined_bound = std::sqrt(2.0) * 0.25;  // M+N <= sqrt2/4 if it held
  } else if (i == 2 || i == 6) {
    cert.case_name = "i26";
    add_ineq("N/sqrt2", jbar);
    add_ineq("M - N", 4);
    cert.combined_bound = (sqrt8 + 1.0) / 4.0;  // (M-N) + sqrt8 (N/sqrt2)
  } else {  // i == 4
    cert.case_name = "i4";
    add_ineq("M", 2);
    add_ineq("-M + N/sqrt2", jbar);
    cert.combined_bound = (sqrt8 + 1.0) / 4.0;  // sqrt2(-M+N/sqrt2) + (sqrt2+1)M
  }

  for (const auto& iq : cert.inequalities)
    if (!iq.satisfied) cert.contradiction_found = true;
  // all case inequalities holding would cap the unit mass below 1
  if (!cert.contradiction_found && cert.combined_bound < 1.0)
    cert.contradiction_found = true;
  return cert;
}

double thm3_cosine_value(double z) {
  return 2.7 * std::cos(2.0 * 2.0 * kPi * z) + 1.8 * std::cos(3.0 * 2.0 * kPi * z) +
         0.29 * std::cos(6.0 * 2.0 * kPi * z) - 1.0;
}

CosineCertificate thm3_cosine_certificate(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1e-4))
    throw std::invalid_argument("thm3_cosine_certificate: grid_step <= 1e-4 required");
  CosineCertificate cert;
  cert.lo = 10.0 / 29.0;
  cert.hi = 19.0 / 29.0;
  cert.grid_step = grid_step;
  cert.value_at_half = thm3_cosine_value(0.5);
  const std::uint64_t steps =
      static_cast<std::uint64_t>(std::ceil((cert.hi - cert.lo) / grid_step));
  double best = thm3_cosine_value(cert.lo);
  double argbest = cert.lo;
  for (std::uint64_t t = 1; t <= steps; ++t) {
    double z = std::min(cert.lo + double(t) * grid_step, cert.hi);
    double v = thm3_cosine_value(z);
    if (v < best) {
      best = v;
      argbest = z;
    }
  }
  cert.min_value = best;
  // symmetric about 1/2: the minimum appears at a mirror pair; report the
  // right-half representative
  cert.argmin = argbest < 0.5 ? 1.0 - argbest : argbest;
  cert.positive_on_interval = best > 0.0;
  return cert;
}

MCombination thm3_M_combination(const DirichletCharacter& chi1, double alpha) {
  const std::uint64_t ord = chi1.order();
  bool ok = false;
  for (int k = 0; k <= 9; ++k)
    if ((3 * k + 2) % ord == 0) ok = true;
  if (!ok)
    throw std::invalid_argument(
        "thm3_M_combination: chi1 order must divide 3k+2 for some k <= 9");
  MCombination r;
  r.coefficient_sum = 2.7 + 1.8 + 0.29;
  r.S[0] = heathbrown_sum(chi1.pow(2), alpha).normalized;
  r.S[1] = heathbrown_sum(chi1.pow(3), alpha).normalized;
  r.S[2] = heathbrown_sum(chi1.pow(6), alpha).normalized;
  r.S[3] = heathbrown_sum(chi1.group()->trivial_character(), alpha).normalized;
  r.value = 2.7 * r.S[0] + 1.8 * r.S[1] + 0.29 * r.S[2] - r.S[3];
  return r;
}

std::uint64_t least_prime_with_char_value(const DirichletCharacter& chi, int target,
                                          std::uint64_t ceiling) {
  if (chi.order() != 2)
    throw std::invalid_argument("least_prime_with_char_value: chi must be real nontrivial");
  if (target != 1 && target != -1)
    throw std::invalid_argument("least_prime_with_char_value: target must be +-1");
  const UnitGroup& G = *chi.group();
  const std::uint64_t q = G.q();
  const std::uint64_t half = G.group_exponent() / 2;
  ceiling = std::min<std::uint64_t>(ceiling, kSieveCeiling);
  std::uint64_t scanned = 0;
  for (std::uint64_t stage = 1 << 12; scanned < ceiling;) {
    stage = std::min<std::uint64_t>(stage, ceiling);
    auto snap = primes_snapshot(stage);
    for (std::uint64_t p : primes_leq(snap, stage)) {
      if (p <= scanned) continue;
      if (q % p == 0) continue;
      // order-2 phase numerators are exactly 0 or L/2
      std::int64_t num = chi.phase_numerator(p % q);
      int value = (num == 0) ? 1 : (static_cast<std::uint64_t>(num) == half ? -1 : 0);
      if (value == target) return p;
    }
    scanned = stage;
    stage *= 16;
  }
  throw ResourceLimitError("least_prime_with_char_value: search ceiling exceeded");
}

}  // namespace primeprod
