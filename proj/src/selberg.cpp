#include "primeprod/selberg.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "primeprod/kahan.hpp"
#include "primeprod/primes.hpp"

namespace primeprod {

namespace {

// mu and phi up to n by a factor sieve.
void mu_phi_tables(std::uint64_t n, std::vector<int>& mu, std::vector<std::uint64_t>& phi) {
  mu.assign(n + 1, 1);
  phi.resize(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) phi[i] = i;
  std::vector<char> composite(n + 1, 0);
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p; m <= n; m += p) {
      if (m > p) composite[m] = 1;
      phi[m] -= phi[m] / p;
      mu[m] = -mu[m];
    }
    if (p * p <= n)
      for (std::uint64_t m = p * p; m <= n; m += p * p) mu[m] = 0;
  }
  if (n >= 0) mu[0] = 0;
}

}  // namespace

SieveWeights::SieveWeights(UnitGroupPtr group, double level_D, double exact_z_limit)
    : g_(std::move(group)), D_(level_D) {
  const std::uint64_t q = g_->q();
  if (level_D < 4.0 || level_D > double(q))
    throw std::invalid_argument("SieveWeights: need 4 <= D <= q");
  z_ = std::sqrt(level_D);
  zi_ = static_cast<std::uint64_t>(std::floor(z_));
  exact_ = z_ <= exact_z_limit;

  std::vector<int> mu;
  std::vector<std::uint64_t> phi;
  mu_phi_tables(zi_, mu, phi);

  auto lcm = [](std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; };

  if (exact_) {
    // S_d = sum_{n<=z, d|n} mu^2(n)/phi(n)
    std::vector<mpq_class> S(zi_ + 1, mpq_class(0));
    for (std::uint64_t d = 1; d <= zi_; ++d)
      for (std::uint64_t n = d; n <= zi_; n += d)
        if (mu[n] != 0) S[d] += mpq_class(1, static_cast<unsigned long>(phi[n]));
    Gz_q_ = S[1];
    rho_q_.assign(zi_ + 1, mpq_class(0));
    for (std::uint64_t d = 1; d <= zi_; ++d) {
      if (mu[d] == 0) continue;
      rho_q_[d] = mpq_class(static_cast<long>(mu[d]) * static_cast<long>(d)) * S[d] / Gz_q_;
    }
    std::map<std::uint64_t, mpq_class> lam;
    for (std::uint64_t d1 = 1; d1 <= zi_; ++d1) {
      if (mu[d1] == 0) continue;
      for (std::uint64_t d2 = 1; d2 <= zi_; ++d2) {
        if (mu[d2] == 0) continue;
        lam[lcm(d1, d2)] += rho_q_[d1] * rho_q_[d2];
      }
    }
    lambda_q_.assign(lam.begin(), lam.end());
    // double mirrors
    Gz_d_ = Gz_q_.get_d();
    rho_d_.resize(zi_ + 1);
    for (std::uint64_t d = 0; d <= zi_; ++d) rho_d_[d] = rho_q_[d].get_d();
    lambda_d_.reserve(lambda_q_.size());
    for (auto& [d, v] : lambda_q_) lambda_d_.emplace_back(d, v.get_d());
  } else {
    std::vector<double> S(zi_ + 1, 0.0);
    for (std::uint64_t d = 1; d <= zi_; ++d) {
      KahanSum acc;
      for (std::uint64_t n = d; n <= zi_; n += d)
        if (mu[n] != 0) acc.add(1.0 / double(phi[n]));
      S[d] = acc.value();
    }
    Gz_d_ = S[1];
    rho_d_.assign(zi_ + 1, 0.0);
    for (std::uint64_t d = 1; d <= zi_; ++d)
      if (mu[d] != 0) rho_d_[d] = double(mu[d]) * double(d) * S[d] / Gz_d_;
    std::map<std::uint64_t, double> lam;
    for (std::uint64_t d1 = 1; d1 <= zi_; ++d1) {
      if (mu[d1] == 0) continue;
      for (std::uint64_t d2 = 1; d2 <= zi_; ++d2) {
        if (mu[d2] == 0) continue;
        lam[lcm(d1, d2)] += rho_d_[d1] * rho_d_[d2];
      }
    }
    lambda_d_.assign(lam.begin(), lam.end());
  }
}

double SieveWeights::lambda_at(std::uint64_t d) const {
  auto it = std::lower_bound(lambda_d_.begin(), lambda_d_.end(), d,
                             [](const auto& p, std::uint64_t v) { return p.first < v; });
  return (it != lambda_d_.end() && it->first == d) ? it->second : 0.0;
}

double SieveWeights::max_abs_lambda() const {
  double m = 0.0;
  for (auto& [d, v] : lambda_d_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> SieveWeights::weight_table() const {
  const std::uint64_t q = g_->q();
  std::vector<double> w(q, 0.0);
  for (auto& [d, v] : lambda_d_)
    for (std::uint64_t n = d; n < q; n += d) w[n] += v;
  return w;
}

std::vector<mpq_class> SieveWeights::weight_table_exact() const {
  if (!exact_) throw std::logic_error("weight_table_exact: weights built in double mode");
  const std::uint64_t q = g_->q();
  std::vector<mpq_class> w(q, mpq_class(0));
  for (auto& [d, v] : lambda_q_)
    for (std::uint64_t n = d; n < q; n += d) w[n] += v;
  return w;
}

std::vector<double> SieveWeights::rho_divisor_sums() const {
  const std::uint64_t q = g_->q();
  std::vector<double> s(q, 0.0);
  for (std::uint64_t d = 1; d <= zi_; ++d) {
    if (rho_d_[d] == 0.0) continue;
    for (std::uint64_t n = d; n < q; n += d) s[n] += rho_d_[d];
  }
  return s;
}

std::vector<mpq_class> SieveWeights::rho_divisor_sums_exact() const {
  if (!exact_) throw std::logic_error("rho_divisor_sums_exact: double mode");
  const std::uint64_t q = g_->q();
  std::vector<mpq_class> s(q, mpq_class(0));
  for (std::uint64_t d = 1; d <= zi_; ++d) {
    if (rho_q_[d] == 0) continue;
    for (std::uint64_t n = d; n < q; n += d) s[n] += rho_q_[d];
  }
  return s;
}

GroupFunction SieveWeights::weight_function() const {
  GroupFunction f(g_);
  std::vector<double> w = weight_table();
  for (std::uint64_t n = 1; n < g_->q(); ++n)
    if (g_->is_unit(n)) f.set_residue(n, w[n]);
  return f;
}

WellApproxReport well_approx_ratio(const SieveWeights& w) {
  const UnitGroupPtr& g = w.group();
  GroupFunction f = indicator_fz(g, w.z());
  WellApproxReport rep;
  rep.f_mass = f.sum().real();
  if (rep.f_mass == 0.0)
    throw std::invalid_argument("well_approx_ratio: f_z identically zero");
  rep.w_mass = w.weight_function().sum().real();
  rep.ratio = rep.w_mass / rep.f_mass;
  rep.reference = 2.0 * std::log(double(g->q())) / std::log(w.level());
  return rep;
}

FourierScanReport sieve_fourier_scan(const SieveWeights& w) {
  FourierScanReport rep;
  rep.cube_free = w.group()->cube_free();
  Spectrum s = transform(w.weight_function());
  rep.trivial = s.trivial_coefficient().real();
  for (std::size_t i = 1; i < s.size(); ++i) {
    double a = std::abs(s[i]);
    if (a > rep.max_nontrivial) {
      rep.max_nontrivial = a;
      rep.argmax_index = static_cast<std::uint32_t>(i);
    }
  }
  rep.ratio = rep.trivial != 0.0 ? rep.max_nontrivial / rep.trivial : 0.0;
  return rep;
}

namespace {

CharSumScanReport scan_one(const UnitGroup& G, const std::vector<std::uint32_t>& exps,
                           const std::vector<std::complex<double>>& roots) {
  const std::uint64_t q = G.q();
  CharSumScanReport rep;
  std::complex<double> run = 0.0;
  double best = -1.0;
  for (std::uint64_t n = 1; n <= q; ++n) {
    if (G.is_unit(n % q)) run += roots[G.phase_numerator(exps, n % q)];
    double mag = std::norm(run);
    if (mag > best) {
      best = mag;
      rep.argmax_N = n;
    }
  }
  rep.max_partial = std::sqrt(best);
  rep.pv_bound = std::sqrt(double(q)) * std::log(double(q));
  for (int r = 1; r <= 4; ++r)
    rep.burgess_envelope[r - 1] =
        std::pow(double(rep.argmax_N), 1.0 - 1.0 / r) *
        std::pow(double(q), double(r + 1) / (4.0 * r * r));
  return rep;
}

std::vector<std::complex<double>> exponent_roots(const UnitGroup& G) {
  const std::uint64_t L = G.group_exponent();
  std::vector<std::complex<double>> roots(L);
  for (std::uint64_t j = 0; j < L; ++j)
    roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * double(j) / double(L));
  return roots;
}

}  // namespace

CharSumScanReport char_sum_scan(const DirichletCharacter& chi) {
  if (chi.is_trivial())
    throw std::invalid_argument("char_sum_scan: trivial character rejected");
  const UnitGroup& G = *chi.group();
  return scan_one(G, chi.exponents(), exponent_roots(G));
}

std::vector<CharSumScanReport> char_sum_scan_all(const UnitGroupPtr& group) {
  const UnitGroup& G = *group;
  const std::uint32_t count = G.character_count();
  std::vector<CharSumScanReport> out(count);
  auto roots = exponent_roots(G);
  const std::size_t s = G.component_orders().size();
#pragma omp parallel for schedule(dynamic, 16) if (count > 64 && !omp_in_parallel())
  for (long long i = 1; i < static_cast<long long>(count); ++i) {
    std::vector<std::uint32_t> exps(s);
    G.index_digits(static_cast<std::uint32_t>(i), exps.data());
    out[static_cast<std::size_t>(i)] = scan_one(G, exps, roots);
  }
  return out;
}

double burgess_exponent_ladder(int r) {
  if (r < 0) throw std::invalid_argument("burgess_exponent_ladder: r >= 0 required");
  if (r == 0) return 1.0;
  double rr = r;
  return (rr * rr + 3.0 * rr + 1.0) / (4.0 * rr * (rr + 1.0));
}

}  // namespace primeprod
