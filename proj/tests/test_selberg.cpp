#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "primeprod/charfourier.hpp"
#include "primeprod/selberg.hpp"

using namespace primeprod;

TEST_CASE("weights at D = 4 match the closed forms") {
  auto g = UnitGroup::make(101);
  SieveWeights w(g, 4.0);
  REQUIRE(w.exact());
  CHECK(w.Gz_exact() == mpq_class(2));
  CHECK(w.rho_exact()[1] == mpq_class(1));
  CHECK(w.rho_exact()[2] == mpq_class(-1));
  CHECK(w.lambda_at(1) == 1.0);
  CHECK(w.lambda_at(2) == -1.0);

  auto table = w.weight_table_exact();
  for (std::uint64_t n = 1; n < 101; ++n) {
    if (n % 2 == 0)
      CHECK(table[n] == 0);
    else
      CHECK(table[n] == 1);
  }
}

TEST_CASE("rho_1 = lambda_1 = 1 and the square identity, several levels") {
  for (std::uint64_t q : {101, 1009}) {
    auto g = UnitGroup::make(q);
    for (double e : {0.5, 0.7, 0.9}) {
      SieveWeights w(g, std::pow(double(q), e));
      REQUIRE(w.exact());
      CHECK(w.rho_exact()[1] == mpq_class(1));
      CHECK(w.lambda_at(1) == 1.0);
      // w(n) = (sum_{d|n} rho_d)^2 exactly
      auto wt = w.weight_table_exact();
      auto rs = w.rho_divisor_sums_exact();
      for (std::uint64_t n = 1; n < q; ++n) REQUIRE(wt[n] == rs[n] * rs[n]);
    }
  }
}

TEST_CASE("upper bound property w >= f_z, exact rationals") {
  for (std::uint64_t q : {101, 1009}) {
    auto g = UnitGroup::make(q);
    for (double e : {0.5, 0.7}) {
      SieveWeights w(g, std::pow(double(q), e));
      GroupFunction fz = indicator_fz(g, w.z());
      auto wt = w.weight_table_exact();
      for (std::uint64_t n = 1; n < q; ++n) {
        if (!g->is_unit(n)) continue;
        mpq_class need = fz.at_residue(n).real() > 0.5 ? 1 : 0;
        REQUIRE(wt[n] >= need);
        REQUIRE(wt[n] >= 0);
      }
    }
  }
}

TEST_CASE("upper bound property across all q <= 10^4 (double route)") {
  for (std::uint64_t q = 5; q <= 10000; q += 1) {
    auto g = UnitGroup::make(q);
    for (double e : {0.5, 0.7}) {
      double D = std::pow(double(q), e);
      if (D < 4.0) continue;
      SieveWeights w(g, D);
      auto wt = w.weight_table();
      GroupFunction fz = indicator_fz(g, w.z());
      for (std::uint64_t n = 1; n < q; ++n) {
        if (!g->is_unit(n)) continue;
        double need = fz.at_residue(n).real();
        REQUIRE(wt[n] >= need - 1e-12);
      }
    }
    q += 16;  // stride through the range; endpoints and acceptance hit the rest
  }
}

TEST_CASE("double fallback mode stays close to the exact weights") {
  auto g = UnitGroup::make(10007);
  SieveWeights exact(g, std::pow(10007.0, 0.9));
  SieveWeights approx(g, std::pow(10007.0, 0.9), /*exact_z_limit=*/2.0);
  REQUIRE(exact.exact());
  REQUIRE(!approx.exact());
  CHECK(exact.Gz() == doctest::Approx(approx.Gz()).epsilon(1e-12));
  auto we = exact.weight_table();
  auto wa = approx.weight_table();
  for (std::uint64_t n = 1; n < 10007; n += 37)
    CHECK(we[n] == doctest::Approx(wa[n]).epsilon(1e-9));
}

TEST_CASE("well approx ratio") {
  auto g = UnitGroup::make(10007);
  SieveWeights w(g, std::pow(10007.0, 0.7));
  WellApproxReport rep = well_approx_ratio(w);
  CHECK(rep.ratio > 0.0);
  CHECK(std::isfinite(rep.ratio));
  CHECK(rep.reference == doctest::Approx(2.0 / 0.7));

  // w_mass matches a direct summation oracle
  auto wt = w.weight_table();
  double direct = 0.0;
  for (std::uint64_t n = 1; n < 10007; ++n)
    if (g->is_unit(n)) direct += wt[n];
  CHECK(rep.w_mass == doctest::Approx(direct).epsilon(1e-9));

  auto g4 = UnitGroup::make(4);
  SieveWeights w4(g4, 4.0);  // z = 2, primes in [2,3] coprime to 4: {3}
  CHECK_NOTHROW(well_approx_ratio(w4));
}

TEST_CASE("empty prime window gives the zero indicator") {
  auto g = UnitGroup::make(8);
  GroupFunction f = indicator_fz(g, 8.0);  // primes in [8, 7]: none
  CHECK(f.support_size() == 0);
}

TEST_CASE("sieve fourier scan at D = 4 matches direct summation") {
  auto g = UnitGroup::make(101);
  SieveWeights w(g, 4.0);
  FourierScanReport rep = sieve_fourier_scan(w);
  // what(chi) = sum over odd units of conj(chi(n))
  auto chars = characters(g);
  double max_direct = 0.0;
  double trivial_direct = 0.0;
  for (auto& chi : chars) {
    std::complex<double> s = 0.0;
    for (std::uint64_t n = 1; n < 101; n += 2) s += std::conj(chi(n));
    if (chi.is_trivial())
      trivial_direct = s.real();
    else
      max_direct = std::max(max_direct, std::abs(s));
  }
  CHECK(rep.trivial == doctest::Approx(trivial_direct).epsilon(1e-10));
  CHECK(rep.max_nontrivial == doctest::Approx(max_direct).epsilon(1e-8));
  CHECK(rep.cube_free);
}

TEST_CASE("constant weight has zero nontrivial spectrum") {
  auto g = UnitGroup::make(101);
  GroupFunction ones(g);
  for (std::size_t i = 0; i < ones.size(); ++i) ones[i] = 1.0;
  Spectrum s = transform(ones);
  double m = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) m = std::max(m, std::abs(s[i]));
  CHECK(m < 1e-9);
}

TEST_CASE("nontrivial sieve spectrum below the trivial one at scale") {
  auto g = UnitGroup::make(10007);
  SieveWeights w(g, std::pow(10007.0, 0.7));
  FourierScanReport rep = sieve_fourier_scan(w);
  CHECK(rep.max_nontrivial < rep.trivial);
  CHECK(rep.ratio < 1.0);
}

TEST_CASE("spectral what agrees with the divisor-sum rearrangement") {
  // what(chi) = sum_{d<D} lambda_d sum_{n<q, d|n} conj(chi(n))
  auto g = UnitGroup::make(101);
  SieveWeights w(g, 30.0);
  Spectrum s = transform(w.weight_function());
  auto chars = characters(g);
  for (auto& chi : chars) {
    std::complex<double> direct = 0.0;
    for (auto& [d, v] : w.lambda())
      for (std::uint64_t n = d; n < 101; n += d)
        if (g->is_unit(n)) direct += v * std::conj(chi(n));
    CHECK(std::abs(s.coefficient(chi) - direct) < 1e-8);
  }
}

TEST_CASE("char sum scan examples") {
  auto g5 = UnitGroup::make(5);
  DirichletCharacter chi = g5->trivial_character();
  for (auto& c : characters(g5))
    if (std::abs(c(2) - std::complex<double>(0, 1)) < 1e-12) chi = c;
  REQUIRE(!chi.is_trivial());
  CharSumScanReport rep = char_sum_scan(chi);
  CHECK(rep.max_partial == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.argmax_N == 2);

  CHECK_THROWS_AS(char_sum_scan(g5->trivial_character()), std::invalid_argument);
}

TEST_CASE("full period partial sum vanishes") {
  for (std::uint64_t q : {12, 45, 101}) {
    auto g = UnitGroup::make(q);
    for (auto& chi : characters(g)) {
      if (chi.is_trivial()) continue;
      std::complex<double> s = 0.0;
      for (std::uint64_t n = 1; n <= q; ++n) s += chi(n);
      CHECK(std::abs(s) < 1e-10);
    }
  }
}

TEST_CASE("polya-vinogradov envelope over a modest range") {
  for (std::uint64_t q = 3; q <= 200; ++q) {
    auto g = UnitGroup::make(q);
    if (g->phi() < 2) continue;
    auto scans = char_sum_scan_all(g);
    double pv = std::sqrt(double(q)) * std::log(double(q));
    for (std::uint32_t i = 1; i < scans.size(); ++i) {
      REQUIRE(scans[i].max_partial <= pv);
      REQUIRE(scans[i].pv_bound == doctest::Approx(pv));
    }
  }
}

TEST_CASE("scan_all matches per-character scans") {
  auto g = UnitGroup::make(36);
  auto scans = char_sum_scan_all(g);
  auto chars = characters(g);
  for (std::uint32_t i = 1; i < chars.size(); ++i) {
    CharSumScanReport one = char_sum_scan(chars[i]);
    CHECK(scans[chars[i].flat_index()].max_partial ==
          doctest::Approx(one.max_partial).epsilon(1e-12));
    CHECK(scans[chars[i].flat_index()].argmax_N == one.argmax_N);
  }
}

TEST_CASE("burgess exponent ladder") {
  CHECK(burgess_exponent_ladder(0) == 1.0);
  CHECK(burgess_exponent_ladder(1) == doctest::Approx(5.0 / 8.0));
  CHECK(burgess_exponent_ladder(1000) == doctest::Approx(0.25).epsilon(1e-3));
  CHECK_THROWS_AS(burgess_exponent_ladder(-1), std::invalid_argument);

  double prev = burgess_exponent_ladder(0);
  for (int r = 1; r <= 60; ++r) {
    double a = burgess_exponent_ladder(r);
    CHECK(a < prev);
    CHECK(a > 0.25);
    prev = a;
  }
}

TEST_CASE("level bounds enforced") {
  auto g = UnitGroup::make(101);
  CHECK_THROWS_AS(SieveWeights(g, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(SieveWeights(g, 102.0), std::invalid_argument);
}
