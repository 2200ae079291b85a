#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "primeprod/selberg.hpp"
#include "primeprod/suppbound.hpp"

using namespace primeprod;

TEST_CASE("saturating case g = h = indicator of G") {
  // first term (1-eps)|G|, second unbounded
  SupportBoundInput in;
  in.group_size = 100;
  in.g_mass = 100.0;
  in.h_mass = 100.0;
  in.tail_energy = 0.0;
  in.epsilon = 0.25;
  SupportBound b = support_lower_bound(in);
  CHECK(!b.second_term.has_value());
  CHECK(b.first_term == doctest::Approx(75.0));
  CHECK(b.value() == doctest::Approx(75.0));
}

TEST_CASE("zero tail keeps only the first term") {
  SupportBoundInput in;
  in.group_size = 40;
  in.g_mass = 3.0;
  in.h_mass = 12.0;
  in.tail_energy = 0.0;
  in.epsilon = 0.1;
  SupportBound b = support_lower_bound(in);
  CHECK(!b.second_term.has_value());
  CHECK(b.value() == doctest::Approx(0.9 * 40.0 * 0.25));
}

TEST_CASE("degenerate h rejected") {
  SupportBoundInput in;
  in.group_size = 10;
  in.epsilon = 0.5;
  CHECK_THROWS_AS(support_lower_bound(in), std::invalid_argument);
  in.epsilon = 0.0;
  in.h_mass = 1.0;
  CHECK_THROWS_AS(support_lower_bound(in), std::invalid_argument);
}

TEST_CASE("epsilon moves the two terms in opposite directions") {
  SupportBoundInput in;
  in.group_size = 64;
  in.g_mass = 4.0;
  in.h_mass = 9.0;
  in.tail_energy = 2.5;
  double prev_first = 1e300, prev_second = -1.0;
  for (double eps : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    in.epsilon = eps;
    SupportBound b = support_lower_bound(in);
    REQUIRE(b.second_term.has_value());
    CHECK(b.first_term < prev_first);
    CHECK(*b.second_term > prev_second);
    prev_first = b.first_term;
    prev_second = *b.second_term;
  }

  // construct inputs where each branch is the active minimum
  in.epsilon = 0.01;  // tiny eps: second term ~ 0 dominates the min
  SupportBound small_eps = support_lower_bound(in);
  CHECK(small_eps.value() == doctest::Approx(*small_eps.second_term));
  in.epsilon = 0.99;  // eps near 1: first term ~ 0
  SupportBound big_eps = support_lower_bound(in);
  CHECK(big_eps.value() == doctest::Approx(big_eps.first_term));
}

TEST_CASE("soundness on random dominated pairs") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::uint64_t qs[] = {7, 24, 101, 150};
  for (int t = 0; t < 800; ++t) {
    auto g = UnitGroup::make(qs[t % 4]);
    GroupFunction gf(g), hf(g);
    for (std::size_t i = 0; i < gf.size(); ++i) {
      double h = unif(rng) < 0.3 ? 0.0 : unif(rng);
      double gg = unif(rng) < 0.4 ? 0.0 : unif(rng) * h;
      hf[i] = h;
      gf[i] = gg;
    }
    if (hf.sum().real() == 0.0) continue;
    double eps = 0.05 + 0.9 * unif(rng);
    SupportBoundInput in = spectral_stats(gf, hf, eps);
    SupportBound b = support_lower_bound(in);
    REQUIRE(b.value() <= double(gf.support_size()) + 1e-6);
  }
}

TEST_CASE("theorem1 pipeline at q = 10007") {
  auto g = UnitGroup::make(10007);
  Theorem1Row row = theorem1_pipeline(g, 0.05);
  CHECK(row.cube_free);
  CHECK(row.lower_bound_ratio <= row.actual_ratio);
  CHECK(row.actual_ratio > 0.375);
  CHECK(row.D == doctest::Approx(std::pow(10007.0, 0.70)));

  // first-term ratio equals fhat(chi0)/what(chi0) = 1 / well-approx ratio
  SieveWeights w(g, row.D);
  WellApproxReport wa = well_approx_ratio(w);
  CHECK(row.first_term_ratio == doctest::Approx(1.0 / wa.ratio).epsilon(1e-9));
}

TEST_CASE("pipeline precondition checks") {
  auto g = UnitGroup::make(101);
  CHECK_THROWS_AS(theorem1_pipeline(g, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(theorem1_pipeline(g, 0.0), std::invalid_argument);
}

TEST_CASE("support of f_z * f_z consists of two-prime products") {
  for (std::uint64_t q : {101, 211, 450}) {
    auto g = UnitGroup::make(q);
    double z = std::pow(double(q), 0.35);
    GroupFunction f = indicator_fz(g, z);
    if (f.support_size() == 0) continue;
    GroupFunction ff = convolve(f, f);
    auto primes = f.support_residues();
    std::set<std::uint64_t> products;
    for (auto a : primes)
      for (auto b : primes) products.insert(a * b % q);
    for (std::uint64_t n = 1; n < q; ++n)
      if (std::abs(ff.at_residue(n)) > 0.5) REQUIRE(products.count(n) == 1);
  }
}
