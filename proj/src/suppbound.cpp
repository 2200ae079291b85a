#include "primeprod/suppbound.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "primeprod/bitset.hpp"
#include "primeprod/kahan.hpp"
#include "primeprod/selberg.hpp"

namespace primeprod {

SupportBound support_lower_bound(const SupportBoundInput& in) {
  if (!(in.epsilon > 0.0 && in.epsilon < 1.0))
    throw std::invalid_argument("support_lower_bound: epsilon in (0,1) required");
  if (in.g_mass < 0.0 || in.h_mass < 0.0 || in.tail_energy < 0.0)
    throw std::invalid_argument("support_lower_bound: negative spectral statistic");
  if (in.h_mass == 0.0 && in.tail_energy == 0.0)
    throw std::invalid_argument("support_lower_bound: h identically zero");
  if (in.h_mass == 0.0)
    throw std::invalid_argument("support_lower_bound: h_mass = 0 with g <= h");
  SupportBound b;
  const double G = double(in.group_size);
  b.first_term = (1.0 - in.epsilon) * G * in.g_mass / in.h_mass;
  if (in.tail_energy > 0.0)
    b.second_term = G * in.epsilon * in.epsilon * in.g_mass * in.g_mass / in.tail_energy;
  return b;
}

SupportBoundInput spectral_stats(const GroupFunction& g, const GroupFunction& h,
                                 double epsilon) {
  SupportBoundInput in;
  in.epsilon = epsilon;
  in.group_size = g.group()->phi();
  in.g_mass = g.sum().real();
  Spectrum sh = transform(h);
  in.h_mass = sh.trivial_coefficient().real();
  in.tail_energy = sh.tail_energy();
  return in;
}

Theorem1Row theorem1_pipeline(const UnitGroupPtr& group, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.125))
    throw std::invalid_argument("theorem1_pipeline: epsilon in (0, 1/8) required");
  const std::uint64_t q = group->q();
  Theorem1Row row;
  row.q = q;
  row.cube_free = group->cube_free();
  row.epsilon = epsilon;
  row.D = std::pow(double(q), 0.75 - epsilon);
  row.z = std::sqrt(row.D);

  GroupFunction f = indicator_fz(group, row.z);
  const double f_mass = f.sum().real();
  if (f_mass == 0.0)
    throw std::invalid_argument("theorem1_pipeline: no primes in [z, q)");

  SieveWeights weights(group, row.D);
  GroupFunction w = weights.weight_function();

  Spectrum fhat = transform(f);
  Spectrum what = transform(w);
  const double w_mass = what.trivial_coefficient().real();
  row.first_term_ratio = f_mass / w_mass;

  // h = f * w spectrally; tail = sum_{chi != chi0} |fhat what|^2
  KahanSum tail;
  for (std::size_t i = 1; i < fhat.size(); ++i)
    tail.add(std::norm(fhat[i] * what[i]));

  SupportBoundInput in;
  in.epsilon = epsilon;
  in.group_size = group->phi();
  in.g_mass = f_mass * f_mass;
  in.h_mass = f_mass * w_mass;
  in.tail_energy = tail.value();
  SupportBound bound = support_lower_bound(in);
  row.lower_bound_ratio = bound.value() / double(group->phi());
  row.spectral_margin =
      in.tail_energy > 0.0
          ? double(group->phi()) * epsilon * epsilon * in.g_mass * in.g_mass /
                    in.tail_energy -
                double(q)
          : std::numeric_limits<double>::infinity();

  // exact support of f*f by direct products of the prime residues
  Bitset supp(group->phi());
  std::vector<std::uint64_t> primes_in_f = f.support_residues();
  for (std::uint64_t a : primes_in_f)
    for (std::uint64_t b : primes_in_f)
      supp.set(group->unit_index(group->mul(a, b)));
  row.actual_ratio = double(supp.count()) / double(group->phi());
  return row;
}

}  // namespace primeprod
