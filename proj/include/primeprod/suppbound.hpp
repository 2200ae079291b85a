#ifndef PRIMEPROD_SUPPBOUND_HPP
#define PRIMEPROD_SUPPBOUND_HPP

#include <cstdint>
#include <optional>

#include "primeprod/charfourier.hpp"
#include "primeprod/modgroup.hpp"

namespace primeprod {

// Spectral statistics feeding the support lower bound: masses of g and h at
// the trivial character, the nontrivial spectral energy of h, the group size
// and the parameter epsilon.  Caller guarantees 0 <= g <= h pointwise.
struct SupportBoundInput {
  double g_mass = 0.0;      // ghat(chi0)
  double h_mass = 0.0;      // hhat(chi0)
  double tail_energy = 0.0; // sum_{chi != chi0} |hhat(chi)|^2
  std::uint64_t group_size = 0;
  double epsilon = 0.0;     // in (0, 1)
};

// min( (1-eps)|G| g_mass/h_mass,  |G| eps^2 g_mass^2 / tail ); the second
// term is unbounded when the tail energy vanishes (kept as an explicit
// empty optional, never a floating sentinel).
struct SupportBound {
  double first_term = 0.0;
  std::optional<double> second_term;  // nullopt = unbounded
  double value() const {
    return second_term ? std::min(first_term, *second_term) : first_term;
  }
};

SupportBound support_lower_bound(const SupportBoundInput& in);

// Convenience wrapper computing the statistics from (g, h) spectrally.
SupportBoundInput spectral_stats(const GroupFunction& g, const GroupFunction& h,
                                 double epsilon);

struct Theorem1Row {
  std::uint64_t q = 0;
  bool cube_free = true;
  double epsilon = 0.0;
  double D = 0.0;
  double z = 0.0;
  double lower_bound_ratio = 0.0;  // Lemma-1 bound / phi(q)
  double actual_ratio = 0.0;       // |supp(f_z * f_z)| / phi(q)
  double spectral_margin = 0.0;    // |G| eps^2 ghat0^2 / tail  -  q
  double first_term_ratio = 0.0;   // ghat(chi0)/hhat(chi0) = fhat(chi0)/what(chi0)
};

// Full deduction pipeline: D = q^{3/4-eps}, z = D^{1/2}, f = f_z, w the
// Selberg weights at level D, g = f*f, h = f*w computed spectrally.
// Requires eps in (0, 1/8); rejects a degenerate f_z.
Theorem1Row theorem1_pipeline(const UnitGroupPtr& group, double epsilon);

}  // namespace primeprod

#endif
