#include "primeprod/primesets.hpp"

#include <algorithm>

#include <cmath>
#include <stdexcept>

#include "primeprod/errors.hpp"
#include "primeprod/primes.hpp"

namespace primeprod {

std::vector<std::uint64_t> ResidueSet::residues() const {
  std::vector<std::uint64_t> out;
  out.reserve(members.count());
  members.for_each([&](std::size_t i) {
    out.push_back(group->residue(static_cast<std::uint32_t>(i)));
  });
  std::sort(out.begin(), out.end());
  return out;
}

ResidueSet ek_set(const UnitGroupPtr& group, int k, double x) {
  if (k < 1) throw std::invalid_argument("ek_set: k >= 1 required");
  ResidueSet set{group, Bitset(group->phi()), k, x};
  if (x < 2.0) return set;
  const std::uint64_t limit = static_cast<std::uint64_t>(std::floor(x));
  if (limit > kSieveCeiling)
    throw ResourceLimitError("ek_set: q^alpha exceeds the sieve ceiling");

  Bitset e1(group->phi());
  auto snap = primes_snapshot(limit);
  for (std::uint64_t p : primes_leq(snap, limit))
    if (group->is_unit(p)) e1.set(group->unit_index(p));
  if (!e1.any()) return set;

  auto base = e1.indices();
  std::vector<std::uint64_t> base_res(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    base_res[i] = group->residue(static_cast<std::uint32_t>(base[i]));

  Bitset cur = e1;
  for (int pass = 1; pass < k; ++pass) {
    if (cur.count() == group->phi()) break;  // G is closed under the passes
    Bitset next(group->phi());
    cur.for_each([&](std::size_t i) {
      const std::uint64_t a = group->residue(static_cast<std::uint32_t>(i));
      for (std::uint64_t b : base_res)
        next.set(group->unit_index(group->mul(a, b)));
    });
    cur = std::move(next);
  }
  set.members = std::move(cur);
  return set;
}

std::uint64_t prime_count_in_class(double x, const UnitGroupPtr& group, std::uint64_t a) {
  if (!group->is_unit(a))
    throw std::invalid_argument("prime_count_in_class: (a, q) > 1");
  if (x < 2.0) return 0;
  const std::uint64_t limit = static_cast<std::uint64_t>(std::floor(x));
  if (limit > kSieveCeiling)
    throw ResourceLimitError("prime_count_in_class: x exceeds the sieve ceiling");
  const std::uint64_t q = group->q();
  std::uint64_t count = 0;
  auto snap = primes_snapshot(limit);
  for (std::uint64_t p : primes_leq(snap, limit))
    if (p % q == a % q) ++count;
  return count;
}

DensityReport density_report(const UnitGroupPtr& group, int k, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("density_report: alpha > 0 required");
  DensityReport r;
  r.q = group->q();
  r.phi = group->phi();
  r.k = k;
  r.alpha = alpha;
  r.x = std::pow(double(r.q), alpha);
  ResidueSet set = ek_set(group, k, r.x);
  r.size = set.size();
  r.ratio = double(r.size) / double(r.phi);
  return r;
}

DensityReport union_density_report(const UnitGroupPtr& group, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("union_density_report: alpha > 0 required");
  DensityReport r;
  r.q = group->q();
  r.phi = group->phi();
  r.k = 2;
  r.alpha = alpha;
  r.x = std::pow(double(r.q), alpha);
  ResidueSet e1 = ek_set(group, 1, r.x);
  ResidueSet e2 = ek_set(group, 2, r.x);
  Bitset u = e1.members;
  u |= e2.members;
  r.size = u.count();
  r.ratio = double(r.size) / double(r.phi);
  return r;
}

CoverResult verify_product_cover(const UnitGroupPtr& group, int k, double x) {
  ResidueSet set = ek_set(group, k, x);
  CoverResult res;
  res.ek_size = set.size();
  res.covered = set.size() == group->phi();
  if (!res.covered) {
    Bitset missing = set.members.complement();
    missing.for_each([&](std::size_t i) {
      res.uncovered.push_back(group->residue(static_cast<std::uint32_t>(i)));
    });
    std::sort(res.uncovered.begin(), res.uncovered.end());
  }
  return res;
}

}  // namespace primeprod
