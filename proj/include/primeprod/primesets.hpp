#ifndef PRIMEPROD_PRIMESETS_HPP
#define PRIMEPROD_PRIMESETS_HPP

#include <cstdint>
#include <vector>

#include "primeprod/bitset.hpp"
#include "primeprod/modgroup.hpp"

namespace primeprod {

// Set of invertible residues mod q, indexed by unit index.
struct ResidueSet {
  UnitGroupPtr group;
  Bitset members;  // over unit indices
  int k = 0;       // descriptor when the set is an E_k(x)
  double x = 0.0;

  std::size_t size() const { return members.count(); }
  std::vector<std::uint64_t> residues() const;
};

// E_k(x): residues of products p_1...p_k with every p_i <= x coprime to q.
// Built by k-1 product-set passes over the residue bitset.  k = 0 rejected;
// x below 2 gives the empty set (and E_k empty for all k).
ResidueSet ek_set(const UnitGroupPtr& group, int k, double x);

// #{p <= x : p = a (mod q)}; requires (a, q) = 1.
std::uint64_t prime_count_in_class(double x, const UnitGroupPtr& group, std::uint64_t a);

struct DensityReport {
  std::uint64_t q = 0;
  std::uint64_t phi = 0;
  int k = 0;
  double alpha = 0.0;
  double x = 0.0;
  std::uint64_t size = 0;
  double ratio = 0.0;
};

// |E_k(q^alpha)| / phi(q).
DensityReport density_report(const UnitGroupPtr& group, int k, double alpha);
// |E_1(q^alpha) u E_2(q^alpha)| / phi(q).
DensityReport union_density_report(const UnitGroupPtr& group, double alpha);

struct CoverResult {
  bool covered = false;
  std::uint64_t ek_size = 0;
  std::vector<std::uint64_t> uncovered;  // witness residues when not covered
};

// Is E_k(x) all of G?
CoverResult verify_product_cover(const UnitGroupPtr& group, int k, double x);

}  // namespace primeprod

#endif
