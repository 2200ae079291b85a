#ifndef PRIMEPROD_GROUPCOMB_HPP
#define PRIMEPROD_GROUPCOMB_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "primeprod/bitset.hpp"
#include "primeprod/modgroup.hpp"

namespace primeprod {

// Finite abelian group C_{m_1} x ... x C_{m_s}, elements indexed by the
// little-endian mixed-radix rank of their digit vector.  Written
// multiplicatively to match the quotient-group arguments it serves.
class AbelianGroup : public std::enable_shared_from_this<AbelianGroup> {
 public:
  static std::shared_ptr<const AbelianGroup> make(std::vector<std::uint32_t> orders);
  explicit AbelianGroup(std::vector<std::uint32_t> orders);

  std::size_t order() const { return n_; }
  const std::vector<std::uint32_t>& component_orders() const { return orders_; }

  std::uint32_t identity() const { return 0; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[std::size_t(a) * n_ + b];
    return mul_slow(a, b);
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint64_t element_order(std::uint32_t a) const;
  bool is_cyclic() const;

 private:
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  std::vector<std::uint32_t> orders_;
  std::size_t n_ = 1;
  std::vector<std::uint32_t> table_;  // built when order <= 1024
};

using AbelianGroupPtr = std::shared_ptr<const AbelianGroup>;

// Subset of an AbelianGroup.
class Subset {
 public:
  explicit Subset(AbelianGroupPtr g) : g_(std::move(g)), bits_(g_->order()) {}
  Subset(AbelianGroupPtr g, Bitset bits) : g_(std::move(g)), bits_(std::move(bits)) {}

  const AbelianGroupPtr& group() const { return g_; }
  const Bitset& bits() const { return bits_; }
  Bitset& bits() { return bits_; }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return !bits_.any(); }
  bool contains(std::uint32_t a) const { return bits_.test(a); }
  void add(std::uint32_t a) { bits_.set(a); }
  bool operator==(const Subset& o) const { return bits_ == o.bits_; }
  Subset complement() const { return Subset(g_, bits_.complement()); }
  std::vector<std::size_t> elements() const { return bits_.indices(); }

 private:
  AbelianGroupPtr g_;
  Bitset bits_;
};

// A.B = {ab : a in A, b in B}; groups must match.
Subset product_set(const Subset& a, const Subset& b);

// k-fold product A^(k); k >= 1.
Subset product_power(const Subset& a, int k);

struct StabilizerResult {
  Subset subgroup;      // H = {g : gS = S}
  bool empty_input;     // S was empty; H = G by convention
};
StabilizerResult stabilizer(const Subset& s);

struct KneserReport {
  std::size_t A_size = 0;
  std::size_t AA_size = 0;
  std::size_t H_size = 0;
  std::size_t AH_size = 0;
  bool inequality_holds = false;  // |A.A| >= 2|A.H| - |H|
  Subset AA, H, AH;
};
KneserReport kneser_check(const Subset& a);

// Decision tree for the quotient-level case analysis: write |G0| = 3k + r;
// with lambda = |B| > |G0|/3 the cases r in {0,1}, lambda >= k+2 and
// |B.B| >= 2k+2 all force triple-product coverage, the union-density
// hypothesis removes non-complement splits, and what is left is the
// exceptional structure |B| = k+1, |B.B| = 2k+1 with B, B.B complements.
enum class CasecheckOutcome { kCovered, kExceptional, kInconclusive };

struct CasecheckReport {
  CasecheckOutcome outcome = CasecheckOutcome::kInconclusive;
  int k = -1;
  int r = -1;
  std::size_t lambda = 0;
  std::size_t BB_size = 0;
  bool hypothesis_third = false;        // |B| > |G0|/3
  bool hypothesis_density = false;      // |B| > (11/32)|G0|
  bool complement = false;              // B and B.B partition G0
  bool bb_trivial_stabilizer = false;
  std::string reason;
};
CasecheckReport casecheck_analysis(const Subset& b, bool union_density_ok);

// Classifies the exceptional structure: requires |G0| = 3k+2 and |B| = k+1.
// is_exceptional iff B.B is the complement of B and has trivial stabilizer;
// the generator x (with B = {x^{k+1},...,x^{2k+1}}) is returned when found.
struct TaovuReport {
  bool is_exceptional_structure = false;
  std::optional<std::uint32_t> generator;
};
TaovuReport taovu_classify(const Subset& b);

// Subgroup generated by a subset (with the identity); empty input gives {1}.
Subset closure(const Subset& a);

// True when A lies inside a coset of a proper subgroup.
bool in_proper_coset(const Subset& a);

// All subgroups, generated by element closure; intended for order <= 64.
std::vector<Subset> all_subgroups(const AbelianGroupPtr& g);

// Component-order lists of all abelian groups of order n (partitions of the
// exponent at each prime, combined multiplicatively).
std::vector<std::vector<std::uint32_t>> abelian_group_shapes(std::uint64_t n);

// Uniform random subset (each element kept with probability 1/2; nonempty).
Subset random_subset(const AbelianGroupPtr& g, std::mt19937_64& rng);

// Quotient bridge: G/ker(chi) is cyclic of order ord(chi); proj maps the
// unit index of n to l with chi(n) = e(l / ord(chi)).
struct CharacterQuotient {
  AbelianGroupPtr quotient;
  std::vector<std::uint32_t> proj;  // by unit index
};
CharacterQuotient quotient_by_character(const DirichletCharacter& chi);

}  // namespace primeprod

#endif
