#ifndef PRIMEPROD_MODGROUP_HPP
#define PRIMEPROD_MODGROUP_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace primeprod {

namespace detail {
class GroupDftPlan;  // defined in charfourier.cpp
}

// Modulus q with factorization, phi(q) and the cube-free flag.
struct Modulus {
  std::uint64_t q = 0;
  std::vector<std::pair<std::uint64_t, int>> factorization;  // (p, e), p ascending
  std::uint64_t phi = 0;
  bool cube_free = true;
};

// Trial-division factorization.  Rejects q = 0.
Modulus factorize(std::uint64_t q);

class DirichletCharacter;

// The unit group (Z/qZ)^* decomposed into cyclic components via CRT:
// odd prime powers contribute one cyclic factor generated by a least
// primitive root, 2^k (k >= 3) contributes the pair {-1, 5}.  Discrete
// logarithms are tabulated for all residues; units are indexed by the
// little-endian mixed-radix rank of their exponent vector.
//
// Immutable after construction; safe to share across threads.
class UnitGroup : public std::enable_shared_from_this<UnitGroup> {
 public:
  static std::shared_ptr<const UnitGroup> make(std::uint64_t q);
  explicit UnitGroup(Modulus m);

  const Modulus& modulus() const { return mod_; }
  std::uint64_t q() const { return mod_.q; }
  std::uint64_t phi() const { return mod_.phi; }
  bool cube_free() const { return mod_.cube_free; }

  const std::vector<std::uint32_t>& component_orders() const { return orders_; }
  const std::vector<std::uint64_t>& generators() const { return gens_; }
  std::uint64_t group_exponent() const { return exponent_; }  // lcm of orders

  bool is_unit(std::uint64_t n) const { return dlog_[n % mod_.q] != kNoUnit; }
  std::uint32_t unit_index(std::uint64_t n) const { return dlog_[n % mod_.q]; }
  std::uint64_t residue(std::uint32_t index) const { return residues_[index]; }

  // Exponent vector (a_1,...,a_s) of a unit; digits of the mixed-radix rank.
  std::vector<std::uint32_t> dlog(std::uint64_t n) const;
  void index_digits(std::uint32_t index, std::uint32_t* out) const;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return (a % mod_.q) * (b % mod_.q) % mod_.q;
  }

  DirichletCharacter character(std::vector<std::uint32_t> exponents) const;
  DirichletCharacter trivial_character() const;
  DirichletCharacter character_at(std::uint32_t flat_index) const;
  std::uint32_t character_count() const { return static_cast<std::uint32_t>(mod_.phi); }

  // Phase numerator of chi_e(n) over the common denominator L = group_exponent:
  // chi(n) = e(num / L).  n must be a unit.
  std::int64_t phase_numerator(const std::vector<std::uint32_t>& exponents,
                               std::uint64_t n) const;

  const detail::GroupDftPlan& dft_plan() const;  // lazily built, cached

 private:
  Modulus mod_;
  std::vector<std::uint32_t> orders_;   // m_i >= 2
  std::vector<std::uint64_t> gens_;     // CRT-lifted generators
  std::vector<std::uint32_t> strides_;  // mixed-radix strides
  std::uint64_t exponent_ = 1;
  std::vector<std::uint32_t> dlog_;       // residue -> unit index
  std::vector<std::uint64_t> residues_;   // unit index -> residue
  std::vector<std::uint64_t> phase_mul_;  // L / m_i per component

  mutable std::once_flag plan_once_;
  mutable std::shared_ptr<const detail::GroupDftPlan> plan_;

  static constexpr std::uint32_t kNoUnit = 0xffffffffu;
  friend class DirichletCharacter;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

// A Dirichlet character mod q, stored as an exponent vector against the
// group's fixed generators: chi(n) = e(sum_i e_i a_i / m_i) on units, 0 off.
class DirichletCharacter {
 public:
  DirichletCharacter(UnitGroupPtr group, std::vector<std::uint32_t> exponents);

  const UnitGroupPtr& group() const { return g_; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }
  std::uint64_t order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }
  std::uint32_t flat_index() const;

  // chi(n); any n is accepted and reduced mod q.
  std::complex<double> operator()(std::uint64_t n) const;

  // Exact phase as a fraction num / L with L = group exponent; n must be a unit.
  std::int64_t phase_numerator(std::uint64_t n) const {
    return g_->phase_numerator(e_, n);
  }

  DirichletCharacter pow(std::int64_t t) const;
  DirichletCharacter conj() const { return pow(-1); }
  DirichletCharacter times(const DirichletCharacter& o) const;

  bool operator==(const DirichletCharacter& o) const {
    return g_->q() == o.g_->q() && e_ == o.e_;
  }

 private:
  UnitGroupPtr g_;
  std::vector<std::uint32_t> e_;
  std::uint64_t order_;
};

// All phi(q) characters, the trivial one first (flat index order).
std::vector<DirichletCharacter> characters(const UnitGroupPtr& group);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m);

}  // namespace primeprod

#endif
