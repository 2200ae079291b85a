#ifndef PRIMEPROD_CHARFOURIER_HPP
#define PRIMEPROD_CHARFOURIER_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "primeprod/modgroup.hpp"

namespace primeprod {

// Complex-valued function on G = (Z/qZ)^*, stored by unit index.
class GroupFunction {
 public:
  explicit GroupFunction(UnitGroupPtr group)
      : g_(std::move(group)), v_(g_->phi(), 0.0) {}

  const UnitGroupPtr& group() const { return g_; }
  std::size_t size() const { return v_.size(); }

  std::complex<double>& operator[](std::size_t unit_index) { return v_[unit_index]; }
  const std::complex<double>& operator[](std::size_t unit_index) const {
    return v_[unit_index];
  }

  // Value at a residue; 0 off the units.
  std::complex<double> at_residue(std::uint64_t n) const {
    return g_->is_unit(n) ? v_[g_->unit_index(n)] : 0.0;
  }
  void set_residue(std::uint64_t n, std::complex<double> v) {
    v_[g_->unit_index(n)] = v;
  }

  std::complex<double> sum() const;
  double l2_norm_sq() const;  // sum |g(n)|^2
  std::vector<std::uint64_t> support_residues() const;
  std::size_t support_size() const;

  bool operator==(const GroupFunction& o) const {
    return g_->q() == o.g_->q() && v_ == o.v_;
  }

  std::vector<std::complex<double>>& values() { return v_; }
  const std::vector<std::complex<double>>& values() const { return v_; }

 private:
  UnitGroupPtr g_;
  std::vector<std::complex<double>> v_;
};

// Multiplicative Fourier coefficients, one per character, stored by the
// character's flat exponent index.
class Spectrum {
 public:
  explicit Spectrum(UnitGroupPtr group) : g_(std::move(group)), c_(g_->phi(), 0.0) {}

  const UnitGroupPtr& group() const { return g_; }
  std::size_t size() const { return c_.size(); }

  std::complex<double>& operator[](std::size_t char_index) { return c_[char_index]; }
  const std::complex<double>& operator[](std::size_t char_index) const {
    return c_[char_index];
  }

  std::complex<double> coefficient(const DirichletCharacter& chi) const {
    return c_[chi.flat_index()];
  }
  std::complex<double> trivial_coefficient() const { return c_[0]; }

  // sum over chi != chi0 of |coef|^2
  double tail_energy() const;

  std::vector<std::complex<double>>& values() { return c_; }
  const std::vector<std::complex<double>>& values() const { return c_; }

 private:
  UnitGroupPtr g_;
  std::vector<std::complex<double>> c_;
};

// Indicator of primes p with z <= p <= q-1 and (p, q) = 1.
GroupFunction indicator_fz(const UnitGroupPtr& group, double z);

// Fast transform: the group DFT factorized along the cyclic components
// (mixed-radix FFT, Bluestein for large prime factors).  OpenMP-parallel
// across independent lines.
Spectrum transform(const GroupFunction& g);
GroupFunction inverse(const Spectrum& s);

// Serial O(phi^2) double loop straight from the definition; correctness
// anchor for the fast path.
Spectrum transform_reference(const GroupFunction& g);
GroupFunction inverse_reference(const Spectrum& s);

// Multiplicative convolution g*h(n) = sum_{ab=n} g(a) h(b).
GroupFunction convolve(const GroupFunction& g, const GroupFunction& h);  // spectral
GroupFunction convolve_reference(const GroupFunction& g, const GroupFunction& h);

// | sum |g|^2 - (1/phi) sum |ghat|^2 |
double parseval_defect(const GroupFunction& g);

}  // namespace primeprod

#endif
