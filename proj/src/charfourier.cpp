#include "primeprod/charfourier.hpp"

#include <algorithm>

#include <omp.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "primeprod/kahan.hpp"
#include "primeprod/primes.hpp"

namespace primeprod {

namespace detail {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Iterative radix-2 FFT with kernel e(-2*pi*i*nk/P).
struct Pow2Fft {
  std::size_t n = 1;
  unsigned log2n = 0;
  std::vector<std::complex<double>> twiddle;  // e(-2pi j / n), j < n/2
  std::vector<std::uint32_t> rev;

  explicit Pow2Fft(std::size_t size) : n(size) {
    log2n = static_cast<unsigned>(std::countr_zero(n));
    twiddle.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j)
      twiddle[j] = std::polar(1.0, -kTwoPi * double(j) / double(n));
    rev.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t r = 0;
      for (unsigned b = 0; b < log2n; ++b)
        if (i & (std::size_t(1) << b)) r |= std::uint32_t(1) << (log2n - 1 - b);
      rev[i] = r;
    }
  }

  void forward(std::complex<double>* a) const {
    for (std::size_t i = 0; i < n; ++i)
      if (i < rev[i]) std::swap(a[i], a[rev[i]]);
    for (std::size_t len = 2; len <= n; len <<= 1) {
      std::size_t step = n / len;
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t j = 0; j < len / 2; ++j) {
          auto w = twiddle[j * step];
          auto u = a[i + j];
          auto v = a[i + j + len / 2] * w;
          a[i + j] = u + v;
          a[i + j + len / 2] = u - v;
        }
      }
    }
  }

  // unscaled inverse: conj(forward(conj(x)))
  void backward(std::complex<double>* a) const {
    for (std::size_t i = 0; i < n; ++i) a[i] = std::conj(a[i]);
    forward(a);
    for (std::size_t i = 0; i < n; ++i) a[i] = std::conj(a[i]);
  }
};

}  // namespace

// One-dimensional length-m forward DFT (kernel e(-2pi i nk/m)).  Powers of
// two run radix-2 in place, small sizes run the naive loop, everything else
// goes through Bluestein's chirp-z reduction to a power-of-two FFT.
class Dft1D {
 public:
  explicit Dft1D(std::size_t m) : m_(m) {
    if (m_ <= 1) {
      kind_ = Kind::kIdentity;
    } else if (std::has_single_bit(m_)) {
      kind_ = Kind::kPow2;
      fft_ = std::make_unique<Pow2Fft>(m_);
    } else if (m_ <= 32) {
      kind_ = Kind::kNaive;
      roots_.resize(m_);
      for (std::size_t j = 0; j < m_; ++j)
        roots_[j] = std::polar(1.0, -kTwoPi * double(j) / double(m_));
    } else {
      kind_ = Kind::kBluestein;
      std::size_t p = 1;
      while (p < 2 * m_ - 1) p <<= 1;
      fft_ = std::make_unique<Pow2Fft>(p);
      chirp_.resize(m_);
      for (std::size_t t = 0; t < m_; ++t) {
        std::uint64_t sq = (unsigned __int128)t * t % (2 * m_);
        chirp_[t] = std::polar(1.0, -std::numbers::pi * double(sq) / double(m_));
      }
      vhat_.assign(p, 0.0);
      vhat_[0] = std::conj(chirp_[0]);
      for (std::size_t t = 1; t < m_; ++t) {
        vhat_[t] = std::conj(chirp_[t]);
        vhat_[p - t] = std::conj(chirp_[t]);
      }
      fft_->forward(vhat_.data());
    }
  }

  std::size_t size() const { return m_; }
  std::size_t scratch_size() const {
    return kind_ == Kind::kBluestein ? fft_->n : (kind_ == Kind::kNaive ? m_ : 0);
  }

  void forward(std::complex<double>* a, std::complex<double>* scratch) const {
    switch (kind_) {
      case Kind::kIdentity:
        return;
      case Kind::kPow2:
        fft_->forward(a);
        return;
      case Kind::kNaive: {
        for (std::size_t k = 0; k < m_; ++k) {
          std::complex<double> acc = 0.0;
          std::size_t jk = 0;
          for (std::size_t t = 0; t < m_; ++t) {
            acc += a[t] * roots_[jk];
            jk += k;
            if (jk >= m_) jk -= m_;
          }
          scratch[k] = acc;
        }
        for (std::size_t k = 0; k < m_; ++k) a[k] = scratch[k];
        return;
      }
      case Kind::kBluestein: {
        const std::size_t p = fft_->n;
        for (std::size_t t = 0; t < m_; ++t) scratch[t] = a[t] * chirp_[t];
        for (std::size_t t = m_; t < p; ++t) scratch[t] = 0.0;
        fft_->forward(scratch);
        for (std::size_t t = 0; t < p; ++t) scratch[t] *= vhat_[t];
        fft_->backward(scratch);
        const double inv = 1.0 / double(p);
        for (std::size_t k = 0; k < m_; ++k) a[k] = scratch[k] * chirp_[k] * inv;
        return;
      }
    }
  }

 private:
  enum class Kind { kIdentity, kPow2, kNaive, kBluestein };
  std::size_t m_;
  Kind kind_ = Kind::kIdentity;
  std::unique_ptr<Pow2Fft> fft_;
  std::vector<std::complex<double>> roots_;
  std::vector<std::complex<double>> chirp_;
  std::vector<std::complex<double>> vhat_;
};

// Per-group plan: one Dft1D per cyclic component.
class GroupDftPlan {
 public:
  explicit GroupDftPlan(const std::vector<std::uint32_t>& orders) {
    for (std::uint32_t m : orders) axes_.push_back(std::make_unique<Dft1D>(m));
    scratch_ = 0;
    for (auto& ax : axes_) scratch_ = std::max(scratch_, std::max(ax->scratch_size(), ax->size()));
  }

  // In-place forward multidimensional DFT over the mixed-radix index.
  void forward(std::vector<std::complex<double>>& data) const {
    const std::size_t total = data.size();
    std::size_t stride = 1;
    for (auto& ax : axes_) {
      const std::size_t m = ax->size();
      const std::size_t lines = total / m;
#pragma omp parallel if (total >= 4096 && !omp_in_parallel())
      {
        std::vector<std::complex<double>> line(m), scratch(scratch_);
#pragma omp for schedule(static)
        for (long long li = 0; li < static_cast<long long>(lines); ++li) {
          // line li: inner = li % stride, outer = li / stride
          std::size_t inner = static_cast<std::size_t>(li) % stride;
          std::size_t outer = static_cast<std::size_t>(li) / stride;
          std::size_t base = outer * stride * m + inner;
          for (std::size_t t = 0; t < m; ++t) line[t] = data[base + t * stride];
          ax->forward(line.data(), scratch.data());
          for (std::size_t t = 0; t < m; ++t) data[base + t * stride] = line[t];
        }
      }
      stride *= m;
    }
  }

 private:
  std::vector<std::unique_ptr<Dft1D>> axes_;
  std::size_t scratch_;
};

}  // namespace detail

const detail::GroupDftPlan& UnitGroup::dft_plan() const {
  std::call_once(plan_once_, [this] {
    plan_ = std::make_shared<const detail::GroupDftPlan>(orders_);
  });
  return *plan_;
}

std::complex<double> GroupFunction::sum() const {
  KahanComplexSum acc;
  for (const auto& v : v_) acc.add(v);
  return acc.value();
}

double GroupFunction::l2_norm_sq() const {
  KahanSum acc;
  for (const auto& v : v_) acc.add(std::norm(v));
  return acc.value();
}

std::vector<std::uint64_t> GroupFunction::support_residues() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (v_[i] != 0.0) out.push_back(g_->residue(static_cast<std::uint32_t>(i)));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t GroupFunction::support_size() const {
  std::size_t c = 0;
  for (const auto& v : v_)
    if (v != 0.0) ++c;
  return c;
}

double Spectrum::tail_energy() const {
  KahanSum acc;
  for (std::size_t i = 1; i < c_.size(); ++i) acc.add(std::norm(c_[i]));
  return acc.value();
}

GroupFunction indicator_fz(const UnitGroupPtr& group, double z) {
  const std::uint64_t q = group->q();
  if (z < 1.0 || z > double(q))
    throw std::invalid_argument("indicator_fz: need 1 <= z <= q");
  GroupFunction f(group);
  if (q < 3) return f;
  auto snap = primes_snapshot(q - 1);
  for (std::uint64_t p : primes_leq(snap, q - 1)) {
    if (double(p) < z) continue;
    if (group->is_unit(p)) f.set_residue(p, 1.0);
  }
  return f;
}

Spectrum transform(const GroupFunction& g) {
  // ghat(e) = sum_a g(a) e(-sum_i e_i a_i / m_i): the forward multidim DFT
  // of g in discrete-log coordinates.
  Spectrum s(g.group());
  s.values() = g.values();
  g.group()->dft_plan().forward(s.values());
  return s;
}

GroupFunction inverse(const Spectrum& s) {
  GroupFunction g(s.group());
  const std::size_t n = s.size();
  auto& v = g.values();
  for (std::size_t i = 0; i < n; ++i) v[i] = std::conj(s[i]);
  s.group()->dft_plan().forward(v);
  const double scale = 1.0 / double(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::conj(v[i]) * scale;
  return g;
}

Spectrum transform_reference(const GroupFunction& g) {
  const auto& G = *g.group();
  const auto& orders = G.component_orders();
  const std::size_t s = orders.size();
  const std::size_t n = g.size();

  // per-axis root tables e(-2pi t / m_i)
  std::vector<std::vector<std::complex<double>>> roots(s);
  for (std::size_t i = 0; i < s; ++i) {
    roots[i].resize(orders[i]);
    for (std::uint32_t t = 0; t < orders[i]; ++t)
      roots[i][t] = std::polar(1.0, -2.0 * std::numbers::pi * double(t) / double(orders[i]));
  }
  std::vector<std::uint32_t> digits(n * s);
  for (std::size_t a = 0; a < n; ++a)
    G.index_digits(static_cast<std::uint32_t>(a), &digits[a * s]);

  Spectrum out(g.group());
  std::vector<std::uint32_t> e(s);
  for (std::size_t k = 0; k < n; ++k) {
    G.index_digits(static_cast<std::uint32_t>(k), e.data());
    KahanComplexSum acc;
    for (std::size_t a = 0; a < n; ++a) {
      std::complex<double> w = g[a];
      for (std::size_t i = 0; i < s; ++i)
        w *= roots[i][std::uint64_t(e[i]) * digits[a * s + i] % orders[i]];
      acc.add(w);
    }
    out[k] = acc.value();
  }
  return out;
}

GroupFunction inverse_reference(const Spectrum& s) {
  // g(n) = (1/phi) sum_chi shat(chi) chi(n) = (1/phi) conj(DFT(conj(shat)))
  GroupFunction tmp(s.group());
  for (std::size_t i = 0; i < s.size(); ++i) tmp[i] = std::conj(s[i]);
  Spectrum t = transform_reference(tmp);
  GroupFunction out(s.group());
  const double scale = 1.0 / double(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::conj(t[i]) * scale;
  return out;
}

GroupFunction convolve(const GroupFunction& g, const GroupFunction& h) {
  if (g.group()->q() != h.group()->q())
    throw std::invalid_argument("convolve: modulus mismatch");
  Spectrum sg = transform(g);
  Spectrum sh = transform(h);
  for (std::size_t i = 0; i < sg.size(); ++i) sg[i] *= sh[i];
  return inverse(sg);
}

GroupFunction convolve_reference(const GroupFunction& g, const GroupFunction& h) {
  if (g.group()->q() != h.group()->q())
    throw std::invalid_argument("convolve: modulus mismatch");
  const auto& G = *g.group();
  GroupFunction out(g.group());
  const std::size_t n = g.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (g[a] == 0.0) continue;
    const std::uint64_t ra = G.residue(static_cast<std::uint32_t>(a));
    for (std::size_t b = 0; b < n; ++b) {
      if (h[b] == 0.0) continue;
      out[G.unit_index(G.mul(ra, G.residue(static_cast<std::uint32_t>(b))))] += g[a] * h[b];
    }
  }
  return out;
}

double parseval_defect(const GroupFunction& g) {
  Spectrum s = transform(g);
  KahanSum spec;
  for (std::size_t i = 0; i < s.size(); ++i) spec.add(std::norm(s[i]));
  return std::abs(g.l2_norm_sq() - spec.value() / double(g.size()));
}

}  // namespace primeprod
