#include "primeprod/modgroup.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace primeprod {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

Modulus factorize(std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("factorize: q must be positive");
  Modulus m;
  m.q = q;
  m.phi = 1;
  m.cube_free = true;
  std::uint64_t n = q;
  auto take = [&](std::uint64_t p) {
    int e = 0;
    std::uint64_t pk = 1;
    while (n % p == 0) {
      n /= p;
      ++e;
      pk *= p;
    }
    if (e) {
      m.factorization.emplace_back(p, e);
      m.phi *= pk / p * (p - 1);
      if (e > 2) m.cube_free = false;
    }
  };
  take(2);
  take(3);
  for (std::uint64_t p = 5; p * p <= n; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) take(n);
  return m;
}

namespace {

std::vector<std::uint64_t> prime_factors_of(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto& [p, e] : factorize(n).factorization) out.push_back(p);
  return out;
}

// Least primitive root modulo an odd prime power p^e.
std::uint64_t primitive_root(std::uint64_t p, int e) {
  std::uint64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  std::uint64_t order = pe / p * (p - 1);
  auto fac = prime_factors_of(order);
  for (std::uint64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (std::uint64_t f : fac)
      if (pow_mod(g, order / f, pe) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

// x == a (mod pe), x == 1 (mod q/pe)
std::uint64_t crt_lift(std::uint64_t a, std::uint64_t pe, std::uint64_t q) {
  std::uint64_t M = q / pe;
  if (M == 1) return a % q;
  // inverse of M mod pe by extended Euclid
  std::int64_t t = 0, newt = 1, r = static_cast<std::int64_t>(pe),
               newr = static_cast<std::int64_t>(M % pe);
  while (newr != 0) {
    std::int64_t quot = r / newr;
    t -= quot * newt;
    std::swap(t, newt);
    r -= quot * newr;
    std::swap(r, newr);
  }
  std::uint64_t inv = static_cast<std::uint64_t>((t % static_cast<std::int64_t>(pe) +
                                                  static_cast<std::int64_t>(pe)) %
                                                 static_cast<std::int64_t>(pe));
  std::uint64_t diff = (a % pe + pe - 1) % pe;  // a - 1 mod pe
  unsigned __int128 x = (unsigned __int128)M * ((unsigned __int128)diff * inv % pe) + 1;
  return static_cast<std::uint64_t>(x % q);
}

}  // namespace

std::shared_ptr<const UnitGroup> UnitGroup::make(std::uint64_t q) {
  return std::make_shared<UnitGroup>(factorize(q));
}

UnitGroup::UnitGroup(Modulus m) : mod_(std::move(m)) {
  const std::uint64_t q = mod_.q;

  for (auto& [p, e] : mod_.factorization) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 2) {
        orders_.push_back(2);
        gens_.push_back(crt_lift(3, 4, q));
      } else if (e >= 3) {
        orders_.push_back(2);
        gens_.push_back(crt_lift(pe - 1, pe, q));  // -1
        orders_.push_back(static_cast<std::uint32_t>(pe / 4));
        gens_.push_back(crt_lift(5, pe, q));
      }
      // e == 1: trivial local group
    } else {
      std::uint64_t g = primitive_root(p, e);
      orders_.push_back(static_cast<std::uint32_t>(pe / p * (p - 1)));
      gens_.push_back(crt_lift(g, pe, q));
    }
  }

  strides_.resize(orders_.size());
  std::uint32_t stride = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    strides_[i] = stride;
    stride *= orders_[i];
  }
  exponent_ = 1;
  for (std::uint32_t o : orders_) exponent_ = lcm_u64(exponent_, o);
  phase_mul_.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) phase_mul_[i] = exponent_ / orders_[i];

  // Enumerate the group in mixed-radix order; stepping the counter by one
  // multiplies by g_1 and by g_{i+1} for every digit that wraps.
  dlog_.assign(q, kNoUnit);
  residues_.resize(mod_.phi);
  std::vector<std::uint32_t> digits(orders_.size(), 0);
  std::uint64_t cur = (q == 1) ? 0 : 1;
  for (std::uint32_t idx = 0;; ++idx) {
    dlog_[cur] = idx;
    residues_[idx] = cur;
    if (idx + 1 == mod_.phi) break;
    std::size_t i = 0;
    for (;; ++i) {
      cur = mul(cur, gens_[i]);
      if (++digits[i] < orders_[i]) break;
      digits[i] = 0;
    }
  }
}

std::vector<std::uint32_t> UnitGroup::dlog(std::uint64_t n) const {
  std::uint32_t idx = dlog_[n % mod_.q];
  if (idx == kNoUnit) throw std::invalid_argument("dlog: residue not coprime to q");
  std::vector<std::uint32_t> out(orders_.size());
  index_digits(idx, out.data());
  return out;
}

void UnitGroup::index_digits(std::uint32_t index, std::uint32_t* out) const {
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    out[i] = index % orders_[i];
    index /= orders_[i];
  }
}

std::int64_t UnitGroup::phase_numerator(const std::vector<std::uint32_t>& exponents,
                                        std::uint64_t n) const {
  std::uint32_t idx = dlog_[n % mod_.q];
  if (idx == kNoUnit) throw std::invalid_argument("phase_numerator: not a unit");
  std::int64_t num = 0;
  const std::int64_t L = static_cast<std::int64_t>(exponent_);
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::uint32_t a = idx % orders_[i];
    idx /= orders_[i];
    num = (num + static_cast<std::int64_t>(exponents[i]) * a % L *
                     static_cast<std::int64_t>(phase_mul_[i])) %
          L;
  }
  return num;
}

DirichletCharacter UnitGroup::character(std::vector<std::uint32_t> exponents) const {
  return DirichletCharacter(shared_from_this(), std::move(exponents));
}

DirichletCharacter UnitGroup::trivial_character() const {
  return character(std::vector<std::uint32_t>(orders_.size(), 0));
}

DirichletCharacter UnitGroup::character_at(std::uint32_t flat_index) const {
  std::vector<std::uint32_t> e(orders_.size());
  index_digits(flat_index, e.data());
  return character(std::move(e));
}

DirichletCharacter::DirichletCharacter(UnitGroupPtr group, std::vector<std::uint32_t> exps)
    : g_(std::move(group)), e_(std::move(exps)) {
  const auto& orders = g_->component_orders();
  if (e_.size() != orders.size())
    throw std::invalid_argument("DirichletCharacter: exponent vector size mismatch");
  order_ = 1;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    e_[i] %= orders[i];
    order_ = lcm_u64(order_, orders[i] / gcd_u64(e_[i], orders[i]));
  }
}

std::uint32_t DirichletCharacter::flat_index() const {
  std::uint32_t idx = 0;
  const auto& orders = g_->component_orders();
  for (std::size_t i = e_.size(); i-- > 0;) idx = idx * orders[i] + e_[i];
  return idx;
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t n) const {
  if (!g_->is_unit(n)) return 0.0;
  // Rational phase reduced mod 1 before exponentiation; no drift for
  // high-order characters.
  std::int64_t num = phase_numerator(n);
  double angle = 2.0 * std::numbers::pi * double(num) / double(g_->group_exponent());
  return std::polar(1.0, angle);
}

DirichletCharacter DirichletCharacter::pow(std::int64_t t) const {
  const auto& orders = g_->component_orders();
  std::vector<std::uint32_t> e(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) {
    std::int64_t m = orders[i];
    std::int64_t v = (static_cast<std::int64_t>(e_[i]) % m) * (t % m) % m;
    e[i] = static_cast<std::uint32_t>((v % m + m) % m);
  }
  return DirichletCharacter(g_, std::move(e));
}

DirichletCharacter DirichletCharacter::times(const DirichletCharacter& o) const {
  const auto& orders = g_->component_orders();
  std::vector<std::uint32_t> e(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) e[i] = (e_[i] + o.e_[i]) % orders[i];
  return DirichletCharacter(g_, std::move(e));
}

std::vector<DirichletCharacter> characters(const UnitGroupPtr& group) {
  std::vector<DirichletCharacter> out;
  out.reserve(group->phi());
  for (std::uint32_t i = 0; i < group->character_count(); ++i)
    out.push_back(group->character_at(i));
  return out;
}

}  // namespace primeprod
