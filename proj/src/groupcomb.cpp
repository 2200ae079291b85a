#include "primeprod/groupcomb.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace primeprod {

namespace {
constexpr std::size_t kMulTableLimit = 1024;
}

std::shared_ptr<const AbelianGroup> AbelianGroup::make(std::vector<std::uint32_t> orders) {
  return std::make_shared<AbelianGroup>(std::move(orders));
}

AbelianGroup::AbelianGroup(std::vector<std::uint32_t> orders) : orders_(std::move(orders)) {
  for (std::uint32_t m : orders_) {
    if (m == 0) throw std::invalid_argument("AbelianGroup: zero component order");
    n_ *= m;
  }
  if (n_ <= kMulTableLimit) {
    table_.resize(n_ * n_);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b)
        table_[std::size_t(a) * n_ + b] = mul_slow(a, b);
  }
}

std::uint32_t AbelianGroup::mul_slow(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0, stride = 1;
  for (std::uint32_t m : orders_) {
    std::uint32_t da = a % m, db = b % m;
    a /= m;
    b /= m;
    r += (da + db) % m * stride;
    stride *= m;
  }
  return r;
}

std::uint32_t AbelianGroup::inv(std::uint32_t a) const {
  std::uint32_t r = 0, stride = 1;
  for (std::uint32_t m : orders_) {
    std::uint32_t d = a % m;
    a /= m;
    r += (d == 0 ? 0 : m - d) * stride;
    stride *= m;
  }
  return r;
}

std::uint32_t AbelianGroup::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 0, stride = 1;
  for (std::uint32_t m : orders_) {
    std::uint32_t d = a % m;
    a /= m;
    r += static_cast<std::uint32_t>(std::uint64_t(d) * (e % m) % m) * stride;
    stride *= m;
  }
  return r;
}

std::uint64_t AbelianGroup::element_order(std::uint32_t a) const {
  std::uint64_t ord = 1;
  for (std::uint32_t m : orders_) {
    std::uint32_t d = a % m;
    a /= m;
    ord = lcm_u64(ord, m / gcd_u64(d, m));
  }
  return ord;
}

bool AbelianGroup::is_cyclic() const {
  std::uint64_t l = 1;
  for (std::uint32_t m : orders_) l = lcm_u64(l, m);
  return l == n_;
}

Subset product_set(const Subset& a, const Subset& b) {
  if (a.group().get() != b.group().get() &&
      a.group()->component_orders() != b.group()->component_orders())
    throw std::invalid_argument("product_set: group mismatch");
  const AbelianGroup& g = *a.group();
  Subset out(a.group());
  auto ea = a.elements();
  auto eb = b.elements();
  for (std::size_t x : ea)
    for (std::size_t y : eb)
      out.bits().set(g.mul(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)));
  return out;
}

Subset product_power(const Subset& a, int k) {
  if (k < 1) throw std::invalid_argument("product_power: k >= 1 required");
  Subset cur = a;
  for (int i = 1; i < k; ++i) {
    if (cur.size() == cur.group()->order()) break;  // already all of G
    cur = product_set(cur, a);
  }
  return cur;
}

StabilizerResult stabilizer(const Subset& s) {
  const AbelianGroup& g = *s.group();
  const std::size_t n = g.order();
  Subset h(s.group());
  if (s.empty()) {
    for (std::uint32_t x = 0; x < n; ++x) h.add(x);
    return {h, true};
  }
  auto members = s.elements();
  for (std::uint32_t x = 0; x < n; ++x) {
    bool fixes = true;
    for (std::size_t m : members)
      if (!s.contains(g.mul(x, static_cast<std::uint32_t>(m)))) {
        fixes = false;
        break;
      }
    if (fixes) h.add(x);
  }
  return {h, false};
}

KneserReport kneser_check(const Subset& a) {
  if (a.empty()) throw std::invalid_argument("kneser_check: empty set");
  Subset aa = product_set(a, a);
  Subset h = stabilizer(aa).subgroup;
  Subset ah = product_set(a, h);
  KneserReport r{a.size(), aa.size(), h.size(), ah.size(), false,
                 std::move(aa), std::move(h), std::move(ah)};
  r.inequality_holds = r.AA_size + r.H_size >= 2 * r.AH_size;
  return r;
}

CasecheckReport casecheck_analysis(const Subset& b, bool union_density_ok) {
  if (b.empty()) throw std::invalid_argument("casecheck_analysis: empty set");
  const std::size_t n = b.group()->order();
  CasecheckReport rep;
  rep.lambda = b.size();
  rep.k = static_cast<int>(n / 3);
  rep.r = static_cast<int>(n % 3);
  rep.hypothesis_third = 3 * rep.lambda > n;
  rep.hypothesis_density = 32 * rep.lambda > 11 * n;

  Subset bb = product_set(b, b);
  rep.BB_size = bb.size();
  rep.bb_trivial_stabilizer = stabilizer(bb).subgroup.size() == 1;
  Subset uni = b;
  uni.bits() |= bb.bits();
  rep.complement =
      (rep.lambda + rep.BB_size == n) && (uni.size() == n);

  if (!rep.hypothesis_third) {
    rep.outcome = CasecheckOutcome::kInconclusive;
    rep.reason = "density hypothesis |B| > |G0|/3 violated";
    return rep;
  }
  const std::size_t k = static_cast<std::size_t>(rep.k);
  // lambda >= k+1 follows from the density hypothesis
  if (rep.r != 2) {
    rep.outcome = CasecheckOutcome::kCovered;
    rep.reason = "|G0| = 3k+r with r in {0,1}: |A| + |A.A| > (3k+1)|H| >= |G|";
    return rep;
  }
  if (rep.lambda >= k + 2) {
    rep.outcome = CasecheckOutcome::kCovered;
    rep.reason = "lambda >= k+2: |A| + |A.A| > (3k+2)|H| = |G|";
    return rep;
  }
  if (rep.BB_size >= 2 * k + 2) {
    rep.outcome = CasecheckOutcome::kCovered;
    rep.reason = "|B.B| >= 2k+2: |A| + |A.A| > (3k+2)|H| = |G|";
    return rep;
  }
  if (!rep.complement) {
    if (union_density_ok) {
      rep.outcome = CasecheckOutcome::kCovered;
      rep.reason = "B, B.B not complements: |B u B.B| <= 3k+1 contradicts the union density";
    } else {
      rep.outcome = CasecheckOutcome::kInconclusive;
      rep.reason = "B, B.B not complements and union density unknown";
    }
    return rep;
  }
  if (!rep.hypothesis_density || rep.k >= 10) {
    rep.outcome = CasecheckOutcome::kInconclusive;
    rep.reason = "exceptional shape with k >= 10 contradicts |B| > (11/32)|G0|";
    return rep;
  }
  rep.outcome = CasecheckOutcome::kExceptional;
  rep.reason = "exceptional: |B| = k+1, |B.B| = 2k+1, complement sets, k <= 9";
  return rep;
}

TaovuReport taovu_classify(const Subset& b) {
  const std::size_t n = b.group()->order();
  if (n < 5 || n % 3 != 2)
    throw std::invalid_argument("taovu_classify: |G0| = 3k+2 required");
  const std::size_t k = (n - 2) / 3;
  if (b.size() != k + 1)
    throw std::invalid_argument("taovu_classify: |B| = k+1 required");

  TaovuReport rep;
  Subset bb = product_set(b, b);
  bool compl_ok = bb == b.complement();
  bool triv = stabilizer(bb).subgroup.size() == 1;
  rep.is_exceptional_structure = compl_ok && triv;
  if (!rep.is_exceptional_structure) return rep;

  const AbelianGroup& g = *b.group();
  for (std::uint32_t x = 0; x < n; ++x) {
    if (g.element_order(x) != n) continue;
    Subset cand(b.group());
    for (std::size_t t = k + 1; t <= 2 * k + 1; ++t)
      cand.add(g.pow(x, t));
    if (cand == b) {
      rep.generator = x;
      break;
    }
  }
  return rep;
}

Subset closure(const Subset& a) {
  const AbelianGroup& g = *a.group();
  Subset h(a.group());
  h.add(g.identity());
  std::vector<std::uint32_t> work{g.identity()};
  auto gens = a.elements();
  while (!work.empty()) {
    std::uint32_t x = work.back();
    work.pop_back();
    for (std::size_t gen : gens) {
      std::uint32_t y = g.mul(x, static_cast<std::uint32_t>(gen));
      if (!h.contains(y)) {
        h.add(y);
        work.push_back(y);
      }
    }
  }
  return h;
}

bool in_proper_coset(const Subset& a) {
  if (a.empty()) return true;
  const AbelianGroup& g = *a.group();
  std::uint32_t a0 = static_cast<std::uint32_t>(a.elements().front());
  // A subset gK iff a0^{-1} A generates a proper subgroup
  Subset shifted(a.group());
  std::uint32_t inv = g.inv(a0);
  a.bits().for_each([&](std::size_t x) {
    shifted.add(g.mul(inv, static_cast<std::uint32_t>(x)));
  });
  return closure(shifted).size() < g.order();
}

std::vector<Subset> all_subgroups(const AbelianGroupPtr& g) {
  std::map<std::vector<std::uint64_t>, Subset> found;
  Subset triv(g);
  triv.add(g->identity());
  found.emplace(triv.bits().words(), triv);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subset> cur;
    cur.reserve(found.size());
    for (auto& [k, v] : found) cur.push_back(v);
    for (const Subset& h : cur) {
      for (std::uint32_t x = 0; x < g->order(); ++x) {
        if (h.contains(x)) continue;
        Subset ext = h;
        ext.add(x);
        Subset cl = closure(ext);
        if (found.emplace(cl.bits().words(), cl).second) grew = true;
      }
    }
  }
  std::vector<Subset> out;
  out.reserve(found.size());
  for (auto& [k, v] : found) out.push_back(v);
  return out;
}

namespace {

void partitions_of(int e, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  // descending partitions
  auto rec = [&](auto&& self, int rem, int maxpart) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, e, e);
}

}  // namespace

std::vector<std::vector<std::uint32_t>> abelian_group_shapes(std::uint64_t n) {
  Modulus m = factorize(n);
  std::vector<std::vector<std::vector<std::uint32_t>>> per_prime;
  for (auto& [p, e] : m.factorization) {
    std::vector<std::vector<int>> parts;
    partitions_of(e, parts);
    std::vector<std::vector<std::uint32_t>> choices;
    for (auto& part : parts) {
      std::vector<std::uint32_t> orders;
      for (int x : part) {
        std::uint64_t pk = 1;
        for (int i = 0; i < x; ++i) pk *= p;
        orders.push_back(static_cast<std::uint32_t>(pk));
      }
      choices.push_back(std::move(orders));
    }
    per_prime.push_back(std::move(choices));
  }
  std::vector<std::vector<std::uint32_t>> shapes{{}};
  for (auto& choices : per_prime) {
    std::vector<std::vector<std::uint32_t>> next;
    for (auto& base : shapes)
      for (auto& c : choices) {
        auto s = base;
        s.insert(s.end(), c.begin(), c.end());
        next.push_back(std::move(s));
      }
    shapes = std::move(next);
  }
  for (auto& s : shapes) std::sort(s.begin(), s.end());
  if (n == 1) shapes = {{1}};
  return shapes;
}

Subset random_subset(const AbelianGroupPtr& g, std::mt19937_64& rng) {
  Subset s(g);
  do {
    s.bits().clear();
    for (std::uint32_t x = 0; x < g->order(); ++x)
      if (rng() & 1) s.add(x);
  } while (s.empty());
  return s;
}

CharacterQuotient quotient_by_character(const DirichletCharacter& chi) {
  const UnitGroup& G = *chi.group();
  const std::uint64_t m = chi.order();
  const std::uint64_t L = G.group_exponent();
  CharacterQuotient out;
  out.quotient = AbelianGroup::make({static_cast<std::uint32_t>(m)});
  out.proj.resize(G.phi());
  const std::uint64_t step = L / m;  // phase numerators are multiples of L/m
  for (std::uint32_t i = 0; i < G.phi(); ++i) {
    std::int64_t num = chi.phase_numerator(G.residue(i));
    out.proj[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(num) / step);
  }
  return out;
}

}  // namespace primeprod
