#include "primeprod/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>

#include "primeprod/errors.hpp"

namespace primeprod {

namespace {

constexpr std::size_t kSegmentSize = 1 << 18;

std::vector<std::uint64_t> sieve_impl(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  out.reserve(static_cast<std::size_t>(1.2 * limit / std::max(1.0, std::log(double(limit)))) + 16);

  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(double(limit)));
  while ((root + 1) * (root + 1) <= limit) ++root;
  while (root * root > limit) --root;

  // small primes up to sqrt(limit)
  std::vector<char> small(root + 1, 1);
  for (std::uint64_t i = 2; i * i <= root; ++i)
    if (small[i])
      for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i)
    if (small[i]) base.push_back(i);

  std::vector<char> seg(kSegmentSize);
  for (std::uint64_t low = 2; low <= limit; low += kSegmentSize) {
    std::uint64_t high = std::min<std::uint64_t>(low + kSegmentSize - 1, limit);
    std::fill(seg.begin(), seg.end(), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) seg[j - low] = 0;
    }
    for (std::uint64_t n = low; n <= high; ++n)
      if (seg[n - low]) out.push_back(n);
  }
  return out;
}

struct Cache {
  std::mutex mu;
  std::uint64_t limit = 0;
  PrimeList table = std::make_shared<std::vector<std::uint64_t>>();
};

Cache& cache() {
  static Cache c;
  return c;
}

std::filesystem::path cache_file(std::uint64_t limit) {
  const char* dir = std::getenv("PRIMEPROD_CACHE_DIR");
  if (!dir || !*dir) return {};
  return std::filesystem::path(dir) / ("primes_" + std::to_string(limit) + ".bin");
}

PrimeList try_load(std::uint64_t limit) {
  auto path = cache_file(limit);
  if (path.empty()) return nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return nullptr;
  in.seekg(0, std::ios::end);
  auto bytes = in.tellg();
  in.seekg(0);
  if (bytes <= 0 || bytes % 8 != 0) return nullptr;
  auto v = std::make_shared<std::vector<std::uint64_t>>(std::size_t(bytes) / 8);
  in.read(reinterpret_cast<char*>(v->data()), bytes);
  if (!in) return nullptr;
  return v;
}

void try_store(std::uint64_t limit, const PrimeList& table) {
  auto path = cache_file(limit);
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(reinterpret_cast<const char*>(table->data()),
              static_cast<std::streamsize>(table->size() * 8));
    if (!out) return;
  }
  std::filesystem::rename(tmp, path, ec);
}

// Round sieve limits up so repeated slightly-larger requests reuse the table.
std::uint64_t round_limit(std::uint64_t limit) {
  std::uint64_t r = 1 << 16;
  while (r < limit) r *= 2;
  return std::min(r, kSieveCeiling);
}

}  // namespace

std::vector<std::uint64_t> segmented_sieve(std::uint64_t limit) { return sieve_impl(limit); }

PrimeList primes_snapshot(std::uint64_t limit) {
  if (limit > kSieveCeiling)
    throw ResourceLimitError("prime sieve request " + std::to_string(limit) +
                             " exceeds ceiling " + std::to_string(kSieveCeiling));
  Cache& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  if (limit <= c.limit) return c.table;
  std::uint64_t goal = round_limit(limit);
  if (PrimeList loaded = try_load(goal)) {
    c.table = loaded;
    c.limit = goal;
    return c.table;
  }
  c.table = std::make_shared<std::vector<std::uint64_t>>(sieve_impl(goal));
  c.limit = goal;
  try_store(goal, c.table);
  return c.table;
}

std::span<const std::uint64_t> primes_leq(const PrimeList& table, std::uint64_t x) {
  auto it = std::upper_bound(table->begin(), table->end(), x);
  return {table->data(), static_cast<std::size_t>(it - table->begin())};
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
  auto snap = primes_snapshot(x);
  auto view = primes_leq(snap, x);
  return {view.begin(), view.end()};
}

}  // namespace primeprod
