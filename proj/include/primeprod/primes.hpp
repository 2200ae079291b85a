#ifndef PRIMEPROD_PRIMES_HPP
#define PRIMEPROD_PRIMES_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace primeprod {

// Hard ceiling on sieve requests; q^{6/5+eps} style scans stay well below it
// for moduli into the millions.  Exceeding it raises ResourceLimitError.
inline constexpr std::uint64_t kSieveCeiling = 100'000'000;

using PrimeList = std::shared_ptr<const std::vector<std::uint64_t>>;

// Shared prime table.  Grows monotonically; snapshots stay valid after later
// extensions.  If the environment variable PRIMEPROD_CACHE_DIR is set, sieved
// tables are stored there and reloaded across processes.
PrimeList primes_snapshot(std::uint64_t limit);

// Sorted primes <= x (a copy; use primes_snapshot for bulk work).
std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

// View of the snapshot restricted to primes <= x.
std::span<const std::uint64_t> primes_leq(const PrimeList& table, std::uint64_t x);

// Standalone segmented sieve, independent of the cache.
std::vector<std::uint64_t> segmented_sieve(std::uint64_t limit);

}  // namespace primeprod

#endif
