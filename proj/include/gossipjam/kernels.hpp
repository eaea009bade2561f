#pragma once

// Arithmetic inner loops of the analytic solvers. Each kernel has a scalar
// reference in `kernels::scalar` and, on x86-64, an AVX2 variant in
// `kernels::avx2`. The unqualified entry points dispatch at runtime on the
// active SIMD level.
//
// The interval-row and ring-prefix kernels perform the same IEEE operations
// per lane in both variants, so results are bit-identical (the build uses
// -ffp-contract=off). The subset step reorders a sum and agrees to rounding.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace gossipjam::kernels {

enum class SimdLevel { scalar, avx2 };

std::string_view to_string(SimdLevel level);

/// Best level the CPU supports.
SimdLevel detected_level();

/// Level the dispatching entry points use: the detected level, lowered by
/// the GOSSIPJAM_SIMD=scalar environment variable or a ScopedSimdLevel.
SimdLevel active_level();

/// Forces a level for the lifetime of the guard (clamped to what the CPU
/// supports). Not reentrant across threads; meant for tests and benchmarks.
class ScopedSimdLevel {
 public:
  explicit ScopedSimdLevel(SimdLevel level);
  ~ScopedSimdLevel();
  ScopedSimdLevel(const ScopedSimdLevel&) = delete;
  ScopedSimdLevel& operator=(const ScopedSimdLevel&) = delete;

 private:
  std::optional<SimdLevel> previous_;
};

/// One row of the contiguous-interval recursion on a path of `size` nodes.
///
/// Row k holds the age of every interval of length k, indexed by its start
/// p = 0..size-k. Both row buffers carry a zero sentinel at index 0 and
/// after the last entry, so `prev` (row k+1) has size-k+2 slots and `out`
/// has size-k+3. Entry p of row k is written to out[p+1]:
///
///   num = lambda_s + in_left[p] * prev[p] + in_right[p+k-1] * prev[p+1]
///   den = (src_prefix[p+k] - src_prefix[p]) + in_left[p] + in_right[p+k-1]
///
/// in_left[p] is the rate at which node p-1 pushes into p (0 at p = 0),
/// in_right[q] the rate at which q+1 pushes into q (0 at the last node).
/// These are the two ways an interval gains a node. src_prefix is the
/// running sum of source rates with src_prefix[0] = 0.
struct IntervalRow {
  double lambda_s;
  std::size_t size;
  std::size_t length;
  std::span<const double> src_prefix;
  std::span<const double> in_left;
  std::span<const double> in_right;
};

void interval_row(const IntervalRow& row, std::span<const double> prev, std::span<double> out);

/// Ring closed form for a batch of system sizes, normalized to lambda_s =
/// lambda = 1: table[(n0-1) * sizes.size() + b] = ring age of a size-n0 ring
/// in a system of sizes[b] nodes, for n0 = 1..max_ring.
void ring_age_table(std::span<const double> sizes, std::size_t max_ring, std::span<double> table);

/// Dense description of one component for the subset recursion.
/// in_rate[j * stride + i] is the rate from local node i into local node j;
/// stride >= size and padding entries are zero.
struct SubsetSystem {
  double lambda_s;
  std::size_t size;
  std::size_t stride;
  std::span<const double> in_rate;
  std::span<const double> source;
};

/// Age of set `mask` given the ages of all strict supersets in `ages`
/// (indexed by mask). Returns +inf when the set receives no updates.
double subset_step(const SubsetSystem& sys, std::uint32_t mask, std::span<const double> ages);

namespace scalar {
void interval_row(const IntervalRow& row, std::span<const double> prev, std::span<double> out);
void ring_age_table(std::span<const double> sizes, std::size_t max_ring, std::span<double> table);
double subset_step(const SubsetSystem& sys, std::uint32_t mask, std::span<const double> ages);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GOSSIPJAM_HAVE_AVX2_KERNELS 1
namespace avx2 {
void interval_row(const IntervalRow& row, std::span<const double> prev, std::span<double> out);
void ring_age_table(std::span<const double> sizes, std::size_t max_ring, std::span<double> table);
double subset_step(const SubsetSystem& sys, std::uint32_t mask, std::span<const double> ages);
}  // namespace avx2
#endif

}  // namespace gossipjam::kernels
