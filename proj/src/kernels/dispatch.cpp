#include <atomic>
#include <cstdlib>
#include <string_view>

#include "gossipjam/kernels.hpp"

namespace gossipjam::kernels {

namespace {

SimdLevel detect() {
#if defined(GOSSIPJAM_HAVE_AVX2_KERNELS)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return SimdLevel::avx2;
#endif
  return SimdLevel::scalar;
}

SimdLevel initial_level() {
  const SimdLevel best = detected_level();
  if (const char* env = std::getenv("GOSSIPJAM_SIMD")) {
    if (std::string_view(env) == "scalar") return SimdLevel::scalar;
  }
  return best;
}

std::atomic<SimdLevel>& current() {
  static std::atomic<SimdLevel> level{initial_level()};
  return level;
}

SimdLevel clamp(SimdLevel wanted) {
  return static_cast<int>(wanted) <= static_cast<int>(detected_level()) ? wanted
                                                                        : detected_level();
}

}  // namespace

std::string_view to_string(SimdLevel level) {
  switch (level) {
    case SimdLevel::scalar:
      return "scalar";
    case SimdLevel::avx2:
      return "avx2";
  }
  return "unknown";
}

SimdLevel detected_level() {
  static const SimdLevel level = detect();
  return level;
}

SimdLevel active_level() { return current().load(std::memory_order_relaxed); }

ScopedSimdLevel::ScopedSimdLevel(SimdLevel level)
    : previous_(current().exchange(clamp(level), std::memory_order_relaxed)) {}

ScopedSimdLevel::~ScopedSimdLevel() {
  if (previous_) current().store(*previous_, std::memory_order_relaxed);
}

void interval_row(const IntervalRow& row, std::span<const double> prev, std::span<double> out) {
#if defined(GOSSIPJAM_HAVE_AVX2_KERNELS)
  if (active_level() == SimdLevel::avx2) return avx2::interval_row(row, prev, out);
#endif
  scalar::interval_row(row, prev, out);
}

void ring_age_table(std::span<const double> sizes, std::size_t max_ring, std::span<double> table) {
#if defined(GOSSIPJAM_HAVE_AVX2_KERNELS)
  if (active_level() == SimdLevel::avx2) return avx2::ring_age_table(sizes, max_ring, table);
#endif
  scalar::ring_age_table(sizes, max_ring, table);
}

double subset_step(const SubsetSystem& sys, std::uint32_t mask, std::span<const double> ages) {
#if defined(GOSSIPJAM_HAVE_AVX2_KERNELS)
  if (active_level() == SimdLevel::avx2 && sys.stride % 4 == 0)
    return avx2::subset_step(sys, mask, ages);
#endif
  return scalar::subset_step(sys, mask, ages);
}

}  // namespace gossipjam::kernels
