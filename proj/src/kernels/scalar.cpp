#include <bit>
#include <cmath>
#include <limits>

#include "gossipjam/kernels.hpp"

namespace gossipjam::kernels::scalar {

void interval_row(const IntervalRow& row, std::span<const double> prev, std::span<double> out) {
  const std::size_t count = row.size - row.length + 1;
  const std::size_t k = row.length;
  out[0] = 0.0;
  for (std::size_t p = 0; p < count; ++p) {
    const double left = row.in_left[p];
    const double right = row.in_right[p + k - 1];
    const double num = row.lambda_s + left * prev[p] + right * prev[p + 1];
    const double den = (row.src_prefix[p + k] - row.src_prefix[p]) + left + right;
    out[p + 1] = num / den;
  }
  out[count + 1] = 0.0;
}

void ring_age_table(std::span<const double> sizes, std::size_t max_ring, std::span<double> table) {
  const std::size_t batch = sizes.size();
  for (std::size_t b = 0; b < batch; ++b) {
    const double n = sizes[b];
    double product = 1.0;
    double sum = 0.0;
    table[b] = n;
    for (std::size_t j = 1; j < max_ring; ++j) {
      const double jd = static_cast<double>(j);
      product = product / (jd / n + 1.0);
      sum = sum + product;
      table[j * batch + b] = sum + (n / (jd + 1.0)) * product;
    }
  }
}

double subset_step(const SubsetSystem& sys, std::uint32_t mask, std::span<const double> ages) {
  double source = 0.0;
  for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1)
    source += sys.source[static_cast<std::size_t>(std::countr_zero(bits))];

  double num = sys.lambda_s;
  double den = source;
  for (std::size_t i = 0; i < sys.size; ++i) {
    if ((mask >> i) & 1u) continue;
    double into = 0.0;
    for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1)
      into += sys.in_rate[static_cast<std::size_t>(std::countr_zero(bits)) * sys.stride + i];
    if (into > 0.0) {
      num += into * ages[mask | (1u << i)];
      den += into;
    }
  }
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace gossipjam::kernels::scalar
