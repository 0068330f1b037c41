#include "pennant/weighting.hpp"

#include <cmath>
#include <string>

#include "pennant/error.hpp"

namespace pennant {
namespace {

void check_base(double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw DomainError("log base must be a finite number greater than 1, got " + std::to_string(base));
  }
}

}  // namespace

double log_in_base(double v, double base) {
  if (base == 10.0) return std::log10(v);
  if (base == 2.0) return std::log2(v);
  return std::log(v) / std::log(base);
}

double tf_weight(std::uint64_t count, double base) {
  check_base(base);
  if (count == 0) throw DomainError("tf weight needs a non-zero co-occurrence count");
  return log_in_base(static_cast<double>(count), base) + 1.0;
}

double idf_weight(std::uint64_t df, std::uint64_t n, double base) {
  check_base(base);
  if (df == 0) throw DomainError("idf weight needs a non-zero document frequency");
  if (df > n) {
    throw InvalidNError("N = " + std::to_string(n) + " is smaller than document frequency " +
                        std::to_string(df));
  }
  return log_in_base(static_cast<double>(n) / static_cast<double>(df), base);
}

void validate(const WeightParams& params, std::uint64_t max_df) {
  check_base(params.log_base);
  if (params.effective_n() < max_df) {
    throw InvalidNError("N = " + std::to_string(params.effective_n()) +
                        " is smaller than the largest document frequency " + std::to_string(max_df));
  }
}

}  // namespace pennant
