#pragma once

#include <cstdint>
#include <optional>

namespace pennant {

inline constexpr double kDefaultLogBase = 10.0;

/// log of `v` in `base`; exact for bases 2 and 10.
double log_in_base(double v, double base);

/// Horizontal pennant coordinate: log_base(count) + 1.
/// Throws DomainError for count == 0 or base <= 1.
double tf_weight(std::uint64_t count, double base = kDefaultLogBase);

/// Vertical pennant coordinate: log_base(n / df).
/// Throws DomainError for df == 0 or base <= 1, InvalidNError when df > n.
double idf_weight(std::uint64_t df, std::uint64_t n, double base = kDefaultLogBase);

struct WeightParams {
  double log_base = kDefaultLogBase;
  std::uint64_t n_docs = 0;                  // documents in the index
  std::optional<std::uint64_t> n_override;   // caller's estimate of N, if the index is a sample

  std::uint64_t effective_n() const { return n_override.value_or(n_docs); }

  friend bool operator==(const WeightParams&, const WeightParams&) = default;
};

/// Throws DomainError unless log_base > 1, InvalidNError unless
/// effective_n() >= max_df.
void validate(const WeightParams& params, std::uint64_t max_df);

}  // namespace pennant
