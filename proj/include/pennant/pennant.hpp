#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pennant/index.hpp"
#include "pennant/weighting.hpp"

namespace pennant {

/// Specificity band of a co-occurring term relative to the seed.
///   A: markedly narrower than the seed (lower total count)
///   B: roughly the seed's own specificity
///   C: far broader than the seed
enum class Sector : std::uint8_t { A, B, C };

char sector_letter(Sector s);
/// Inverse of sector_letter; nullopt for anything but "A", "B", "C".
std::optional<Sector> parse_sector(std::string_view s);

struct SectorParams {
  double alpha = 0.5;  // df_term/df_seed at or below this is sector A
  double gamma = 5.0;  // df_term/df_seed at or above this is sector C
  double tau = 0.5;    // co_count/df_seed at or above this marks a broad term dominant

  friend bool operator==(const SectorParams&, const SectorParams&) = default;
};

/// Throws InvalidParameterError naming the offending field.
void validate(const SectorParams& params);

Sector classify_sector(Count df_term, Count df_seed, const SectorParams& params = {});

/// A broad term (df_term > df_seed) that co-occurs with at least a `tau`
/// share of the seed's documents.
bool flag_dominant(Count co_count, Count df_seed, Count df_term, const SectorParams& params = {});

inline constexpr Count kDefaultMinCo = 50;

struct PennantParams {
  Count min_co = kDefaultMinCo;
  std::optional<std::size_t> top_k;  // unlimited when empty; 25 is a common choice
  double log_base = kDefaultLogBase;
  std::optional<Count> n_override;
  SectorParams sectors;

  friend bool operator==(const PennantParams&, const PennantParams&) = default;
};

struct PennantPoint {
  std::string term;
  Count co_count = 0;
  Count df = 0;
  double x = 0.0;  // tf weight of co_count
  double y = 0.0;  // idf weight of df
  Sector sector = Sector::B;
  bool dominant = false;

  friend bool operator==(const PennantPoint&, const PennantPoint&) = default;
};

struct PennantDiagram {
  std::string seed;
  Count seed_df = 0;
  double seed_x = 0.0;
  double seed_y = 0.0;
  Count n_docs = 0;        // effective N used for idf
  Count index_n_docs = 0;  // documents actually in the index
  PennantParams params;
  std::vector<PennantPoint> points;  // x desc, y desc, term asc

  friend bool operator==(const PennantDiagram&, const PennantDiagram&) = default;
};

/// Builds the diagram for `seed`. The seed sits at
/// (tf_weight(df_seed), idf_weight(df_seed)), which is never left of any
/// point because a co-occurrence count cannot exceed df_seed.
///
/// Throws UnknownTermError, InvalidNError, DomainError or
/// InvalidParameterError. A diagram with no points is a valid result.
PennantDiagram compute_pennant(const TermIndex& index, std::string_view seed,
                               const PennantParams& params = {});

/// Orders points by (x desc, y desc, term asc). x and y are monotone in
/// co_count and df, so the integer counts are compared instead of the
/// weights.
void sort_points(std::vector<PennantPoint>& points);

}  // namespace pennant
