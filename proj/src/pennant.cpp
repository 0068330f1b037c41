#include "pennant/pennant.hpp"

#include <algorithm>
#include <cmath>

#include "pennant/error.hpp"

namespace pennant {

char sector_letter(Sector s) {
  switch (s) {
    case Sector::A: return 'A';
    case Sector::B: return 'B';
    case Sector::C: return 'C';
  }
  return '?';
}

std::optional<Sector> parse_sector(std::string_view s) {
  if (s == "A") return Sector::A;
  if (s == "B") return Sector::B;
  if (s == "C") return Sector::C;
  return std::nullopt;
}

void validate(const SectorParams& p) {
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw InvalidParameterError("alpha", "must lie in (0, 1]");
  if (!(p.gamma >= 1.0) || !std::isfinite(p.gamma)) {
    throw InvalidParameterError("gamma", "must be a finite number >= 1");
  }
  if (!(p.alpha < p.gamma)) throw InvalidParameterError("gamma", "must be greater than alpha");
  if (!(p.tau > 0.0 && p.tau <= 1.0)) throw InvalidParameterError("tau", "must lie in (0, 1]");
}

Sector classify_sector(Count df_term, Count df_seed, const SectorParams& params) {
  const double ratio = static_cast<double>(df_term) / static_cast<double>(df_seed);
  if (ratio <= params.alpha) return Sector::A;
  if (ratio >= params.gamma) return Sector::C;
  return Sector::B;
}

bool flag_dominant(Count co_count, Count df_seed, Count df_term, const SectorParams& params) {
  const double rate = static_cast<double>(co_count) / static_cast<double>(df_seed);
  return rate >= params.tau && df_term > df_seed;
}

void sort_points(std::vector<PennantPoint>& points) {
  std::sort(points.begin(), points.end(), [](const PennantPoint& a, const PennantPoint& b) {
    if (a.co_count != b.co_count) return a.co_count > b.co_count;
    if (a.df != b.df) return a.df < b.df;
    return a.term < b.term;
  });
}

PennantDiagram compute_pennant(const TermIndex& index, std::string_view seed,
                               const PennantParams& params) {
  const TermId seed_id = index.id_of(seed);
  if (params.min_co < 1) throw InvalidParameterError("min_co", "must be at least 1");
  if (params.top_k && *params.top_k < 1) throw InvalidParameterError("top_k", "must be at least 1");
  validate(params.sectors);
  const WeightParams weights{params.log_base, index.n_docs(), params.n_override};
  validate(weights, index.max_df());

  const Count n = weights.effective_n();
  const double base = params.log_base;

  PennantDiagram d;
  d.seed = index.term(seed_id);
  d.seed_df = index.df(seed_id);
  d.seed_x = tf_weight(d.seed_df, base);
  d.seed_y = idf_weight(d.seed_df, n, base);
  d.n_docs = n;
  d.index_n_docs = index.n_docs();
  d.params = params;

  const auto ranked = index.rank_cooccurring(d.seed, params.min_co, params.top_k);
  d.points.reserve(ranked.size());
  for (const auto& e : ranked) {
    PennantPoint p;
    p.term = e.term;
    p.co_count = e.co_count;
    p.df = index.df(e.term);
    p.x = tf_weight(p.co_count, base);
    p.y = idf_weight(p.df, n, base);
    p.sector = classify_sector(p.df, d.seed_df, params.sectors);
    p.dominant = flag_dominant(p.co_count, d.seed_df, p.df, params.sectors);
    d.points.push_back(std::move(p));
  }
  sort_points(d.points);
  return d;
}

}  // namespace pennant
