#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pennant/corpus.hpp"

namespace pennant {

using Count = std::uint64_t;
using DocOrdinal = std::uint32_t;
using TermId = std::uint32_t;

struct BuildMeta {
  NormalizationPolicy norm;
  Count dropped_empty = 0;  // documents excluded from N for having no terms

  friend bool operator==(const BuildMeta&, const BuildMeta&) = default;
};

/// A term and how many documents it shares with the current seed.
struct CoocEntry {
  std::string term;
  Count co_count = 0;

  friend bool operator==(const CoocEntry&, const CoocEntry&) = default;
};

/// Immutable inverted index over a corpus of descriptor sets.
///
/// Vocabulary is held in ascending byte order and TermIds are positions in
/// it. Document ordinals are assigned by ascending doc_id, so the index is
/// independent of the order records were ingested in. A forward index
/// (document -> terms) is kept alongside the postings to make ranking a
/// single pass over the seed's documents.
class TermIndex {
 public:
  TermIndex() = default;

  static TermIndex build(const Corpus& corpus);

  Count n_docs() const noexcept { return n_docs_; }
  std::size_t vocab_size() const noexcept { return vocab_.size(); }
  const std::vector<std::string>& vocabulary() const noexcept { return vocab_; }
  const BuildMeta& build_meta() const noexcept { return meta_; }

  std::optional<TermId> find(std::string_view term) const;
  /// Like find() but throws UnknownTermError.
  TermId id_of(std::string_view term) const;
  const std::string& term(TermId id) const { return vocab_.at(id); }

  Count df(TermId id) const { return postings_.at(id).size(); }
  Count df(std::string_view term) const { return df(id_of(term)); }
  std::span<const DocOrdinal> postings(TermId id) const { return postings_.at(id); }

  /// Largest document frequency of any term; 0 for an empty index.
  Count max_df() const noexcept { return max_df_; }

  /// Size of the Boolean AND of the two terms' posting lists.
  Count cooccurrence(std::string_view a, std::string_view b) const;
  Count cooccurrence(TermId a, TermId b) const;

  /// All terms other than `seed` whose co-occurrence with it is at least
  /// `min_co`, ordered by count descending then term ascending, cut to
  /// `top_k` entries when given.
  std::vector<CoocEntry> rank_cooccurring(std::string_view seed, Count min_co,
                                          std::optional<std::size_t> top_k = std::nullopt) const;

  /// Vocabulary entries starting with `prefix`, ascending, at most `limit`.
  std::vector<TermId> terms_with_prefix(std::string_view prefix, std::size_t limit) const;

  friend bool operator==(const TermIndex& a, const TermIndex& b) {
    return a.n_docs_ == b.n_docs_ && a.vocab_ == b.vocab_ && a.postings_ == b.postings_ &&
           a.meta_ == b.meta_;
  }

  // Persistence in the PNNT1 binary layout (see index_io.cpp).
  void save(std::ostream& out) const;
  static TermIndex load(std::istream& in);
  void save_file(const std::string& path) const;
  static TermIndex load_file(const std::string& path);
  std::string serialize() const;
  static TermIndex deserialize(std::string_view bytes);

 private:
  TermIndex(Count n_docs, std::vector<std::string> vocab,
            std::vector<std::vector<DocOrdinal>> postings, BuildMeta meta);

  void finish();

  Count n_docs_ = 0;
  std::vector<std::string> vocab_;
  std::vector<std::vector<DocOrdinal>> postings_;
  BuildMeta meta_;

  // Derived, rebuilt by finish().
  std::vector<std::vector<TermId>> forward_;
  Count max_df_ = 0;
};

/// Intersection size of two strictly increasing sequences.
Count intersection_size(std::span<const DocOrdinal> a, std::span<const DocOrdinal> b);

}  // namespace pennant
