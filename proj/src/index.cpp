#include "pennant/index.hpp"

#include <algorithm>
#include <map>

#include "pennant/error.hpp"

namespace pennant {
namespace {

// Below this size ratio a linear merge beats galloping.
constexpr std::size_t kGallopRatio = 16;

Count gallop_intersection(std::span<const DocOrdinal> small, std::span<const DocOrdinal> large) {
  Count n = 0;
  auto lo = large.begin();
  for (DocOrdinal v : small) {
    std::size_t step = 1;
    auto hi = lo;
    while (hi != large.end() && *hi < v) {
      lo = hi;
      const auto remaining = static_cast<std::size_t>(large.end() - hi);
      hi += static_cast<std::ptrdiff_t>(std::min(step, remaining));
      step *= 2;
    }
    lo = std::lower_bound(lo, hi, v);
    if (lo == large.end()) break;
    if (*lo == v) {
      ++n;
      ++lo;
    }
  }
  return n;
}

}  // namespace

Count intersection_size(std::span<const DocOrdinal> a, std::span<const DocOrdinal> b) {
  if (a.size() > b.size()) std::swap(a, b);
  if (a.empty()) return 0;
  if (b.size() / a.size() >= kGallopRatio) return gallop_intersection(a, b);

  Count n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

TermIndex::TermIndex(Count n_docs, std::vector<std::string> vocab,
                     std::vector<std::vector<DocOrdinal>> postings, BuildMeta meta)
    : n_docs_(n_docs), vocab_(std::move(vocab)), postings_(std::move(postings)), meta_(meta) {
  finish();
}

void TermIndex::finish() {
  forward_.assign(n_docs_, {});
  max_df_ = 0;
  for (TermId t = 0; t < vocab_.size(); ++t) {
    for (DocOrdinal d : postings_[t]) forward_[d].push_back(t);
    max_df_ = std::max<Count>(max_df_, postings_[t].size());
  }
}

TermIndex TermIndex::build(const Corpus& corpus) {
  // Ordinals follow doc_id order so that record order cannot leak in.
  std::vector<const DocRecord*> docs;
  docs.reserve(corpus.docs.size());
  for (const auto& d : corpus.docs) docs.push_back(&d);
  std::sort(docs.begin(), docs.end(),
            [](const DocRecord* a, const DocRecord* b) { return a->doc_id < b->doc_id; });

  std::map<std::string, std::vector<DocOrdinal>> inverted;
  for (std::size_t ord = 0; ord < docs.size(); ++ord) {
    for (const auto& t : docs[ord]->terms) inverted[t].push_back(static_cast<DocOrdinal>(ord));
  }

  std::vector<std::string> vocab;
  std::vector<std::vector<DocOrdinal>> postings;
  vocab.reserve(inverted.size());
  postings.reserve(inverted.size());
  for (auto& [term, list] : inverted) {
    // Ingestion already removed duplicates per document; keep the invariant
    // even for hand-assembled corpora.
    list.erase(std::unique(list.begin(), list.end()), list.end());
    vocab.push_back(term);
    postings.push_back(std::move(list));
  }

  return TermIndex(docs.size(), std::move(vocab), std::move(postings),
                   BuildMeta{corpus.norm, corpus.dropped_empty});
}

std::optional<TermId> TermIndex::find(std::string_view term) const {
  auto it = std::lower_bound(vocab_.begin(), vocab_.end(), term,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == vocab_.end() || *it != term) return std::nullopt;
  return static_cast<TermId>(it - vocab_.begin());
}

TermId TermIndex::id_of(std::string_view term) const {
  if (auto id = find(term)) return *id;
  throw UnknownTermError(std::string(term));
}

Count TermIndex::cooccurrence(TermId a, TermId b) const {
  return intersection_size(postings(a), postings(b));
}

Count TermIndex::cooccurrence(std::string_view a, std::string_view b) const {
  return cooccurrence(id_of(a), id_of(b));
}

std::vector<CoocEntry> TermIndex::rank_cooccurring(std::string_view seed, Count min_co,
                                                   std::optional<std::size_t> top_k) const {
  const TermId seed_id = id_of(seed);
  if (min_co < 1) throw InvalidParameterError("min_co", "must be at least 1");

  std::vector<Count> counts(vocab_.size(), 0);
  std::vector<TermId> touched;
  for (DocOrdinal d : postings_[seed_id]) {
    for (TermId t : forward_[d]) {
      if (counts[t]++ == 0) touched.push_back(t);
    }
  }

  std::vector<CoocEntry> out;
  for (TermId t : touched) {
    if (t != seed_id && counts[t] >= min_co) out.push_back(CoocEntry{vocab_[t], counts[t]});
  }
  // Term ids are in vocabulary order, so comparing strings gives the same
  // tie-break as comparing ids.
  std::sort(out.begin(), out.end(), [](const CoocEntry& a, const CoocEntry& b) {
    if (a.co_count != b.co_count) return a.co_count > b.co_count;
    return a.term < b.term;
  });
  if (top_k && out.size() > *top_k) out.resize(*top_k);
  return out;
}

std::vector<TermId> TermIndex::terms_with_prefix(std::string_view prefix, std::size_t limit) const {
  std::vector<TermId> out;
  auto it = std::lower_bound(vocab_.begin(), vocab_.end(), prefix,
                             [](const std::string& a, std::string_view b) { return a < b; });
  for (; it != vocab_.end() && out.size() < limit; ++it) {
    if (std::string_view(*it).substr(0, prefix.size()) != prefix) break;
    out.push_back(static_cast<TermId>(it - vocab_.begin()));
  }
  return out;
}

}  // namespace pennant
