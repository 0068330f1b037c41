#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace pennant {

struct NormalizationPolicy {
  bool trim = true;        // strip surrounding ASCII whitespace
  bool fold_case = false;  // ASCII lower-casing; descriptors are case-significant by default

  friend bool operator==(const NormalizationPolicy&, const NormalizationPolicy&) = default;
};

/// Applies `policy` to a single term or document id.
std::string normalize_term(std::string_view raw, const NormalizationPolicy& policy);

/// One document: an id plus its descriptor set. After ingestion `terms` is
/// sorted and free of duplicates and empty strings.
struct DocRecord {
  std::string doc_id;
  std::vector<std::string> terms;
};

struct Corpus {
  NormalizationPolicy norm;
  std::vector<DocRecord> docs;
  // Documents whose term set was empty after normalization. They are not
  // part of `docs` and do not count towards N.
  std::size_t dropped_empty = 0;
};

/// Normalizes ids and terms, collapses duplicate terms, drops documents
/// with no terms. Throws IngestError on a duplicate doc_id.
Corpus ingest_corpus(std::vector<DocRecord> records, const NormalizationPolicy& norm = {});

enum class CorpusFormat { kTsv, kJsonLines };

/// Picks the format from a file name: `.jsonl`/`.ndjson`/`.json` select
/// JSON lines, anything else the tab/pipe format.
CorpusFormat guess_corpus_format(std::string_view path);

// Raw (un-normalized) records. Throws ParseError carrying the 1-based line.
std::vector<DocRecord> parse_corpus_tsv(std::istream& in);
std::vector<DocRecord> parse_corpus_jsonl(std::istream& in);

Corpus read_corpus(std::istream& in, CorpusFormat format, const NormalizationPolicy& norm = {});

}  // namespace pennant
