#include "pennant/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"
#include "pennant/error.hpp"

namespace pennant {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string normalize_term(std::string_view raw, const NormalizationPolicy& policy) {
  std::string out(policy.trim ? trim(raw) : raw);
  if (policy.fold_case) {
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
      return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    });
  }
  return out;
}

Corpus ingest_corpus(std::vector<DocRecord> records, const NormalizationPolicy& norm) {
  Corpus corpus;
  corpus.norm = norm;
  corpus.docs.reserve(records.size());

  std::unordered_set<std::string> seen_ids;
  for (auto& rec : records) {
    std::string id = normalize_term(rec.doc_id, norm);
    if (id.empty()) throw IngestError("document with empty doc_id");
    if (!seen_ids.insert(id).second) throw IngestError("duplicate doc_id " + id);

    std::vector<std::string> terms;
    terms.reserve(rec.terms.size());
    for (const auto& t : rec.terms) {
      std::string n = normalize_term(t, norm);
      if (!n.empty()) terms.push_back(std::move(n));
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    if (terms.empty()) {
      ++corpus.dropped_empty;
      continue;
    }
    corpus.docs.push_back(DocRecord{std::move(id), std::move(terms)});
  }
  return corpus;
}

CorpusFormat guess_corpus_format(std::string_view path) {
  if (ends_with(path, ".jsonl") || ends_with(path, ".ndjson") || ends_with(path, ".json")) {
    return CorpusFormat::kJsonLines;
  }
  return CorpusFormat::kTsv;
}

std::vector<DocRecord> parse_corpus_tsv(std::istream& in) {
  std::vector<DocRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(lineno, "missing tab between doc id and terms");

    DocRecord rec;
    rec.doc_id = line.substr(0, tab);
    std::string_view rest(line);
    rest.remove_prefix(tab + 1);
    while (true) {
      const auto bar = rest.find('|');
      rec.terms.emplace_back(rest.substr(0, bar));
      if (bar == std::string_view::npos) break;
      rest.remove_prefix(bar + 1);
    }
    if (trim(rec.doc_id).empty()) throw ParseError(lineno, "missing doc id");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<DocRecord> parse_corpus_jsonl(std::istream& in) {
  using nlohmann::json;
  std::vector<DocRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(lineno, "record is not a JSON object");

    const auto id = j.find("id");
    if (id == j.end()) throw ParseError(lineno, "missing field \"id\"");
    const auto terms = j.find("terms");
    if (terms == j.end()) throw ParseError(lineno, "missing field \"terms\"");

    DocRecord rec;
    if (id->is_string()) {
      rec.doc_id = id->get<std::string>();
    } else if (id->is_number_integer()) {
      rec.doc_id = id->dump();
    } else {
      throw ParseError(lineno, "field \"id\" must be a string or integer");
    }
    if (trim(rec.doc_id).empty()) throw ParseError(lineno, "missing doc id");
    if (!terms->is_array()) throw ParseError(lineno, "field \"terms\" must be an array");
    for (const auto& t : *terms) {
      if (!t.is_string()) throw ParseError(lineno, "terms must be strings");
      rec.terms.push_back(t.get<std::string>());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

Corpus read_corpus(std::istream& in, CorpusFormat format, const NormalizationPolicy& norm) {
  auto raw = format == CorpusFormat::kJsonLines ? parse_corpus_jsonl(in) : parse_corpus_tsv(in);
  return ingest_corpus(std::move(raw), norm);
}

}  // namespace pennant
