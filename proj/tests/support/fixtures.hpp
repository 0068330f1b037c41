#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pennant/corpus.hpp"
#include "pennant/index.hpp"
#include "pennant/pennant.hpp"

namespace pennant::testing {

// d1{A,B} d2{A,B,C} d3{A,C} d4{B,C} d5{A} d6{C,D}
inline std::vector<DocRecord> c6_records() {
  return {
      {"d1", {"A", "B"}},      {"d2", {"A", "B", "C"}}, {"d3", {"A", "C"}},
      {"d4", {"B", "C"}},      {"d5", {"A"}},           {"d6", {"C", "D"}},
  };
}

inline constexpr const char* kC6Tsv =
    "# fixture C6\n"
    "d1\tA|B\n"
    "d2\tA|B|C\n"
    "d3\tA|C\n"
    "d4\tB|C\n"
    "d5\tA\n"
    "d6\tC|D\n";

inline TermIndex c6_index() { return TermIndex::build(ingest_corpus(c6_records())); }

/// Random corpus: up to `max_docs` documents drawn from a skewed vocabulary,
/// each with 1..max_terms terms (duplicates allowed in the raw record).
inline std::vector<DocRecord> random_records(std::mt19937_64& rng, std::size_t max_docs = 50,
                                             std::size_t max_terms = 12, std::size_t vocab = 24) {
  std::uniform_int_distribution<std::size_t> n_docs_dist(1, max_docs);
  std::uniform_int_distribution<std::size_t> n_terms_dist(1, max_terms);
  // Zipf-like weights so that some terms are broad and others rare.
  std::vector<double> weights;
  for (std::size_t i = 0; i < vocab; ++i) weights.push_back(1.0 / static_cast<double>(i + 1));
  std::discrete_distribution<std::size_t> term_dist(weights.begin(), weights.end());

  static const char* const kNames[] = {
      "Immigration and Emigration", "United States", "Government Policy", "Migration, Internal",
      "History", "Women", "Family", "Labor Market", "Refugees", "Aged", "Youth", "Canada",
  };
  auto name = [](std::size_t i) {
    if (i < std::size(kNames)) return std::string(kNames[i]);
    return "Term " + std::to_string(i);
  };

  std::vector<DocRecord> out;
  const std::size_t n = n_docs_dist(rng);
  for (std::size_t d = 0; d < n; ++d) {
    DocRecord rec;
    rec.doc_id = "doc" + std::to_string(d);
    const std::size_t k = n_terms_dist(rng);
    for (std::size_t t = 0; t < k; ++t) rec.terms.push_back(name(term_dist(rng)));
    out.push_back(std::move(rec));
  }
  return out;
}

/// Brute-force pennant built straight from the documents, with no index.
struct OraclePoint {
  std::string term;
  std::uint64_t co = 0;
  std::uint64_t df = 0;
  double x = 0, y = 0;
  Sector sector = Sector::B;
  bool dominant = false;
};

struct OracleDiagram {
  std::uint64_t seed_df = 0;
  double seed_x = 0, seed_y = 0;
  std::vector<OraclePoint> points;
};

class NaiveOracle {
 public:
  explicit NaiveOracle(const std::vector<DocRecord>& records) {
    for (const auto& r : records) {
      std::set<std::string> s(r.terms.begin(), r.terms.end());
      if (!s.empty()) docs_.push_back(std::move(s));
    }
    for (const auto& d : docs_) vocab_.insert(d.begin(), d.end());
  }

  std::uint64_t n_docs() const { return docs_.size(); }
  const std::set<std::string>& vocabulary() const { return vocab_; }

  std::uint64_t df(const std::string& t) const {
    return std::count_if(docs_.begin(), docs_.end(), [&](const auto& d) { return d.count(t) > 0; });
  }

  std::uint64_t co(const std::string& a, const std::string& b) const {
    return std::count_if(docs_.begin(), docs_.end(),
                         [&](const auto& d) { return d.count(a) > 0 && d.count(b) > 0; });
  }

  std::vector<std::pair<std::string, std::uint64_t>> rank(const std::string& seed, std::uint64_t min_co,
                                                          std::optional<std::size_t> top_k) const {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    for (const auto& t : vocab_) {
      if (t == seed) continue;
      const auto c = co(seed, t);
      if (c >= min_co) out.emplace_back(t, c);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (top_k && out.size() > *top_k) out.resize(*top_k);
    return out;
  }

  OracleDiagram pennant(const std::string& seed, std::uint64_t min_co, std::optional<std::size_t> top_k,
                        double base, const SectorParams& sp, std::optional<std::uint64_t> n = {}) const {
    const double big_n = static_cast<double>(n.value_or(n_docs()));
    auto lg = [base](double v) { return std::log(v) / std::log(base); };
    OracleDiagram d;
    d.seed_df = df(seed);
    d.seed_x = lg(static_cast<double>(d.seed_df)) + 1.0;
    d.seed_y = lg(big_n / static_cast<double>(d.seed_df));
    for (const auto& [term, c] : rank(seed, min_co, top_k)) {
      OraclePoint p;
      p.term = term;
      p.co = c;
      p.df = df(term);
      p.x = lg(static_cast<double>(c)) + 1.0;
      p.y = lg(big_n / static_cast<double>(p.df));
      const double r = static_cast<double>(p.df) / static_cast<double>(d.seed_df);
      p.sector = r <= sp.alpha ? Sector::A : (r >= sp.gamma ? Sector::C : Sector::B);
      p.dominant = static_cast<double>(c) / static_cast<double>(d.seed_df) >= sp.tau && p.df > d.seed_df;
      d.points.push_back(p);
    }
    std::sort(d.points.begin(), d.points.end(), [](const OraclePoint& a, const OraclePoint& b) {
      if (a.x != b.x) return a.x > b.x;
      if (a.y != b.y) return a.y > b.y;
      return a.term < b.term;
    });
    return d;
  }

 private:
  std::vector<std::set<std::string>> docs_;
  std::set<std::string> vocab_;
};

}  // namespace pennant::testing
