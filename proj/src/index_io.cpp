// PNNT1 index file layout (all integers little-endian):
//
//   "PNNT1"              5 bytes magic
//   version              u8, currently 0x01
//   n_docs               u64
//   vocab_count          u64
//   vocab_count times, in ascending term order:
//     term_len           u64, then term_len bytes of UTF-8
//     df                 u64
//     posting_count      u64 (always equal to df)
//     posting_count LEB128 varints: first ordinal, then gaps (each >= 1)
//   build metadata trailer:
//     flags              u8, bit 0 = trim, bit 1 = fold_case
//     dropped_empty      u64
//
// Nothing may follow the trailer.

#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "pennant/error.hpp"
#include "pennant/index.hpp"

namespace pennant {
namespace {

constexpr std::string_view kMagic = "PNNT1";
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kFlagTrim = 1u << 0;
constexpr std::uint8_t kFlagFoldCase = 1u << 1;

void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint8_t u8(const char* what) {
    need(1, what);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }

  std::uint64_t u64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return v;
  }

  std::uint64_t varint(const char* what) {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const std::uint8_t b = u8(what);
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw CorruptionError(std::string("overlong varint in ") + what);
  }

  std::string_view bytes(std::uint64_t n, const char* what) {
    need(n, what);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(std::uint64_t n, const char* what) const {
    if (n > remaining()) throw CorruptionError(std::string("truncated index while reading ") + what);
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string TermIndex::serialize() const {
  std::string out;
  out.append(kMagic);
  put_u8(out, kVersion);
  put_u64(out, n_docs_);
  put_u64(out, vocab_.size());
  for (std::size_t t = 0; t < vocab_.size(); ++t) {
    put_u64(out, vocab_[t].size());
    out.append(vocab_[t]);
    const auto& list = postings_[t];
    put_u64(out, list.size());
    put_u64(out, list.size());
    DocOrdinal prev = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      put_varint(out, i == 0 ? list[i] : list[i] - prev);
      prev = list[i];
    }
  }
  std::uint8_t flags = 0;
  if (meta_.norm.trim) flags |= kFlagTrim;
  if (meta_.norm.fold_case) flags |= kFlagFoldCase;
  put_u8(out, flags);
  put_u64(out, meta_.dropped_empty);
  return out;
}

TermIndex TermIndex::deserialize(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    throw FormatError("not a pennant index (bad magic)");
  }
  Reader r(bytes.substr(kMagic.size()));
  const std::uint8_t version = r.u8("version");
  if (version != kVersion) throw UnsupportedVersionError(version, kVersion);

  const Count n_docs = r.u64("n_docs");
  if (n_docs > std::numeric_limits<DocOrdinal>::max()) {
    throw CorruptionError("n_docs exceeds supported document count");
  }
  const std::uint64_t vocab_count = r.u64("vocab count");
  // Every term entry takes at least 25 bytes (three u64 plus one byte of term).
  if (vocab_count > r.remaining() / 25) throw CorruptionError("vocab count exceeds file size");

  std::vector<std::string> vocab;
  std::vector<std::vector<DocOrdinal>> postings;
  vocab.reserve(vocab_count);
  postings.reserve(vocab_count);
  for (std::uint64_t t = 0; t < vocab_count; ++t) {
    const std::uint64_t len = r.u64("term length");
    std::string term(r.bytes(len, "term"));
    if (term.empty()) throw CorruptionError("empty term in vocabulary");
    if (!vocab.empty() && !(vocab.back() < term)) {
      throw CorruptionError("vocabulary not strictly ascending at \"" + term + "\"");
    }
    const Count df = r.u64("df");
    const std::uint64_t count = r.u64("posting count");
    if (count != df) throw CorruptionError("df does not match posting count for \"" + term + "\"");
    if (df < 1 || df > n_docs) throw CorruptionError("df out of range for \"" + term + "\"");

    std::vector<DocOrdinal> list;
    list.reserve(count);
    std::uint64_t cur = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t delta = r.varint("postings");
      if (i > 0 && delta == 0) throw CorruptionError("postings not strictly increasing for \"" + term + "\"");
      if (delta >= n_docs || cur + delta >= n_docs) {
        throw CorruptionError("posting ordinal out of range for \"" + term + "\"");
      }
      cur += delta;
      list.push_back(static_cast<DocOrdinal>(cur));
    }
    vocab.push_back(std::move(term));
    postings.push_back(std::move(list));
  }

  const std::uint8_t flags = r.u8("build metadata");
  if ((flags & ~(kFlagTrim | kFlagFoldCase)) != 0) throw CorruptionError("unknown build flags");
  BuildMeta meta;
  meta.norm.trim = (flags & kFlagTrim) != 0;
  meta.norm.fold_case = (flags & kFlagFoldCase) != 0;
  meta.dropped_empty = r.u64("build metadata");
  if (r.remaining() != 0) throw CorruptionError("trailing bytes after index");

  // Every counted document must carry at least one term.
  std::vector<bool> covered(n_docs, false);
  for (const auto& list : postings) {
    for (DocOrdinal d : list) covered[d] = true;
  }
  for (Count d = 0; d < n_docs; ++d) {
    if (!covered[d]) throw CorruptionError("document ordinal " + std::to_string(d) + " has no terms");
  }

  return TermIndex(n_docs, std::move(vocab), std::move(postings), meta);
}

void TermIndex::save(std::ostream& out) const {
  const std::string bytes = serialize();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed to write index");
}

TermIndex TermIndex::load(std::istream& in) {
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

void TermIndex::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  save(out);
}

TermIndex TermIndex::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open index " + path);
  return load(in);
}

}  // namespace pennant
