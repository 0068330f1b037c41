#include "pennant/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "pennant/error.hpp"

namespace pennant {
namespace {

using nlohmann::json;

std::string json_string(std::string_view s) {
  return json(std::string(s)).dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string format_shortest(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string escape_tsv(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters other than tab/newline are not legal XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n' && c != '\r') {
          out.push_back(' ');
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

template <typename T>
T field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("diagram JSON lacks \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("diagram JSON field \"") + key + "\" has the wrong type");
  }
}

void check_coordinate(double serialized, double recomputed, const std::string& what) {
  // Six decimals round to within 5e-7; leave room for the decimal conversion.
  if (!(std::fabs(serialized - recomputed) <= 6e-7)) {
    throw FormatError(what + " does not match its counts (" + format_shortest(serialized) +
                      " vs " + format_shortest(recomputed) + ")");
  }
}

}  // namespace

std::string format_fixed(double v, int decimals) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, decimals);
  std::string s(buf.data(), end);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string to_json(const PennantDiagram& d) {
  const auto& p = d.params;
  std::ostringstream out;
  out << "{\n";
  out << "  \"seed\": " << json_string(d.seed) << ",\n";
  out << "  \"seed_df\": " << d.seed_df << ",\n";
  out << "  \"seed_x\": " << format_fixed(d.seed_x, 6) << ",\n";
  out << "  \"seed_y\": " << format_fixed(d.seed_y, 6) << ",\n";
  out << "  \"n_docs\": " << d.n_docs << ",\n";
  out << "  \"params\": {"
      << "\"min_co\": " << p.min_co
      << ", \"top_k\": " << (p.top_k ? std::to_string(*p.top_k) : "null")
      << ", \"log_base\": " << format_shortest(p.log_base)
      << ", \"n_override\": " << (p.n_override ? std::to_string(*p.n_override) : "null")
      << ", \"index_n_docs\": " << d.index_n_docs
      << ", \"alpha\": " << format_shortest(p.sectors.alpha)
      << ", \"gamma\": " << format_shortest(p.sectors.gamma)
      << ", \"tau\": " << format_shortest(p.sectors.tau) << "},\n";
  if (d.points.empty()) {
    out << "  \"points\": []\n";
  } else {
    out << "  \"points\": [\n";
    for (std::size_t i = 0; i < d.points.size(); ++i) {
      const auto& pt = d.points[i];
      out << "    {\"term\": " << json_string(pt.term)
          << ", \"co_count\": " << pt.co_count
          << ", \"df\": " << pt.df
          << ", \"x\": " << format_fixed(pt.x, 6)
          << ", \"y\": " << format_fixed(pt.y, 6)
          << ", \"sector\": \"" << sector_letter(pt.sector) << '"'
          << ", \"dominant\": " << (pt.dominant ? "true" : "false") << '}'
          << (i + 1 < d.points.size() ? ",\n" : "\n");
    }
    out << "  ]\n";
  }
  out << "}\n";
  return out.str();
}

PennantDiagram diagram_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("diagram JSON does not parse: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("diagram JSON is not an object");

  PennantDiagram d;
  d.seed = field<std::string>(j, "seed");
  d.seed_df = field<Count>(j, "seed_df");
  d.n_docs = field<Count>(j, "n_docs");

  const auto params_it = j.find("params");
  if (params_it == j.end() || !params_it->is_object()) throw FormatError("diagram JSON lacks \"params\"");
  const json& pj = *params_it;
  auto& p = d.params;
  p.min_co = field<Count>(pj, "min_co");
  if (!pj.contains("top_k") || !pj.contains("n_override")) {
    throw FormatError("diagram JSON params lack top_k or n_override");
  }
  if (!pj["top_k"].is_null()) p.top_k = field<std::size_t>(pj, "top_k");
  if (!pj["n_override"].is_null()) p.n_override = field<Count>(pj, "n_override");
  p.log_base = field<double>(pj, "log_base");
  p.sectors.alpha = field<double>(pj, "alpha");
  p.sectors.gamma = field<double>(pj, "gamma");
  p.sectors.tau = field<double>(pj, "tau");
  d.index_n_docs = field<Count>(pj, "index_n_docs");

  try {
    d.seed_x = tf_weight(d.seed_df, p.log_base);
    d.seed_y = idf_weight(d.seed_df, d.n_docs, p.log_base);
  } catch (const Error& e) {
    throw FormatError(std::string("diagram JSON seed is inconsistent: ") + e.what());
  }
  check_coordinate(field<double>(j, "seed_x"), d.seed_x, "seed_x");
  check_coordinate(field<double>(j, "seed_y"), d.seed_y, "seed_y");

  const auto points_it = j.find("points");
  if (points_it == j.end() || !points_it->is_array()) throw FormatError("diagram JSON lacks \"points\"");
  for (const json& pj_pt : *points_it) {
    PennantPoint pt;
    pt.term = field<std::string>(pj_pt, "term");
    pt.co_count = field<Count>(pj_pt, "co_count");
    pt.df = field<Count>(pj_pt, "df");
    const auto sector = parse_sector(field<std::string>(pj_pt, "sector"));
    if (!sector) throw FormatError("point \"" + pt.term + "\" has an unknown sector");
    pt.sector = *sector;
    pt.dominant = field<bool>(pj_pt, "dominant");
    try {
      pt.x = tf_weight(pt.co_count, p.log_base);
      pt.y = idf_weight(pt.df, d.n_docs, p.log_base);
    } catch (const Error& e) {
      throw FormatError("point \"" + pt.term + "\" is inconsistent: " + e.what());
    }
    check_coordinate(field<double>(pj_pt, "x"), pt.x, "x of \"" + pt.term + "\"");
    check_coordinate(field<double>(pj_pt, "y"), pt.y, "y of \"" + pt.term + "\"");
    d.points.push_back(std::move(pt));
  }
  return d;
}

std::string to_table(const PennantDiagram& d) {
  std::string out = "term\tco\tdf\tx\ty\tsector\tdominant\n";
  for (const auto& pt : d.points) {
    out += escape_tsv(pt.term);
    out += '\t' + std::to_string(pt.co_count);
    out += '\t' + std::to_string(pt.df);
    out += '\t' + format_fixed(pt.x, 6);
    out += '\t' + format_fixed(pt.y, 6);
    out += '\t';
    out += sector_letter(pt.sector);
    out += pt.dominant ? "\ttrue\n" : "\tfalse\n";
  }
  return out;
}

std::string to_rank_table(const TermIndex& index, const std::vector<CoocEntry>& entries) {
  std::string out = "term\tco\tdf\n";
  for (const auto& e : entries) {
    out += escape_tsv(e.term);
    out += '\t' + std::to_string(e.co_count);
    out += '\t' + std::to_string(index.df(e.term)) + '\n';
  }
  return out;
}

void validate(const RenderStyle& s) {
  if (s.margin_px < 0) throw InvalidParameterError("margin_px", "must not be negative");
  if (s.width_px <= 2 * s.margin_px) throw InvalidParameterError("width_px", "must exceed twice the margin");
  if (s.height_px <= 2 * s.margin_px) throw InvalidParameterError("height_px", "must exceed twice the margin");
  if (s.font_size_px <= 0) throw InvalidParameterError("font_size_px", "must be positive");
  if (s.label_max_chars < 1) throw InvalidParameterError("label_max_chars", "must be at least 1");
}

std::string elide_label(std::string_view label, std::size_t max_chars) {
  // Byte offsets where each code point starts.
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if ((static_cast<unsigned char>(label[i]) & 0xC0) != 0x80) starts.push_back(i);
  }
  if (starts.size() <= max_chars) return std::string(label);
  const std::size_t keep = max_chars == 0 ? 0 : max_chars - 1;
  return std::string(label.substr(0, starts[keep])) + "\xE2\x80\xA6";
}

PlotFrame::PlotFrame(const PennantDiagram& d, const RenderStyle& style) {
  x_min_ = x_max_ = d.seed_x;
  y_min_ = y_max_ = d.seed_y;
  for (const auto& pt : d.points) {
    x_min_ = std::min(x_min_, pt.x);
    x_max_ = std::max(x_max_, pt.x);
    y_min_ = std::min(y_min_, pt.y);
    y_max_ = std::max(y_max_, pt.y);
  }
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    if (span <= 0.0) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      lo -= 0.08 * span;
      hi += 0.08 * span;
    }
  };
  pad(x_min_, x_max_);
  pad(y_min_, y_max_);

  left_ = style.margin_px;
  right_ = style.width_px - style.margin_px;
  top_ = style.margin_px;
  bottom_ = style.height_px - style.margin_px;
}

double PlotFrame::px(double x) const {
  return left_ + (x - x_min_) / (x_max_ - x_min_) * (right_ - left_);
}

double PlotFrame::py(double y) const {
  return bottom_ - (y - y_min_) / (y_max_ - y_min_) * (bottom_ - top_);
}

std::string to_svg(const PennantDiagram& d, const RenderStyle& style) {
  validate(style);
  const PlotFrame frame(d, style);
  const double left = style.margin_px;
  const double right = style.width_px - style.margin_px;
  const double top = style.margin_px;
  const double bottom = style.height_px - style.margin_px;
  auto f2 = [](double v) { return format_fixed(v, 2); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.width_px
      << "\" height=\"" << style.height_px << "\" viewBox=\"0 0 " << style.width_px << ' '
      << style.height_px << "\" font-family=\"sans-serif\" font-size=\"" << style.font_size_px
      << "\">\n";
  out << "<title>Pennant diagram for " << escape_xml(d.seed) << "</title>\n";
  out << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << style.width_px << "\" height=\""
      << style.height_px << "\" fill=\"#ffffff\"/>\n";

  if (style.show_sector_bands) {
    // Sector rule depends on df only, so the bands are horizontal: A above
    // the idf of alpha*df_seed, C below the idf of gamma*df_seed.
    const double seed_df = static_cast<double>(d.seed_df);
    const double base = d.params.log_base;
    const double n = static_cast<double>(d.n_docs);
    const double y_ab = log_in_base(n / (d.params.sectors.alpha * seed_df), base);
    const double y_bc = log_in_base(n / (d.params.sectors.gamma * seed_df), base);
    auto clamp_px = [&](double v) { return std::clamp(v, top, bottom); };
    const double p_ab = clamp_px(frame.py(y_ab));
    const double p_bc = clamp_px(frame.py(y_bc));
    struct Band {
      char sector;
      double y0, y1;
      const char* fill;
    };
    const std::array<Band, 3> bands{{{'A', top, p_ab, "#e3f1e3"},
                                     {'B', p_ab, p_bc, "#fdf6dc"},
                                     {'C', p_bc, bottom, "#f6e1e1"}}};
    out << "<g class=\"bands\">\n";
    for (const auto& b : bands) {
      out << "<rect class=\"band band-" << b.sector << "\" x=\"" << f2(left) << "\" y=\"" << f2(b.y0)
          << "\" width=\"" << f2(right - left) << "\" height=\"" << f2(b.y1 - b.y0)
          << "\" fill=\"" << b.fill << "\"/>\n";
      if (b.y1 - b.y0 >= style.font_size_px) {
        out << "<text class=\"band-label\" x=\"" << f2(right - 4) << "\" y=\""
            << f2(b.y0 + style.font_size_px + 2) << "\" text-anchor=\"end\" fill=\"#888888\">"
            << "Sector " << b.sector << "</text>\n";
      }
    }
    out << "</g>\n";
  }

  out << "<g class=\"axes\" stroke=\"#444444\" fill=\"#444444\">\n";
  out << "<line x1=\"" << f2(left) << "\" y1=\"" << f2(bottom) << "\" x2=\"" << f2(right)
      << "\" y2=\"" << f2(bottom) << "\"/>\n";
  out << "<line x1=\"" << f2(left) << "\" y1=\"" << f2(top) << "\" x2=\"" << f2(left) << "\" y2=\""
      << f2(bottom) << "\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = frame.x_min() + (frame.x_max() - frame.x_min()) * i / kTicks;
    const double xp = frame.px(xv);
    out << "<line x1=\"" << f2(xp) << "\" y1=\"" << f2(bottom) << "\" x2=\"" << f2(xp) << "\" y2=\""
        << f2(bottom + 5) << "\"/>\n";
    out << "<text class=\"tick\" stroke=\"none\" x=\"" << f2(xp) << "\" y=\""
        << f2(bottom + 8 + style.font_size_px) << "\" text-anchor=\"middle\">" << format_fixed(xv, 2)
        << "</text>\n";
    const double yv = frame.y_min() + (frame.y_max() - frame.y_min()) * i / kTicks;
    const double yp = frame.py(yv);
    out << "<line x1=\"" << f2(left - 5) << "\" y1=\"" << f2(yp) << "\" x2=\"" << f2(left) << "\" y2=\""
        << f2(yp) << "\"/>\n";
    out << "<text class=\"tick\" stroke=\"none\" x=\"" << f2(left - 8) << "\" y=\"" << f2(yp + 4)
        << "\" text-anchor=\"end\">" << format_fixed(yv, 2) << "</text>\n";
  }
  out << "<text class=\"axis-title\" stroke=\"none\" x=\"" << f2((left + right) / 2) << "\" y=\""
      << f2(style.height_px - 12) << "\" text-anchor=\"middle\">"
      << "log(co-occurrence count) + 1  (cognitive effects)</text>\n";
  out << "<text class=\"axis-title\" stroke=\"none\" transform=\"translate(16 "
      << f2((top + bottom) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << "log(N / total count)  (ease of processing)</text>\n";
  out << "</g>\n";

  out << "<g class=\"points\">\n";
  for (const auto& pt : d.points) {
    const double x = frame.px(pt.x);
    const double y = frame.py(pt.y);
    out << "<g class=\"point sector-" << sector_letter(pt.sector) << (pt.dominant ? " dominant" : "")
        << "\">";
    out << "<title>" << escape_xml(pt.term) << " (co " << pt.co_count << ", df " << pt.df
        << ", sector " << sector_letter(pt.sector) << (pt.dominant ? ", dominant" : "")
        << ")</title>";
    out << "<circle class=\"point-marker\" cx=\"" << f2(x) << "\" cy=\"" << f2(y)
        << "\" r=\"3.5\" fill=\"#1f4e8c\"/>";
    if (pt.dominant) {
      out << "<circle class=\"dominant-ring\" cx=\"" << f2(x) << "\" cy=\"" << f2(y)
          << "\" r=\"11\" fill=\"none\" stroke=\"#b22222\" stroke-width=\"1.5\"/>";
    }
    out << "<text class=\"label\" x=\"" << f2(x + 6) << "\" y=\"" << f2(y + 4) << "\">"
        << escape_xml(elide_label(pt.term, style.label_max_chars)) << "</text>";
    out << "</g>\n";
  }
  out << "</g>\n";

  const double sx = frame.px(d.seed_x);
  const double sy = frame.py(d.seed_y);
  out << "<g class=\"seed\"><title>" << escape_xml(d.seed) << " (seed, df " << d.seed_df
      << ")</title>";
  out << "<circle class=\"seed-marker\" cx=\"" << f2(sx) << "\" cy=\"" << f2(sy)
      << "\" r=\"7\" fill=\"#d98c00\" stroke=\"#000000\"/>";
  out << "<text class=\"seed-label\" x=\"" << f2(sx - 10) << "\" y=\"" << f2(sy - 10)
      << "\" text-anchor=\"end\" font-weight=\"bold\">"
      << escape_xml(elide_label(d.seed, style.label_max_chars)) << "</text></g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace pennant
