#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pennant/error.hpp"
#include "pennant/render.hpp"
#include "support/fixtures.hpp"

using namespace pennant;
using pennant::testing::c6_index;

namespace {

PennantDiagram c6_diagram(const std::string& seed, Count min_co = 1) {
  PennantParams p;
  p.min_co = min_co;
  return compute_pennant(c6_index(), seed, p);
}

struct Marker {
  std::string cls;
  double cx, cy;
};

// Collects every <circle> with a class attribute; throws if not well-formed XML.
std::vector<Marker> markers(const std::string& svg) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(svg);
  pt::read_xml(in, tree);
  std::vector<Marker> out;
  std::function<void(const pt::ptree&)> walk = [&](const pt::ptree& node) {
    for (const auto& [name, child] : node) {
      if (name == "circle") {
        out.push_back({child.get<std::string>("<xmlattr>.class", ""), child.get<double>("<xmlattr>.cx"),
                       child.get<double>("<xmlattr>.cy")});
      }
      if (name != "<xmlattr>") walk(child);
    }
  };
  walk(tree);
  return out;
}

}  // namespace

TEST_SUITE("render") {
  TEST_CASE("json for C6 seed A") {
    const std::string text = to_json(c6_diagram("A"));
    CHECK(text.find("\"x\": 1.301030") != std::string::npos);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["points"][0]["term"] == "B");
    CHECK(j["points"][0]["sector"] == "B");
    CHECK(j["points"].size() == 2);
    CHECK(j["seed"] == "A");
    CHECK(j["seed_df"] == 4);
    CHECK(j["n_docs"] == 6);
    CHECK(j["params"]["min_co"] == 1);
    CHECK(j["params"]["top_k"].is_null());
    CHECK(j["params"]["alpha"] == 0.5);

    std::vector<std::string> keys;
    const auto ordered = nlohmann::ordered_json::parse(text);
    for (const auto& [k, v] : ordered.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"seed", "seed_df", "seed_x", "seed_y", "n_docs", "params", "points"});
  }

  TEST_CASE("json for an empty diagram") {
    const std::string text = to_json(c6_diagram("A", 50));
    CHECK(text.find("\"points\": []") != std::string::npos);
  }

  TEST_CASE("json is deterministic and round-trips") {
    const auto d = c6_diagram("C");
    CHECK(to_json(d) == to_json(d));
    CHECK(diagram_from_json(to_json(d)) == d);

    PennantParams p;
    p.min_co = 1;
    p.top_k = 2;
    p.log_base = std::numbers::e;
    p.n_override = 1000;
    p.sectors = {0.3, 2.5, 0.8};
    const auto d2 = compute_pennant(c6_index(), "C", p);
    CHECK(diagram_from_json(to_json(d2)) == d2);
  }

  TEST_CASE("json parse rejects tampered coordinates and junk") {
    std::string text = to_json(c6_diagram("A"));
    const auto pos = text.find("1.301030");
    text.replace(pos, 8, "1.401030");
    CHECK_THROWS_AS(diagram_from_json(text), FormatError);
    CHECK_THROWS_AS(diagram_from_json("{"), FormatError);
    CHECK_THROWS_AS(diagram_from_json("{\"seed\": 1}"), FormatError);
  }

  TEST_CASE("json escapes awkward terms") {
    const TermIndex idx = TermIndex::build(ingest_corpus({{"d1", {"say \"hi\"", "back\\slash"}}}));
    PennantParams p;
    p.min_co = 1;
    const auto d = compute_pennant(idx, "say \"hi\"", p);
    CHECK(diagram_from_json(to_json(d)) == d);
  }

  TEST_CASE("table") {
    const std::string t = to_table(c6_diagram("A"));
    CHECK(t ==
          "term\tco\tdf\tx\ty\tsector\tdominant\n"
          "B\t2\t3\t1.301030\t0.301030\tB\tfalse\n"
          "C\t2\t4\t1.301030\t0.176091\tB\tfalse\n");
    CHECK(to_table(c6_diagram("A", 50)) == "term\tco\tdf\tx\ty\tsector\tdominant\n");
  }

  TEST_CASE("table marks dominant points") {
    // seed S in 4 docs, broad term U in all of them plus 4 more.
    std::vector<DocRecord> recs;
    for (int i = 0; i < 8; ++i) {
      DocRecord r{"d" + std::to_string(i), {"U"}};
      if (i < 4) r.terms.push_back("S");
      recs.push_back(r);
    }
    PennantParams p;
    p.min_co = 1;
    const auto d = compute_pennant(TermIndex::build(ingest_corpus(recs)), "S", p);
    REQUIRE(d.points.size() == 1);
    CHECK(d.points[0].dominant);
    const std::string t = to_table(d);
    CHECK(t.substr(t.size() - 5) == "true\n");
  }

  TEST_CASE("label elision") {
    CHECK(elide_label("short", 40) == "short");
    CHECK(elide_label("abcdef", 4) == "abc\xE2\x80\xA6");
    CHECK(elide_label("\xC3\xA9\xC3\xA9\xC3\xA9", 2) == "\xC3\xA9\xE2\x80\xA6");
    CHECK(elide_label("abcd", 4) == "abcd");
  }

  TEST_CASE("svg for C6 seed A: seed marker is rightmost") {
    const std::string svg = to_svg(c6_diagram("A"));
    const auto ms = markers(svg);
    double seed_x = -1, max_point_x = -1;
    int points = 0;
    for (const auto& m : ms) {
      if (m.cls == "seed-marker") seed_x = m.cx;
      if (m.cls == "point-marker") {
        ++points;
        max_point_x = std::max(max_point_x, m.cx);
      }
    }
    CHECK(points == 2);
    CHECK(seed_x > max_point_x);
    CHECK(svg.find("band-A") != std::string::npos);
    CHECK(svg == to_svg(c6_diagram("A")));
  }

  TEST_CASE("svg for an empty diagram has axes, bands and the seed only") {
    const std::string svg = to_svg(c6_diagram("A", 50));
    const auto ms = markers(svg);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].cls == "seed-marker");
    CHECK(svg.find("class=\"axes\"") != std::string::npos);
    CHECK(svg.find("band-C") != std::string::npos);
    CHECK(std::isfinite(ms[0].cx));
  }

  TEST_CASE("svg options") {
    RenderStyle s;
    s.show_sector_bands = false;
    CHECK(to_svg(c6_diagram("A"), s).find("band-") == std::string::npos);
    s.margin_px = 600;
    CHECK_THROWS_AS(to_svg(c6_diagram("A"), s), InvalidParameterError);
  }

  TEST_CASE("svg circles dominant points and escapes labels") {
    std::vector<DocRecord> recs;
    for (int i = 0; i < 8; ++i) {
      DocRecord r{"d" + std::to_string(i), {"United <States> & Co"}};
      if (i < 4) r.terms.push_back("Seed");
      recs.push_back(r);
    }
    PennantParams p;
    p.min_co = 1;
    const std::string svg = to_svg(compute_pennant(TermIndex::build(ingest_corpus(recs)), "Seed", p));
    int rings = 0;
    for (const auto& m : markers(svg)) rings += m.cls == "dominant-ring";
    CHECK(rings == 1);
    CHECK(svg.find("United &lt;States&gt; &amp; Co") != std::string::npos);
  }

  TEST_CASE("property: pixel order follows weight order") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 25; ++round) {
      const auto recs = pennant::testing::random_records(rng);
      const TermIndex idx = TermIndex::build(ingest_corpus(recs));
      PennantParams p;
      p.min_co = 1;
      for (const auto& seed : idx.vocabulary()) {
        const auto d = compute_pennant(idx, seed, p);
        const RenderStyle style;
        const PlotFrame frame(d, style);
        for (const auto& a : d.points) {
          REQUIRE(frame.px(d.seed_x) >= frame.px(a.x));
          for (const auto& b : d.points) {
            if (a.x < b.x) REQUIRE(frame.px(a.x) < frame.px(b.x));
            if (a.y < b.y) REQUIRE(frame.py(a.y) > frame.py(b.y));
          }
        }
        const auto ms = markers(to_svg(d, style));
        double seed_px = 0, max_px = -1e9;
        for (const auto& m : ms) {
          if (m.cls == "seed-marker") seed_px = m.cx;
          if (m.cls == "point-marker") max_px = std::max(max_px, m.cx);
        }
        REQUIRE(seed_px >= max_px);
      }
    }
  }
}
