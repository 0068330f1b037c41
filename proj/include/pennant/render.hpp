#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pennant/index.hpp"
#include "pennant/pennant.hpp"

namespace pennant {

/// JSON document with keys in fixed order: seed, seed_df, seed_x, seed_y,
/// n_docs, params, points. Coordinates carry exactly six decimals;
/// parameters use the shortest text that reads back to the same double.
std::string to_json(const PennantDiagram& diagram);

/// Reads to_json output back. Coordinates are recomputed from the counts
/// and parameters and must agree with the serialized ones to within the
/// six-decimal rounding, otherwise FormatError is thrown.
PennantDiagram diagram_from_json(std::string_view text);

/// Tab-separated: header `term co df x y sector dominant`, one row per point.
std::string to_table(const PennantDiagram& diagram);

/// Tab-separated co-occurrence listing: header `term co df`.
std::string to_rank_table(const TermIndex& index, const std::vector<CoocEntry>& entries);

struct RenderStyle {
  int width_px = 1200;
  int height_px = 700;
  int margin_px = 70;
  bool show_sector_bands = true;
  std::size_t label_max_chars = 40;
  int font_size_px = 12;
};

/// Throws InvalidParameterError when the plot area would be empty.
void validate(const RenderStyle& style);

/// Shortens `label` to at most `max_chars` code points, replacing the tail
/// with an ellipsis when it is cut.
std::string elide_label(std::string_view label, std::size_t max_chars);

/// Maps weight space onto the plot rectangle. x grows rightward, y upward.
class PlotFrame {
 public:
  PlotFrame(const PennantDiagram& diagram, const RenderStyle& style);

  double px(double x) const;
  double py(double y) const;

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }

 private:
  double x_min_, x_max_, y_min_, y_max_;
  double left_, right_, top_, bottom_;
};

/// Standalone SVG 1.1 scatterplot of the diagram.
std::string to_svg(const PennantDiagram& diagram, const RenderStyle& style = {});

/// Fixed-point text with `decimals` digits; "-0.000000" is written as "0.000000".
std::string format_fixed(double v, int decimals);

}  // namespace pennant
