#include "clubench/cli/svg_plot.hpp"

#include <algorithm>
#include <cstdio>

#include "clubench/error.hpp"

namespace clubench::cli {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 24.0;
constexpr double kRadius = 2.5;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view cluster_colour(int label) {
  if (label <= 0) return kNoiseColour;
  return kPalette[static_cast<std::size_t>(label - 1) % kPalette.size()];
}

std::string render_scatter_svg(const PointMatrix<double>& data, const Eigen::Ref<const Labels>& labels,
                               std::string_view title) {
  if (data.cols() < 2) throw Error(Errc::BadDimension, "scatterplots need at least 2 dimensions");
  if (labels.size() != data.rows()) throw Error(Errc::LengthMismatch, "one label per point required");

  const Eigen::Vector2d lo = data.leftCols<2>().colwise().minCoeff();
  const Eigen::Vector2d hi = data.leftCols<2>().colwise().maxCoeff();
  const Eigen::Vector2d span = hi - lo;
  const double inner = kSize - 2.0 * kMargin;
  const double extent = std::max(span.x(), span.y());
  const double scale = extent > 0.0 ? inner / extent : 1.0;
  // Centre the data box inside the square canvas.
  const double off_x = kMargin + (inner - span.x() * scale) / 2.0;
  const double off_y = kMargin + (inner - span.y() * scale) / 2.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
         "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n";
  out += "<title>" + escape(title) + "</title>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"" + num(kSize / 2.0) + "\" y=\"16\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" + escape(title) + "</text>\n";

  auto emit = [&](bool noise_pass) {
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      if ((labels[i] == 0) != noise_pass) continue;
      const double x = off_x + (data(i, 0) - lo.x()) * scale;
      const double y = kSize - (off_y + (data(i, 1) - lo.y()) * scale);
      out += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(kRadius) + "\" fill=\"" +
             std::string(cluster_colour(labels[i])) + "\"/>\n";
    }
  };
  emit(true);
  emit(false);
  out += "</svg>\n";
  return out;
}

}  // namespace clubench::cli
