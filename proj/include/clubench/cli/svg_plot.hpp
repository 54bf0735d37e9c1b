#pragma once

#include <array>
#include <string>
#include <string_view>

#include "clubench/types.hpp"

namespace clubench::cli {

/// Categorical fill colours, cycled by cluster ID (ID 1 takes the first).
inline constexpr std::array<std::string_view, 10> kPalette{
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#393b79"};

inline constexpr std::string_view kNoiseColour = "#b0b0b0";

std::string_view cluster_colour(int label);

/// Scatterplot of the first two columns with equal axis scaling. Noise
/// points (label 0) are grey and drawn underneath the clustered points.
/// Throws BadDimension when fewer than two columns are available.
std::string render_scatter_svg(const PointMatrix<double>& data, const Eigen::Ref<const Labels>& labels,
                               std::string_view title);

}  // namespace clubench::cli
