#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "output.hpp"

namespace harvest::cli {

inline constexpr std::array<std::string_view, 7> kFigureNames{"fig1a", "fig1b", "fig2a", "fig2b",
                                                              "fig3",  "fig4",  "fig5"};

struct FigureOptions {
  std::size_t points = 400;
  unsigned threads = 0;
};

bool is_figure_name(std::string_view name) noexcept;

// Data behind one figure. Concurrence-type columns are divided by lambda^2 and
// are evaluated at unit coupling, so they do not depend on lambda at all.
// Figure parameters are appended to `manifest`. Throws std::invalid_argument
// for an unknown name.
Table make_figure(std::string_view name, const FigureOptions& options, RunManifest& manifest);

}  // namespace harvest::cli
