#pragma once

#include <cqed/sweep.hpp>

#include <string>

namespace cqed_cli {

/// Self-contained SVG plot of the collision readout curves: P_eg solid,
/// P_ge dashed, P_ee (= P_gg) dotted, with x ticks at multiples of pi/3.
std::string svg_figure(const cqed::SweepSeries& series);

}  // namespace cqed_cli
