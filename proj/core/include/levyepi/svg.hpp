#ifndef LEVYEPI_SVG_HPP
#define LEVYEPI_SVG_HPP

#include <iosfwd>

#include "levyepi/engine.hpp"

namespace levyepi {

// Standalone SVG with one line-chart panel per compartment, time on the
// abscissa. Dependency-free polyline rendering.
void write_trajectory_svg(std::ostream& os, const Trajectory& traj,
                          int width = 960, int height = 640);

}  // namespace levyepi

#endif
