#include "levyepi/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace levyepi {

namespace {

const char* kPanelLabels[4] = {"S", "I", "S_m", "I_m"};
const char* kPanelColors[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

void write_trajectory_svg(std::ostream& os, const Trajectory& traj, int width,
                          int height) {
    if (traj.times.size() < 2)
        throw std::invalid_argument("write_trajectory_svg: empty trajectory");

    int panel_w = width / 2, panel_h = height / 2;
    int margin_l = 46, margin_b = 28, margin_t = 20, margin_r = 10;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
       << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\"/>\n";

    double t0 = traj.times.front(), t1 = traj.times.back();
    // Thin dense trajectories so a path has at most ~2000 points.
    std::size_t stride = std::max<std::size_t>(1, traj.times.size() / 2000);

    for (int panel = 0; panel < 4; ++panel) {
        int ox = (panel % 2) * panel_w;
        int oy = (panel / 2) * panel_h;
        int plot_x = ox + margin_l, plot_y = oy + margin_t;
        int plot_w = panel_w - margin_l - margin_r;
        int plot_h = panel_h - margin_t - margin_b;

        double lo = traj.states[0][panel], hi = lo;
        for (const auto& s : traj.states) {
            lo = std::min(lo, s[panel]);
            hi = std::max(hi, s[panel]);
        }
        if (hi - lo < 1e-12) {
            hi += 1.0;
            lo -= lo > 0.5 ? 0.5 : lo;
        }
        double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;

        auto sx = [&](double t) {
            return plot_x + (t - t0) / (t1 - t0) * plot_w;
        };
        auto sy = [&](double v) {
            return plot_y + (hi - v) / (hi - lo) * plot_h;
        };

        os << "<rect x=\"" << plot_x << "\" y=\"" << plot_y << "\" width=\""
           << plot_w << "\" height=\"" << plot_h
           << "\" fill=\"none\" stroke=\"#888\"/>\n";
        os << "<text x=\"" << plot_x + 6 << "\" y=\"" << plot_y + 16
           << "\" font-family=\"sans-serif\" font-size=\"14\">"
           << kPanelLabels[panel] << "</text>\n";
        // axis annotations: range endpoints only
        os << "<text x=\"" << ox + 4 << "\" y=\"" << plot_y + 10
           << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(hi)
           << "</text>\n";
        os << "<text x=\"" << ox + 4 << "\" y=\"" << plot_y + plot_h
           << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(lo)
           << "</text>\n";
        os << "<text x=\"" << plot_x << "\" y=\"" << plot_y + plot_h + 16
           << "\" font-family=\"sans-serif\" font-size=\"10\">t=" << fmt(t0)
           << "</text>\n";
        os << "<text x=\"" << plot_x + plot_w - 40 << "\" y=\""
           << plot_y + plot_h + 16
           << "\" font-family=\"sans-serif\" font-size=\"10\">t=" << fmt(t1)
           << "</text>\n";

        os << "<polyline fill=\"none\" stroke=\"" << kPanelColors[panel]
           << "\" stroke-width=\"1\" points=\"";
        for (std::size_t k = 0; k < traj.times.size(); k += stride) {
            os << fmt(sx(traj.times[k])) << ',' << fmt(sy(traj.states[k][panel]))
               << ' ';
        }
        os << fmt(sx(t1)) << ',' << fmt(sy(traj.states.back()[panel]));
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace levyepi
