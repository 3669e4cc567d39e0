#include "kap/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace kap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMargin = 46.0;

struct Mapper {
    double w, h;
    double px(double theta) const { return kMargin + theta / kTwoPi * w; }
    double py(double eta) const { return kMargin + (1.0 - eta / kTwoPi) * h; }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

void emit_polyline_wrapped(std::ostringstream& os, const Mapper& map,
                           const std::vector<std::pair<double, double>>& pts,
                           const char* style) {
    // split the polyline when a coordinate wraps around the torus edge
    std::vector<std::vector<std::pair<double, double>>> runs;
    runs.emplace_back();
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
            double dtheta = std::abs(pts[i].first - pts[i - 1].first);
            double deta = std::abs(pts[i].second - pts[i - 1].second);
            if (dtheta > kPi || deta > kPi) runs.emplace_back();
        }
        runs.back().push_back(pts[i]);
    }
    for (const auto& run : runs) {
        if (run.size() < 2) continue;
        os << "  <polyline " << style << " points=\"";
        for (size_t i = 0; i < run.size(); ++i) {
            if (i) os << " ";
            os << fmt(map.px(run[i].first)) << "," << fmt(map.py(run[i].second));
        }
        os << "\"/>\n";
    }
}

} // namespace

std::string render_pillowcase(const PillowSet& s, const RenderOptions& opt) {
    Mapper map{(double)opt.width - 2 * kMargin, (double)opt.height - 2 * kMargin};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
       << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << " "
       << opt.height << "\">\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\" fill=\"white\"/>\n";
    os << "  <rect x=\"" << fmt(map.px(0)) << "\" y=\"" << fmt(map.py(kTwoPi))
       << "\" width=\"" << fmt(map.w) << "\" height=\"" << fmt(map.h)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // grid at multiples of pi/2, labels at multiples of pi
    static const char* theta_labels[] = {"0", "pi/2", "pi", "3pi/2", "2pi"};
    for (int k = 0; k <= 4; ++k) {
        double v = k * kPi / 2;
        os << "  <line x1=\"" << fmt(map.px(v)) << "\" y1=\"" << fmt(map.py(0))
           << "\" x2=\"" << fmt(map.px(v)) << "\" y2=\"" << fmt(map.py(kTwoPi))
           << "\" stroke=\"#cccccc\" stroke-width=\"0.6\"/>\n";
        os << "  <line x1=\"" << fmt(map.px(0)) << "\" y1=\"" << fmt(map.py(v))
           << "\" x2=\"" << fmt(map.px(kTwoPi)) << "\" y2=\"" << fmt(map.py(v))
           << "\" stroke=\"#cccccc\" stroke-width=\"0.6\"/>\n";
        os << "  <text x=\"" << fmt(map.px(v) - 10) << "\" y=\"" << fmt(map.py(0) + 18)
           << "\" font-size=\"11\">" << theta_labels[k] << "</text>\n";
        os << "  <text x=\"" << fmt(map.px(0) - 38) << "\" y=\"" << fmt(map.py(v) + 4)
           << "\" font-size=\"11\">" << theta_labels[k] << "</text>\n";
    }
    os << "  <text x=\"" << fmt(map.px(kPi)) << "\" y=\"" << fmt((double)opt.height - 8)
       << "\" font-size=\"12\">theta</text>\n";
    os << "  <text x=\"8\" y=\"" << fmt(map.py(kPi)) << "\" font-size=\"12\">eta</text>\n";

    // corridor band (under everything else)
    if (opt.path_eta0 && opt.corridor_halfwidth > 0) {
        double w = opt.corridor_halfwidth;
        for (const auto& seg : slice_path_segments(*opt.path_eta0)) {
            double x0 = std::min(seg[0], seg[2]) - w, x1 = std::max(seg[0], seg[2]) + w;
            double y0 = std::min(seg[1], seg[3]) - w, y1 = std::max(seg[1], seg[3]) + w;
            // segments live in the (-pi, pi] picture; shift into [0, 2pi) both ways
            for (double sx : {0.0, kTwoPi}) {
                for (double sy : {0.0, kTwoPi}) {
                    double ax = x0 + sx, bx = x1 + sx, ay = y0 + sy, by = y1 + sy;
                    if (bx < 0 || ax > kTwoPi || by < 0 || ay > kTwoPi) continue;
                    ax = std::max(ax, 0.0);
                    bx = std::min(bx, kTwoPi);
                    ay = std::max(ay, 0.0);
                    by = std::min(by, kTwoPi);
                    os << "  <rect class=\"corridor\" x=\"" << fmt(map.px(ax)) << "\" y=\""
                       << fmt(map.py(by)) << "\" width=\"" << fmt(map.px(bx) - map.px(ax))
                       << "\" height=\"" << fmt(map.py(ay) - map.py(by))
                       << "\" fill=\"#dce9f5\" stroke=\"none\"/>\n";
                }
            }
        }
        // the path itself
        for (const auto& seg : slice_path_segments(*opt.path_eta0)) {
            for (double sx : {0.0, kTwoPi}) {
                for (double sy : {0.0, kTwoPi}) {
                    double ax = seg[0] + sx, bx = seg[2] + sx;
                    double ay = seg[1] + sy, by = seg[3] + sy;
                    if (std::max(ax, bx) < 0 || std::min(ax, bx) > kTwoPi) continue;
                    if (std::max(ay, by) < 0 || std::min(ay, by) > kTwoPi) continue;
                    os << "  <line class=\"path\" x1=\"" << fmt(map.px(ax)) << "\" y1=\""
                       << fmt(map.py(ay)) << "\" x2=\"" << fmt(map.px(bx)) << "\" y2=\""
                       << fmt(map.py(by))
                       << "\" stroke=\"#2060a0\" stroke-width=\"1.2\"/>\n";
                }
            }
        }
    }

    // point sets
    for (const auto& p : s.points) {
        os << "  <circle class=\"pt\" cx=\"" << fmt(map.px(p.theta)) << "\" cy=\""
           << fmt(map.py(p.eta)) << "\" r=\"" << fmt(opt.point_radius)
           << "\" fill=\"#202020\"/>\n";
    }
    if (opt.second_set) {
        for (const auto& p : opt.second_set->points) {
            os << "  <circle class=\"pt2\" cx=\"" << fmt(map.px(p.theta)) << "\" cy=\""
               << fmt(map.py(p.eta)) << "\" r=\"" << fmt(opt.point_radius)
               << "\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"0.9\"/>\n";
        }
    }

    // shear graph overlay: {(theta, g(theta))}
    if (opt.shear_graph) {
        std::vector<std::pair<double, double>> pts;
        const int n = 512;
        for (int i = 0; i <= n; ++i) {
            double th = kTwoPi * i / n;
            pts.push_back({th, wrap_2pi(opt.shear_graph->eval(th))});
        }
        emit_polyline_wrapped(os, map, pts,
                              "class=\"graph\" fill=\"none\" stroke=\"#108040\" "
                              "stroke-width=\"1.4\"");
    }

    os << "</svg>\n";
    return os.str();
}

} // namespace kap
