#include "kap/shear.hpp"
#include "kap/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kap {

namespace {
constexpr double kPi = std::numbers::pi;
}

ShearFn::ShearFn() {
    knots_ = {{0.0, 0.0}, {kPi, 0.0}};
}

ShearFn ShearFn::from_knots(std::vector<std::pair<double, double>> knots) {
    for (const auto& [x, v] : knots)
        if (x < -1e-12 || x > kPi + 1e-12)
            throw Error(Errc::BadConfig, "shear knot outside [0, pi]");
    knots.push_back({0.0, 0.0});
    knots.push_back({kPi, 0.0});
    std::sort(knots.begin(), knots.end());
    std::vector<std::pair<double, double>> uniq;
    for (const auto& k : knots) {
        if (!uniq.empty() && std::abs(k.first - uniq.back().first) < 1e-12) continue;
        uniq.push_back(k);
    }
    // endpoints forced by oddness + periodicity
    uniq.front().second = 0.0;
    uniq.back().second = 0.0;
    ShearFn f;
    f.knots_ = std::move(uniq);
    f.lipschitz_ = 0.0;
    for (size_t i = 1; i < f.knots_.size(); ++i) {
        double dx = f.knots_[i].first - f.knots_[i - 1].first;
        double dv = f.knots_[i].second - f.knots_[i - 1].second;
        if (dx > 1e-15) f.lipschitz_ = std::max(f.lipschitz_, std::abs(dv / dx));
    }
    return f;
}

double ShearFn::eval(double x) const {
    double r = std::remainder(x, 2.0 * kPi); // in [-pi, pi]
    double sign = 1.0;
    if (r < 0) {
        sign = -1.0;
        r = -r;
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), std::make_pair(r, 1e300));
    if (it == knots_.begin()) return sign * knots_.front().second;
    if (it == knots_.end()) return sign * knots_.back().second;
    auto hi = *it;
    auto lo = *std::prev(it);
    double tfrac = (hi.first - lo.first) > 1e-15 ? (r - lo.first) / (hi.first - lo.first) : 0.0;
    return sign * (lo.second + tfrac * (hi.second - lo.second));
}

double ShearFn::max_abs() const {
    double m = 0;
    for (const auto& [x, v] : knots_) m = std::max(m, std::abs(v));
    return m;
}

bool ShearFn::is_zero() const {
    return std::all_of(knots_.begin(), knots_.end(),
                       [](const auto& k) { return k.second == 0.0; });
}

std::string ShearFn::to_json() const {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [x, v] : knots_) arr.push_back({x, v});
    j["knots"] = arr;
    j["lipschitz"] = lipschitz_;
    return j.dump(2) + "\n";
}

ShearFn ShearFn::from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        std::vector<std::pair<double, double>> knots;
        for (const auto& k : j.at("knots"))
            knots.push_back({k.at(0).get<double>(), k.at(1).get<double>()});
        return from_knots(std::move(knots));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadConfig, std::string("shear JSON: ") + e.what());
    }
}

} // namespace kap
