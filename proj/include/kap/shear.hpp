#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kap {

// Odd, 2pi-periodic piecewise-linear function given by knots on [0, pi].
// Oddness and periodicity force the value 0 at 0 and pi.
class ShearFn {
public:
    ShearFn(); // identically zero

    // Knots (x, value) with x in [0, pi]; endpoints are pinned to zero and
    // inserted if missing. Knots are sorted; duplicate x keeps the first.
    static ShearFn from_knots(std::vector<std::pair<double, double>> knots);

    double eval(double x) const;
    double lipschitz() const { return lipschitz_; }
    double max_abs() const;
    bool is_zero() const;
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

    std::string to_json() const;
    static ShearFn from_json(const std::string& text);

private:
    std::vector<std::pair<double, double>> knots_;
    double lipschitz_ = 0.0;
};

} // namespace kap
