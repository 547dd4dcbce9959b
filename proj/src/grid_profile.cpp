#include "hjid/grid_profile.hpp"

#include <algorithm>
#include <cmath>

#include "hjid/errors.hpp"

namespace hjid {

GridProfile::GridProfile(double x_min, double x_max, std::size_t n, Layout layout, std::vector<double> values)
    : x_min_(x_min), x_max_(x_max), n_(n), layout_(layout), values_(std::move(values)) {
    if (!(x_max_ > x_min_) || !std::isfinite(x_min_) || !std::isfinite(x_max_)) {
        throw InvalidGrid("grid requires finite x_min < x_max");
    }
    if (n_ == 0) throw InvalidGrid("grid requires at least one cell");
    const std::size_t expected = layout_ == Layout::Cells ? n_ : n_ + 1;
    if (values_.size() != expected) {
        throw InvalidGrid("grid expects " + std::to_string(expected) + " values, got " +
                          std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidGrid("grid values must be finite");
    }
}

GridProfile GridProfile::sample(double x_min, double x_max, std::size_t n, Layout layout,
                                const std::function<double(double)>& f) {
    const std::size_t count = layout == Layout::Cells ? n : n + 1;
    const double dx = (x_max - x_min) / static_cast<double>(n);
    const double offset = layout == Layout::Cells ? 0.5 : 0.0;
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = f(x_min + (static_cast<double>(i) + offset) * dx);
    }
    return GridProfile(x_min, x_max, n, layout, std::move(values));
}

double GridProfile::position(std::size_t i) const {
    const double offset = layout_ == Layout::Cells ? 0.5 : 0.0;
    return x_min_ + (static_cast<double>(i) + offset) * dx();
}

std::vector<double> GridProfile::positions() const {
    std::vector<double> xs(values_.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = position(i);
    return xs;
}

double GridProfile::edge_position(std::size_t edge) const {
    return x_min_ + static_cast<double>(edge) * dx();
}

double GridProfile::left_trace(std::size_t edge) const {
    if (layout_ == Layout::Nodes) return values_[edge];
    return edge == 0 ? values_.front() : values_[std::min(edge, n_) - 1];
}

double GridProfile::right_trace(std::size_t edge) const {
    if (layout_ == Layout::Nodes) return values_[edge];
    return edge >= n_ ? values_.back() : values_[edge];
}

double GridProfile::interpolate(double x) const {
    const double x0 = position(0);
    const double h = dx();
    const double s = (x - x0) / h;
    if (s <= 0.0) return values_.front();
    const auto last = values_.size() - 1;
    if (s >= static_cast<double>(last)) return values_.back();
    const auto i = static_cast<std::size_t>(s);
    const double frac = s - static_cast<double>(i);
    return (1.0 - frac) * values_[i] + frac * values_[i + 1];
}

double GridProfile::lipschitz() const {
    double lip = 0.0;
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        lip = std::max(lip, std::abs(values_[i + 1] - values_[i]));
    }
    return lip / dx();
}

double GridProfile::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridProfile::same_grid(const GridProfile& other) const {
    return layout_ == other.layout_ && n_ == other.n_ && x_min_ == other.x_min_ && x_max_ == other.x_max_;
}

double l1_distance(const GridProfile& u, const GridProfile& v, double a, double b) {
    if (!u.same_grid(v)) throw InvalidGrid("l1_distance: profiles live on different grids");
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u.position(i);
        if (x >= a && x <= b) sum += std::abs(u[i] - v[i]);
    }
    return sum * u.dx();
}

double l1_distance(const GridProfile& u, const std::function<double(double)>& f, double a, double b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u.position(i);
        if (x >= a && x <= b) sum += std::abs(u[i] - f(x));
    }
    return sum * u.dx();
}

double sup_distance(const GridProfile& u, const GridProfile& v) {
    if (!u.same_grid(v)) throw InvalidGrid("sup_distance: profiles live on different grids");
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

} // namespace hjid
