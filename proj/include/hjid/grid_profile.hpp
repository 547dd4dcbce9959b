#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hjid {

/// Cells: n cell averages centred at x_min + (i + 1/2)·dx (conservation-law data).
/// Nodes: n + 1 point values at x_min + i·dx (Hamilton–Jacobi data), so that a
/// node profile and its derivative share the same n-cell grid.
enum class Layout { Cells, Nodes };

class GridProfile {
public:
    GridProfile(double x_min, double x_max, std::size_t n, Layout layout, std::vector<double> values);

    static GridProfile sample(double x_min, double x_max, std::size_t n, Layout layout,
                              const std::function<double(double)>& f);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    /// Number of cells (node profiles hold one more value than this).
    std::size_t n() const noexcept { return n_; }
    Layout layout() const noexcept { return layout_; }
    double dx() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_); }
    std::size_t size() const noexcept { return values_.size(); }

    double position(std::size_t i) const;
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double>& mutable_values() noexcept { return values_; }
    std::vector<double> positions() const;

    /// Value immediately left of edge `i` (i = 0..n) of a cell profile: cell i−1,
    /// with cell 0 reused at the left boundary.
    double left_trace(std::size_t edge) const;
    /// Value immediately right of edge `i`: cell i, with cell n−1 at the right boundary.
    double right_trace(std::size_t edge) const;
    double edge_position(std::size_t edge) const;

    /// Piecewise-linear interpolation through the sample positions; constant
    /// beyond the first and last sample.
    double interpolate(double x) const;

    /// max |v_{i+1} − v_i| / spacing.
    double lipschitz() const;
    double max_abs() const;

    bool same_grid(const GridProfile& other) const;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    Layout layout_;
    std::vector<double> values_;
};

/// Discrete L¹ distance over samples whose position lies in [a, b].
double l1_distance(const GridProfile& u, const GridProfile& v, double a, double b);
/// Discrete L¹ distance between a profile and a function over [a, b].
double l1_distance(const GridProfile& u, const std::function<double(double)>& f, double a, double b);
double sup_distance(const GridProfile& u, const GridProfile& v);

} // namespace hjid
