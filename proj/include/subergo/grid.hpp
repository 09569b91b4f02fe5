#pragma once

// Periodic grid functions on the unit circle [0, 2pi).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace subergo {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class CircleGrid {
public:
    static constexpr std::size_t kMinNodes = 8;

    explicit CircleGrid(std::size_t nodes);

    std::size_t size() const { return m_; }
    double spacing() const { return kTwoPi / static_cast<double>(m_); }
    double node(std::size_t i) const { return static_cast<double>(i) * spacing(); }
    std::size_t wrap(std::ptrdiff_t i) const;

    bool operator==(const CircleGrid&) const = default;

private:
    std::size_t m_;
};

// Values at the M nodes i*h; index M wraps to 0 (no duplicated seam node).
class GridFn {
public:
    GridFn(CircleGrid grid, std::vector<double> values);
    GridFn(CircleGrid grid, double constant);

    const CircleGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double min() const;
    double max() const;
    // Periodic linear interpolation at an arbitrary angle.
    double interpolate(double x) const;

private:
    CircleGrid grid_;
    std::vector<double> values_;
};

double sup_distance(const GridFn& a, const GridFn& b);

// Built-in initial data: "cos", "quad" ((x - pi)^2), "indicator:a,b"
// (nodes with a <= x < b), "random:seed" (uniform in [-1, 1]),
// "const:c". Throws InputError on unknown names.
GridFn make_initial(const std::string& name, const CircleGrid& grid);

GridFn sample(const CircleGrid& grid, double (*f)(double));

// CSV with header "x,u", 17 significant digits.
void write_csv(std::ostream& os, const GridFn& u);
GridFn read_csv(std::istream& is);

}  // namespace subergo
