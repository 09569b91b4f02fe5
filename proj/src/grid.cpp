#include "subergo/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "subergo/error.hpp"

namespace subergo {

CircleGrid::CircleGrid(std::size_t nodes) : m_(nodes) {
    if (nodes < kMinNodes) throw InputError("circle grid needs at least 8 nodes");
}

std::size_t CircleGrid::wrap(std::ptrdiff_t i) const {
    const auto m = static_cast<std::ptrdiff_t>(m_);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

GridFn::GridFn(CircleGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw InputError("grid function length does not match the grid");
}

GridFn::GridFn(CircleGrid grid, double constant) : grid_(grid), values_(grid.size(), constant) {}

double GridFn::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFn::max() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFn::interpolate(double x) const {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    const double s = r / grid_.spacing();
    const auto i = static_cast<std::size_t>(std::floor(s)) % size();
    const double f = s - std::floor(s);
    return (1.0 - f) * values_[i] + f * values_[(i + 1) % size()];
}

double sup_distance(const GridFn& a, const GridFn& b) {
    if (a.size() != b.size()) throw InputError("grid functions live on different grids");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

GridFn sample(const CircleGrid& grid, double (*f)(double)) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.node(i));
    return GridFn(grid, std::move(v));
}

namespace {

double parse_double(std::string_view s, const std::string& context) {
    // std::from_chars for double is available in libstdc++ >= 11.
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    while (first != last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) throw InputError("cannot parse number in " + context);
    return v;
}

double parse_angle(std::string_view s, const std::string& context) {
    if (s == "pi") return std::numbers::pi;
    if (s == "2pi") return kTwoPi;
    return parse_double(s, context);
}

}  // namespace

GridFn make_initial(const std::string& name, const CircleGrid& grid) {
    constexpr double kNodeTol = 1e-12;
    if (name == "cos") return sample(grid, [](double x) { return std::cos(x); });
    if (name == "quad") {
        return sample(grid, [](double x) {
            const double d = x - std::numbers::pi;
            return d * d;
        });
    }
    const auto colon = name.find(':');
    const std::string kind = name.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
    if (kind == "indicator") {
        const auto comma = arg.find(',');
        if (comma == std::string::npos) throw InputError("indicator needs 'indicator:a,b'");
        const double a = parse_angle(std::string_view(arg).substr(0, comma), name);
        const double b = parse_angle(std::string_view(arg).substr(comma + 1), name);
        if (!(a <= b) || a < 0.0 || b > kTwoPi + kNodeTol) throw InputError("indicator bounds must satisfy 0 <= a <= b <= 2pi");
        std::vector<double> v(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = grid.node(i);
            if (x >= a - kNodeTol && x < b - kNodeTol) v[i] = 1.0;
        }
        return GridFn(grid, std::move(v));
    }
    if (kind == "random") {
        if (arg.empty()) throw InputError("random needs 'random:seed'");
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
        if (ec != std::errc{} || ptr != arg.data() + arg.size()) throw InputError("bad seed in " + name);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<double> v(grid.size());
        for (auto& x : v) x = unit(rng);
        return GridFn(grid, std::move(v));
    }
    if (kind == "const") return GridFn(grid, parse_double(arg, name));
    throw InputError("unknown initial data '" + name + "'");
}

void write_csv(std::ostream& os, const GridFn& u) {
    const auto old = os.precision(17);
    os << "x,u\n";
    for (std::size_t i = 0; i < u.size(); ++i) os << u.grid().node(i) << ',' << u[i] << '\n';
    os.precision(old);
}

GridFn read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InputError("empty grid CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,u") throw InputError("grid CSV header must be 'x,u'");
    std::vector<double> xs, us;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InputError("grid CSV row needs two columns");
        xs.push_back(parse_double(std::string_view(line).substr(0, comma), "grid CSV"));
        us.push_back(parse_double(std::string_view(line).substr(comma + 1), "grid CSV"));
    }
    const CircleGrid grid(us.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - grid.node(i)) > 1e-9) throw InputError("grid CSV nodes are not uniform on [0, 2pi)");
    return GridFn(grid, std::move(us));
}

}  // namespace subergo
