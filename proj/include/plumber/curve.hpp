#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "plumber/cell.hpp"
#include "plumber/rational.hpp"

namespace plumber {

/// One axis-parallel segment of a plumbers' curve, identified by its axis and
/// move number. The pipe order along the curve is x_0, y_0, z_0, x_1, ...
struct PipeRef {
    Axis axis = Axis::X;
    int move = 0;

    int linear_index() const { return 3 * move + static_cast<int>(axis); }
    bool operator==(const PipeRef&) const = default;
};

/// The two corners of a pipe, available in closed form from the vertex list.
inline std::pair<std::array<Rat, 3>, std::array<Rat, 3>>
pipe_endpoints(const CurvePoint& v, PipeRef p) {
    const int i = p.move;
    if (i < 0 || i >= v.moves())
        throw std::invalid_argument("pipe_endpoints: move out of range");
    const Rat& xi = v.coord(i, Axis::X);
    const Rat& xi1 = v.coord(i + 1, Axis::X);
    const Rat& yi = v.coord(i, Axis::Y);
    const Rat& yi1 = v.coord(i + 1, Axis::Y);
    const Rat& zi = v.coord(i, Axis::Z);
    const Rat& zi1 = v.coord(i + 1, Axis::Z);
    switch (p.axis) {
        case Axis::X: return {{xi, yi, zi}, {xi1, yi, zi}};
        case Axis::Y: return {{xi1, yi, zi}, {xi1, yi1, zi}};
        default:      return {{xi1, yi1, zi}, {xi1, yi1, zi1}};
    }
}

/// Length |start - end| and direction sign of a pipe; the sign is +1 when the
/// pipe runs from a larger to a smaller coordinate.
inline std::pair<Rat, int> pipe_metrics(const CurvePoint& v, PipeRef p) {
    auto [a, b] = pipe_endpoints(v, p);
    const auto ax = static_cast<std::size_t>(p.axis);
    Rat d = a[ax] - b[ax];
    return {d.abs(), d.sign()};
}

/// Piecewise-linear evaluation of the curve at time t in [0,3]; the curve
/// walks pipe k on [k/n, (k+1)/n] in units of 3/n per move triple.
inline std::array<Rat, 3> evaluate(const CurvePoint& v, const Rat& t) {
    if (t < Rat(0) || t > Rat(3))
        throw std::invalid_argument("evaluate: t outside [0,3]");
    const int n = v.moves();
    // s = n*t in [0, 3n]; pipe index k = floor(s), local parameter u = s - k.
    Rat s = t * Rat(n);
    std::int64_t k = s.num() / s.den();
    if (k >= 3 * n) k = 3 * n - 1;
    Rat u = s - Rat(k);
    int move = static_cast<int>(k / 3);
    Axis axis = static_cast<Axis>(k % 3);
    auto [a, b] = pipe_endpoints(v, {axis, move});
    std::array<Rat, 3> out;
    for (std::size_t c = 0; c < 3; ++c)
        out[c] = a[c] + (b[c] - a[c]) * u;
    return out;
}

/// The 3n+1 corner sequence of the curve (both endpoints included).
inline std::vector<std::array<Rat, 3>> corner_sequence(const CurvePoint& v) {
    const int n = v.moves();
    std::vector<std::array<Rat, 3>> cs;
    cs.reserve(static_cast<std::size_t>(3 * n) + 1);
    for (int i = 0; i < n; ++i) {
        cs.push_back({v.coord(i, Axis::X), v.coord(i, Axis::Y), v.coord(i, Axis::Z)});
        cs.push_back({v.coord(i + 1, Axis::X), v.coord(i, Axis::Y), v.coord(i, Axis::Z)});
        cs.push_back({v.coord(i + 1, Axis::X), v.coord(i + 1, Axis::Y), v.coord(i, Axis::Z)});
    }
    cs.push_back({v.coord(n, Axis::X), v.coord(n, Axis::Y), v.coord(n, Axis::Z)});
    return cs;
}

} // namespace plumber
