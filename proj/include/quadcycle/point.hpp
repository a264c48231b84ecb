#pragma once

#include <cmath>

namespace quadcycle {

/// Phase-plane point; also used for velocity vectors.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

/// z-component of the cross product a x b.
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

inline double norm(Point p) { return std::hypot(p.x, p.y); }

inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

} // namespace quadcycle
