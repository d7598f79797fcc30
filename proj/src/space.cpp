#include "space.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace naifs {

char symbol_char(int v) {
    if (v < 10) return static_cast<char>('0' + v);
    return static_cast<char>('a' + (v - 10));
}

int symbol_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return 10 + (c - 'a');
    return -1;
}

std::size_t first_difference(const std::string& a, const std::string& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

namespace {

double circle_dist(double a, double b) {
    double d = std::fabs(a - b);
    d -= std::floor(d); // both inputs already reduced, but stay safe
    return std::min(d, 1.0 - d);
}

} // namespace

double StateSpace::diameter() const {
    switch (kind) {
        case SpaceKind::Circle: return 0.5;
        case SpaceKind::Interval: return 1.0;
        case SpaceKind::Torus: return 1.0;
        case SpaceKind::Symbolic: return 1.0;
    }
    return 1.0;
}

double StateSpace::distance(const Point& a, const Point& b) const {
    switch (kind) {
        case SpaceKind::Circle:
            return circle_dist(a.x[0], b.x[0]);
        case SpaceKind::Interval:
            return std::fabs(a.x[0] - b.x[0]);
        case SpaceKind::Torus: {
            double d = 0.0;
            for (int i = 0; i < dim; ++i) d = std::max(d, std::fabs(a.x[i] - b.x[i]));
            return d;
        }
        case SpaceKind::Symbolic: {
            const std::size_t i = first_difference(a.sym, b.sym);
            if (i >= a.sym.size() && i >= b.sym.size()) return 0.0;
            return std::ldexp(1.0, -static_cast<int>(i)); // 2^{-i}
        }
    }
    return 0.0;
}

bool StateSpace::contains(const Point& p) const {
    const double lo = -kPointTol, hi = 1.0 + kPointTol;
    switch (kind) {
        case SpaceKind::Circle:
            return p.x.size() == 1 && p.x[0] >= lo && p.x[0] < 1.0 + kPointTol;
        case SpaceKind::Interval:
            return p.x.size() == 1 && p.x[0] >= lo && p.x[0] <= hi;
        case SpaceKind::Torus: {
            if (static_cast<int>(p.x.size()) != dim) return false;
            for (double v : p.x)
                if (v < lo || v > hi) return false;
            return true;
        }
        case SpaceKind::Symbolic: {
            if (static_cast<int>(p.sym.size()) != string_length) return false;
            for (char c : p.sym)
                if (!symbol_valid(c)) return false;
            return true;
        }
    }
    return false;
}

bool StateSpace::symbol_valid(char c) const {
    const int v = symbol_value(c);
    return v >= 0 && v < alphabet;
}

Point StateSpace::point_from_scalar(double v) const {
    if (kind != SpaceKind::Circle && kind != SpaceKind::Interval)
        throw ValidationError("scalar point literal valid only on circle/interval spaces");
    Point p;
    if (kind == SpaceKind::Circle) v -= std::floor(v); // reduce into [0,1)
    p.x.push_back(v);
    if (!contains(p)) throw ValidationError("point outside the state space");
    return p;
}

Point StateSpace::point_from_coords(std::vector<double> v) const {
    Point p;
    p.x = std::move(v);
    if (!contains(p)) throw ValidationError("point outside the state space");
    return p;
}

Point StateSpace::point_from_symbols(const std::string& s) const {
    if (kind != SpaceKind::Symbolic)
        throw ValidationError("symbol string literal valid only on symbolic spaces");
    if (static_cast<int>(s.size()) > string_length)
        throw ValidationError("symbol string longer than configured string_length");
    Point p;
    p.sym = s;
    p.sym.resize(string_length, fill);
    if (!contains(p)) throw ValidationError("symbol string contains invalid symbols");
    return p;
}

std::string StateSpace::describe() const {
    switch (kind) {
        case SpaceKind::Circle: return "circle";
        case SpaceKind::Interval: return "interval";
        case SpaceKind::Torus: return "torus dim=" + std::to_string(dim);
        case SpaceKind::Symbolic:
            return "symbolic alphabet=" + std::to_string(alphabet) +
                   " length=" + std::to_string(string_length);
    }
    return "?";
}

} // namespace naifs
