#pragma once

#include <string>
#include <vector>

namespace naifs {

// A point carries either numeric coordinates (circle, interval, torus) or a
// fixed-length symbol string (symbolic spaces). The active field is decided
// by the owning StateSpace kind.
struct Point {
    std::vector<double> x;
    std::string sym;
};

enum class SpaceKind { Circle, Interval, Torus, Symbolic };

// Compact base spaces:
//   circle    R/Z with wraparound distance, diameter 1/2
//   interval  [0,1] with |x-y|, diameter 1
//   torus     [0,1]^D with the sup metric (no wraparound), diameter 1
//   symbolic  A^N over k symbols, truncated to length L,
//             d(x,y) = 2^{-first differing index}, diameter 1
struct StateSpace {
    SpaceKind kind = SpaceKind::Interval;
    int dim = 1;           // torus
    int alphabet = 2;      // symbolic
    int string_length = 0; // symbolic L; all stored strings have this length
    char fill = '0';       // symbol appended by the shift

    static constexpr double kPointTol = 1e-12;

    double diameter() const;
    double distance(const Point& a, const Point& b) const;
    bool contains(const Point& p) const;
    bool same_point(const Point& a, const Point& b) const {
        return distance(a, b) <= kPointTol;
    }

    Point point_from_scalar(double v) const;
    Point point_from_coords(std::vector<double> v) const;
    // Pads or validates a symbol string to length L.
    Point point_from_symbols(const std::string& s) const;

    bool symbol_valid(char c) const;
    std::string describe() const;
};

// Index of the first differing symbol, or a.size() when equal prefixes.
std::size_t first_difference(const std::string& a, const std::string& b);

// Symbol alphabet uses '0'..'9' then 'a'..'z'.
char symbol_char(int v);
int symbol_value(char c);

} // namespace naifs
