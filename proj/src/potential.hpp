#pragma once

#include <string>
#include <vector>

#include "space.hpp"
#include "system.hpp"

namespace naifs {

enum class PotentialKind { Constant, Affine, FirstSymbol, Grid };

// Continuous real function on the state space together with a modulus of
// continuity bound: modulus(delta) >= sup{ |phi(x)-phi(y)| : d(x,y) < delta }.
//
//   constant      phi = value everywhere (modulus 0)
//   affine        phi(x) = offset + sum_i weights[i] * x_i  (interval/torus only;
//                 on the circle the wraparound makes this discontinuous)
//   first-symbol  phi(x) = table[x_0] on symbolic spaces
//   grid          multilinear interpolation of grid_values on [0,1]^D
//                 (on the circle the first and last node must agree)
struct Potential {
    PotentialKind kind = PotentialKind::Constant;
    double value = 0.0;
    std::vector<double> weights;
    double offset = 0.0;
    std::vector<double> table;
    std::vector<double> grid_values;
    std::vector<int> grid_shape; // nodes per dimension

    double eval(const StateSpace& space, const Point& p) const;
    double modulus(const StateSpace& space, double delta) const;
    double sup(const StateSpace& space) const;
    double inf(const StateSpace& space) const;

    void validate(const StateSpace& space, std::vector<std::string>& errors) const;

    static Potential constant(double c) {
        Potential p;
        p.kind = PotentialKind::Constant;
        p.value = c;
        return p;
    }
    static Potential first_symbol(std::vector<double> t) {
        Potential p;
        p.kind = PotentialKind::FirstSymbol;
        p.table = std::move(t);
        return p;
    }
    static Potential affine(std::vector<double> w, double off) {
        Potential p;
        p.kind = PotentialKind::Affine;
        p.weights = std::move(w);
        p.offset = off;
        return p;
    }
};

// Samples random pairs and checks |phi(x)-phi(y)| <= modulus(d(x,y)*(1+1e-9))
// plus monotonicity and decay of the modulus on a shrinking grid.
void validate_potential(const NaifsSystem& sys, const Potential& phi,
                        std::vector<std::string>& errors, std::uint64_t seed = 0);

} // namespace naifs
