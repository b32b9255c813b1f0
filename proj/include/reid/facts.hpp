#pragma once

// Structural facts used as certificate leaves. Each is a bounded, exact
// computation that the verifier re-runs.

#include <string>
#include <vector>

#include "reid/catalog.hpp"
#include "reid/freenilp.hpp"

namespace reid {

/// Center of π1(K) x Z^n inside a box and the quotient map onto Z⋊Z2.
struct CenterFact {
    std::vector<std::string> center;  // generators
    bool center_ok = false;           // box center = <y^2> x Z^n
    bool quotient_ok = false;         // kernel of x -> t, y -> s equals the center
};
CenterFact center_klein_times_zn(unsigned n, std::int64_t box = 6);

/// Every dihedral automorphism with |n| <= n_bound has infinitely many
/// classes, by the fixed-point route (sign +1) or the slice rule (sign -1).
struct DihedralAllFact {
    std::size_t checked = 0;
    bool all_infinite = false;
};
DihedralAllFact reid_dihedral_all(std::int64_t n_bound, std::int64_t slice_bound);

/// e maps each layer-n Lyndon bracket into Gamma_n.
bool gamma_invariant(const EndoSpec& e, unsigned n);
/// [Gamma_n, F] lies in Gamma_{n+1}, checked on basis brackets and generators.
bool layer_central(unsigned rank, unsigned n);
/// `layer` (1-based) is the last layer of t and no bracket leaves it.
bool tower_layer_central(const CentralTower& t, std::size_t layer);

}  // namespace reid
