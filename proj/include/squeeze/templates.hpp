#pragma once

// Layer stacks for the two device families: barrier followed by a well, and
// the three-layer transistor. The powers select which zero-thickness limit is
// approached when the structure is squeezed.

#include "squeeze/potential.hpp"
#include "squeeze/resonance.hpp"

namespace squeeze {

// Barrier powers (1,1) then well (2,1): resonant delta. Both (2,1): delta-prime family.
inline structure_spec barrier_well_structure(const barrier_well_params& p, double drive,
                                             two_layer_mode mode = two_layer_mode::RESONANT_DELTA) {
    const double mu1 = mode == two_layer_mode::RESONANT_DELTA ? 1.0 : 2.0;
    structure_spec s;
    s.layers = {{p.a1, -drive, p.d1, mu1, 1.0}, {p.a2, p.b2, p.d2, 2.0, 1.0}};
    return s;
}

enum class transistor_model { DELTA, DELTA_PRIME };

inline structure_spec transistor_structure(const transistor_params& p, double v_eb,
                                           transistor_model model = transistor_model::DELTA) {
    const double mu = model == transistor_model::DELTA ? 1.0 : 2.0;
    structure_spec s;
    s.layers = {{p.a1, -v_eb, p.d1, mu, 1.0}, {0.0, 0.0, p.d2, 2.0, 0.0}, {p.a3, -p.v_cb, p.d3, mu, 1.0}};
    return s;
}

} // namespace squeeze
