#pragma once

// Reflection/transmission amplitudes and probabilities from a total transfer
// matrix and the lead potentials on either side.

#include <array>
#include <cmath>
#include <complex>

#include "squeeze/errors.hpp"
#include "squeeze/transfer_matrix.hpp"

namespace squeeze {

using complex = std::complex<double>;

struct scattering_result {
    complex r_left, t_left, r_right, t_right;
    double refl_prob;
    double trans_prob;
    double p;
    double q;
    complex d_denom;
    double k_left;
    double k_right;
};

inline scattering_result scatter(const transfer_matrix& m, double v_left, double v_right, double energy) {
    if (!(energy > v_left)) throw evanescent_lead_error("left");
    if (!(energy > v_right)) throw evanescent_lead_error("right");
    scattering_result r{};
    r.k_left = std::sqrt(energy - v_left);
    r.k_right = std::sqrt(energy - v_right);
    const double ratio = r.k_left / r.k_right;
    r.p = m.l11 - ratio * m.l22;
    r.q = r.k_left * m.l12 + m.l21 / r.k_right;
    r.d_denom = complex(m.l11 + ratio * m.l22, -(r.k_left * m.l12 - m.l21 / r.k_right));
    r.r_left = -complex(r.p, r.q) / r.d_denom;
    r.t_left = 2 * ratio / r.d_denom;
    r.r_right = complex(r.p, -r.q) / r.d_denom;
    r.t_right = 2.0 / r.d_denom;
    const double w = 4 * ratio;
    const double pq = r.p * r.p + r.q * r.q;
    r.trans_prob = w / (w + pq);
    r.refl_prob = pq / (w + pq);
    return r;
}

using s_matrix_t = std::array<std::array<complex, 2>, 2>;

inline s_matrix_t s_matrix(const scattering_result& r) {
    const double f = std::sqrt(r.k_left / r.k_right);
    return {{{r.r_left, f * r.t_right}, {r.t_left / f, r.r_right}}};
}

// max |(S^dagger S - I)_{ij}|
inline double unitarity_defect(const s_matrix_t& s) {
    double worst = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            complex acc = std::conj(s[0][i]) * s[0][j] + std::conj(s[1][i]) * s[1][j];
            if (i == j) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    return worst;
}

} // namespace squeeze
