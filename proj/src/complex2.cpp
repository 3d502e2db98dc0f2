#include "vortexsim/complex2.hpp"

#include <algorithm>

namespace vortexsim {

double wrap_angle(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    // fmod of a tiny negative can land exactly on period after the correction
    if (r >= period) r -= period;
    return r;
}

double Mat2c::max_abs_diff(const Mat2c& o) const {
    return std::max({std::abs(m00 - o.m00), std::abs(m01 - o.m01), std::abs(m10 - o.m10),
                     std::abs(m11 - o.m11)});
}

bool Mat2c::is_unitary(double tol) const {
    const Mat2c gram = *this * adjoint();
    return gram.max_abs_diff(identity()) <= tol;
}

double global_phase_distance(const Mat2c& a, const Mat2c& b) {
    // Align the phase on a's largest entry; if the matrices match up to a
    // global phase, any nonzero entry determines it.
    const cplx ae[4] = {a.m00, a.m01, a.m10, a.m11};
    const cplx be[4] = {b.m00, b.m01, b.m10, b.m11};
    int ref = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(ae[i]) > std::abs(ae[ref])) ref = i;
    cplx phase{1.0, 0.0};
    if (std::abs(ae[ref]) > 0.0 && std::abs(be[ref]) > 0.0) {
        phase = be[ref] / ae[ref];
        phase /= std::abs(phase);
    }
    return (a * phase).max_abs_diff(b);
}

}  // namespace vortexsim
