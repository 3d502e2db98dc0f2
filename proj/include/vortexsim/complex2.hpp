#pragma once

#include <cmath>
#include <complex>

namespace vortexsim {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Reduce x into [0, period).
double wrap_angle(double x, double period);

// Complex amplitude pair (c1, c2).
struct Vec2c {
    cplx c1{};
    cplx c2{};

    double norm_sq() const { return std::norm(c1) + std::norm(c2); }
    double norm() const { return std::sqrt(norm_sq()); }
};

inline Vec2c operator*(const cplx& s, const Vec2c& v) { return {s * v.c1, s * v.c2}; }

// <x|y>, conjugation on the left slot.
inline cplx inner(const Vec2c& x, const Vec2c& y) {
    return std::conj(x.c1) * y.c1 + std::conj(x.c2) * y.c2;
}

// Dense 2x2 complex matrix, row major.
struct Mat2c {
    cplx m00{}, m01{}, m10{}, m11{};

    static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2c adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }
    cplx det() const { return m00 * m11 - m01 * m10; }
    cplx permanent() const { return m00 * m11 + m01 * m10; }

    Vec2c operator*(const Vec2c& v) const {
        return {m00 * v.c1 + m01 * v.c2, m10 * v.c1 + m11 * v.c2};
    }
    Mat2c operator*(const Mat2c& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    Mat2c operator*(const cplx& s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }

    double max_abs_diff(const Mat2c& o) const;
    bool is_unitary(double tol) const;
};

// min over unit phases e^{it} of the max entrywise |a e^{it} - b|.
double global_phase_distance(const Mat2c& a, const Mat2c& b);

}  // namespace vortexsim
