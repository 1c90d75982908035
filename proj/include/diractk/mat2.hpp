#pragma once

#include <cmath>
#include <complex>

namespace dtk {

using cplx = std::complex<double>;

// 2-component complex vector, the value type of Dirac solutions and formal powers.
struct Vec2 {
    cplx v1{0.0, 0.0};
    cplx v2{0.0, 0.0};

    Vec2() = default;
    Vec2(cplx a, cplx b) : v1(a), v2(b) {}

    Vec2& operator+=(const Vec2& o) {
        v1 += o.v1;
        v2 += o.v2;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        v1 -= o.v1;
        v2 -= o.v2;
        return *this;
    }
    Vec2& operator*=(cplx s) {
        v1 *= s;
        v2 *= s;
        return *this;
    }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(cplx s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, cplx s) { return a *= s; }
inline Vec2 operator*(double s, Vec2 a) { return a *= cplx(s, 0.0); }
inline Vec2 operator*(Vec2 a, double s) { return a *= cplx(s, 0.0); }
inline Vec2 operator-(const Vec2& a) { return {-a.v1, -a.v2}; }

inline double norm2(const Vec2& a) { return std::sqrt(std::norm(a.v1) + std::norm(a.v2)); }

// 2x2 complex matrix in row-major entry order.
struct Mat2 {
    cplx a11{0.0, 0.0}, a12{0.0, 0.0};
    cplx a21{0.0, 0.0}, a22{0.0, 0.0};

    Mat2() = default;
    Mat2(cplx m11, cplx m12, cplx m21, cplx m22) : a11(m11), a12(m12), a21(m21), a22(m22) {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 from_columns(const Vec2& c1, const Vec2& c2) {
        return {c1.v1, c2.v1, c1.v2, c2.v2};
    }

    Vec2 col(int j) const { return j == 0 ? Vec2{a11, a21} : Vec2{a12, a22}; }

    Mat2& operator+=(const Mat2& o) {
        a11 += o.a11;
        a12 += o.a12;
        a21 += o.a21;
        a22 += o.a22;
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        a11 -= o.a11;
        a12 -= o.a12;
        a21 -= o.a21;
        a22 -= o.a22;
        return *this;
    }
    Mat2& operator*=(cplx s) {
        a11 *= s;
        a12 *= s;
        a21 *= s;
        a22 *= s;
        return *this;
    }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(cplx s, Mat2 a) { return a *= s; }
inline Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
inline Mat2 operator*(double s, Mat2 a) { return a *= cplx(s, 0.0); }
inline Mat2 operator*(Mat2 a, double s) { return a *= cplx(s, 0.0); }
inline Mat2 operator-(const Mat2& a) { return {-a.a11, -a.a12, -a.a21, -a.a22}; }

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline Vec2 operator*(const Mat2& a, const Vec2& y) {
    return {a.a11 * y.v1 + a.a12 * y.v2, a.a21 * y.v1 + a.a22 * y.v2};
}

inline Mat2 conj_transpose(const Mat2& a) {
    return {std::conj(a.a11), std::conj(a.a21), std::conj(a.a12), std::conj(a.a22)};
}

inline cplx det(const Mat2& a) { return a.a11 * a.a22 - a.a12 * a.a21; }

inline double frob_norm(const Mat2& a) {
    return std::sqrt(std::norm(a.a11) + std::norm(a.a12) + std::norm(a.a21) + std::norm(a.a22));
}

// The constant matrix B = [[0,1],[-1,0]]; satisfies B^2 = -I.
inline Mat2 matB() { return {0.0, 1.0, -1.0, 0.0}; }

enum class ProjSign { Plus, Minus };

// proj(A,-) = (A - BAB)/2 annihilates matrices anticommuting with B (the
// subspace containing every potential Q); proj(A,+) = (A + BAB)/2 annihilates
// the commuting ones. Their images swap roles: proj(A,+) anticommutes with B,
// proj(A,-) commutes.
inline Mat2 proj(const Mat2& a, ProjSign sign) {
    const Mat2 bab = matB() * a * matB();
    return sign == ProjSign::Plus ? 0.5 * (a + bab) : 0.5 * (a - bab);
}

} // namespace dtk
