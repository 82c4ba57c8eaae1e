#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace darboux {

// Diagonal inner-product signature of the ambient 3-space.
// Euclidean (+,+,+) or Lorentz (+,-,-); nothing else is constructible.
class Signature {
  public:
    static Signature euclidean() { return Signature{{1, 1, 1}}; }
    static Signature lorentz() { return Signature{{1, -1, -1}}; }

    int diag(int i) const { return d_[static_cast<std::size_t>(i)]; }
    bool is_euclidean() const { return d_[1] == 1; }

  private:
    explicit Signature(std::array<int, 3> d) : d_(d) {}
    std::array<int, 3> d_;
};

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
    friend Vec3 operator*(const Vec3& v, double s) { return s * v; }
    friend Vec3 operator/(const Vec3& v, double s) { return (1.0 / s) * v; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }

    // Signature-weighted inner product <a,b> = sum s_i a_i b_i.
    double dot(const Vec3& o, const Signature& s) const {
        return s.diag(0) * x * o.x + s.diag(1) * y * o.y + s.diag(2) * z * o.z;
    }

    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }

    double norm() const { return std::sqrt(dot(*this)); }
    double max_abs() const { return std::max({std::abs(x), std::abs(y), std::abs(z)}); }

    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
};

struct Mat3 {
    // Row-major.
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }

    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }

    static Mat3 diag(double a, double b, double c) {
        Mat3 r;
        r(0, 0) = a; r(1, 1) = b; r(2, 2) = c;
        return r;
    }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        for (int i = 0; i < 3; ++i) {
            r(i, 0) = c0[i];
            r(i, 1) = c1[i];
            r(i, 2) = c2[i];
        }
        return r;
    }

    // Rotation by `angle` about unit axis (Rodrigues).
    static Mat3 rotation(const Vec3& axis, double angle) {
        const Vec3 n = axis.normalized();
        const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        Mat3 r;
        r(0, 0) = t * n.x * n.x + c;
        r(0, 1) = t * n.x * n.y - s * n.z;
        r(0, 2) = t * n.x * n.z + s * n.y;
        r(1, 0) = t * n.x * n.y + s * n.z;
        r(1, 1) = t * n.y * n.y + c;
        r(1, 2) = t * n.y * n.z - s * n.x;
        r(2, 0) = t * n.x * n.z - s * n.y;
        r(2, 1) = t * n.y * n.z + s * n.x;
        r(2, 2) = t * n.z * n.z + c;
        return r;
    }

    Vec3 column(int j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }
    Vec3 row(int i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }

    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Vec3 operator*(const Vec3& v) const {
        return {row(0).dot(v), row(1).dot(v), row(2).dot(v)};
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.m[k] = m[k] - o.m[k];
        return r;
    }

    double det() const {
        const auto& a = *this;
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }

    double max_abs() const {
        double r = 0;
        for (double v : m) r = std::max(r, std::abs(v));
        return r;
    }
};

// max |g^T eta g - eta| over entries, with eta the signature matrix.
inline double signature_orthogonality_defect(const Mat3& g, const Signature& s) {
    const Mat3 eta = Mat3::diag(s.diag(0), s.diag(1), s.diag(2));
    return (g.transpose() * eta * g - eta).max_abs();
}

// Proper orthochronous Lorentz-group membership defect:
// max of the orthogonality defect, |det-1| and (for orientation) max(0, 1-g11).
inline double lorentz_membership_defect(const Mat3& g) {
    double d = signature_orthogonality_defect(g, Signature::lorentz());
    d = std::max(d, std::abs(g.det() - 1.0));
    d = std::max(d, std::max(0.0, 1.0 - g(0, 0)));
    return d;
}

}  // namespace darboux
