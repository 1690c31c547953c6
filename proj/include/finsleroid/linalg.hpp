#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace finsleroid {

template <std::size_t N> using Vec = std::array<double, N>;
template <std::size_t N> using Mat = std::array<Vec<N>, N>;
template <std::size_t N> using Tensor3 = std::array<Mat<N>, N>;
template <std::size_t N> using Tensor4 = std::array<Tensor3<N>, N>;

using Vec3 = Vec<3>;
using Vec4 = Vec<4>;
using Mat3 = Mat<3>;
using Mat4 = Mat<4>;

template <std::size_t N> double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

template <std::size_t N> Vec<N> mat_vec(const Mat<N>& m, const Vec<N>& v) {
    Vec<N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = dot(m[i], v);
    return r;
}

template <std::size_t N> double quad(const Mat<N>& m, const Vec<N>& a, const Vec<N>& b) {
    return dot(a, mat_vec(m, b));
}

template <std::size_t N> Mat<N> outer(const Vec<N>& a, const Vec<N>& b) {
    Mat<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r[i][j] = a[i] * b[j];
    return r;
}

template <std::size_t N> Mat<N> mat_mul(const Mat<N>& a, const Mat<N>& b) {
    Mat<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t j = 0; j < N; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <std::size_t N> Mat<N> identity() {
    Mat<N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i][i] = 1.0;
    return r;
}

template <std::size_t N> double max_abs(const Mat<N>& m) {
    double s = 0.0;
    for (const auto& row : m)
        for (double x : row) s = std::fmax(s, std::fabs(x));
    return s;
}

template <std::size_t N> double max_abs(const Tensor3<N>& t) {
    double s = 0.0;
    for (const auto& m : t) s = std::fmax(s, max_abs<N>(m));
    return s;
}

template <std::size_t N> double max_abs(const Tensor4<N>& t) {
    double s = 0.0;
    for (const auto& m : t) s = std::fmax(s, max_abs<N>(m));
    return s;
}

template <std::size_t N> double max_abs_diff(const Mat<N>& a, const Mat<N>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) s = std::fmax(s, std::fabs(a[i][j] - b[i][j]));
    return s;
}

template <std::size_t N> double max_abs_diff(const Tensor3<N>& a, const Tensor3<N>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s = std::fmax(s, max_abs_diff<N>(a[i], b[i]));
    return s;
}

template <std::size_t N> double max_abs_diff(const Tensor4<N>& a, const Tensor4<N>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s = std::fmax(s, max_abs_diff<N>(a[i], b[i]));
    return s;
}

// Dense helpers backed by Eigen (defined in linalg.cpp for N = 3, 4).
template <std::size_t N> Mat<N> inverse(const Mat<N>& m);
template <std::size_t N> double determinant(const Mat<N>& m);
// Eigenvalues of a symmetric matrix in ascending order.
template <std::size_t N> Vec<N> symmetric_eigenvalues(const Mat<N>& m);

}  // namespace finsleroid
