#include "finsleroid/linalg.hpp"

#include <Eigen/Dense>

namespace finsleroid {

namespace {

template <std::size_t N> Eigen::Matrix<double, N, N> to_eigen(const Mat<N>& m) {
    Eigen::Matrix<double, N, N> e;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) e(i, j) = m[i][j];
    return e;
}

}  // namespace

template <std::size_t N> Mat<N> inverse(const Mat<N>& m) {
    const Eigen::Matrix<double, N, N> inv = to_eigen<N>(m).fullPivLu().inverse();
    Mat<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r[i][j] = inv(i, j);
    return r;
}

template <std::size_t N> double determinant(const Mat<N>& m) {
    return to_eigen<N>(m).fullPivLu().determinant();
}

template <std::size_t N> Vec<N> symmetric_eigenvalues(const Mat<N>& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> solver(to_eigen<N>(m),
                                                                      Eigen::EigenvaluesOnly);
    Vec<N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = solver.eigenvalues()(i);
    return r;
}

template Mat<3> inverse<3>(const Mat<3>&);
template Mat<4> inverse<4>(const Mat<4>&);
template double determinant<3>(const Mat<3>&);
template double determinant<4>(const Mat<4>&);
template Vec<3> symmetric_eigenvalues<3>(const Mat<3>&);
template Vec<4> symmetric_eigenvalues<4>(const Mat<4>&);

}  // namespace finsleroid
