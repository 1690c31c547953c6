#pragma once

#include <cmath>
#include <cstddef>

#include "finsleroid/linalg.hpp"

namespace finsleroid {

// Second-order forward-mode number: value, gradient and Hessian in N variables.
// Every operation is exact to second order, so a pipeline built from these
// carries exact first and second partials (up to roundoff).
template <std::size_t N> struct Jet {
    double v = 0.0;
    Vec<N> g{};
    Mat<N> h{};

    Jet() = default;
    Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly

    static Jet variable(double value, std::size_t k) {
        Jet x(value);
        x.g[k] = 1.0;
        return x;
    }
};

// f(x) for a scalar function with known f, f', f'' at x.v
template <std::size_t N> Jet<N> chain(const Jet<N>& x, double f0, double f1, double f2) {
    Jet<N> r(f0);
    for (std::size_t i = 0; i < N; ++i) {
        r.g[i] = f1 * x.g[i];
        for (std::size_t j = 0; j < N; ++j) r.h[i][j] = f1 * x.h[i][j] + f2 * x.g[i] * x.g[j];
    }
    return r;
}

template <std::size_t N> Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r(a.v + b.v);
    for (std::size_t i = 0; i < N; ++i) {
        r.g[i] = a.g[i] + b.g[i];
        for (std::size_t j = 0; j < N; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
    }
    return r;
}

template <std::size_t N> Jet<N> operator-(const Jet<N>& a) {
    Jet<N> r(-a.v);
    for (std::size_t i = 0; i < N; ++i) {
        r.g[i] = -a.g[i];
        for (std::size_t j = 0; j < N; ++j) r.h[i][j] = -a.h[i][j];
    }
    return r;
}

template <std::size_t N> Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) { return a + (-b); }

template <std::size_t N> Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r(a.v * b.v);
    for (std::size_t i = 0; i < N; ++i) {
        r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (std::size_t j = 0; j < N; ++j)
            r.h[i][j] = a.h[i][j] * b.v + a.v * b.h[i][j] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
    }
    return r;
}

template <std::size_t N> Jet<N> operator*(double s, const Jet<N>& a) {
    Jet<N> r(s * a.v);
    for (std::size_t i = 0; i < N; ++i) {
        r.g[i] = s * a.g[i];
        for (std::size_t j = 0; j < N; ++j) r.h[i][j] = s * a.h[i][j];
    }
    return r;
}

template <std::size_t N> Jet<N> operator*(const Jet<N>& a, double s) { return s * a; }

template <std::size_t N> Jet<N> reciprocal(const Jet<N>& a) {
    const double inv = 1.0 / a.v;
    return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

template <std::size_t N> Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
    return a * reciprocal(b);
}

template <std::size_t N> Jet<N> operator/(const Jet<N>& a, double s) { return (1.0 / s) * a; }

template <std::size_t N> Jet<N> sqrt(const Jet<N>& a) {
    const double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

template <std::size_t N> Jet<N> log(const Jet<N>& a) {
    return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

template <std::size_t N> Jet<N> exp(const Jet<N>& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}

template <std::size_t N> Jet<N> sin(const Jet<N>& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, s, c, -s);
}

template <std::size_t N> Jet<N> cos(const Jet<N>& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, c, -s, -c);
}

// atan2(y, x) with the usual branch; derivatives from d(atan2) = (x dy - y dx)/(x^2 + y^2).
template <std::size_t N> Jet<N> atan2(const Jet<N>& y, const Jet<N>& x) {
    const double rho2 = x.v * x.v + y.v * y.v;
    Jet<N> r(std::atan2(y.v, x.v));
    Vec<N> dr2{};
    for (std::size_t i = 0; i < N; ++i) {
        r.g[i] = (x.v * y.g[i] - y.v * x.g[i]) / rho2;
        dr2[i] = 2.0 * (x.v * x.g[i] + y.v * y.g[i]);
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const double num = x.g[j] * y.g[i] + x.v * y.h[i][j] - y.g[j] * x.g[i] - y.v * x.h[i][j];
            r.h[i][j] = num / rho2 - r.g[i] * dr2[j] / rho2;
        }
    // symmetrize away the roundoff asymmetry of the quotient rule
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) r.h[i][j] = r.h[j][i] = 0.5 * (r.h[i][j] + r.h[j][i]);
    return r;
}

// Seed N variables at point x.
template <std::size_t N> std::array<Jet<N>, N> seed(const Vec<N>& x) {
    std::array<Jet<N>, N> out;
    for (std::size_t k = 0; k < N; ++k) out[k] = Jet<N>::variable(x[k], k);
    return out;
}

// Evaluate a pipeline written against Jet<N> arguments at x.
template <std::size_t N, class F> auto jet_eval(F&& f, const Vec<N>& x) { return f(seed<N>(x)); }

}  // namespace finsleroid
