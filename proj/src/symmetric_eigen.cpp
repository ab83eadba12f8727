#include "symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mixcert/errors.hpp"

namespace mixcert::detail {

namespace {

// Householder reduction to tridiagonal form (after the EISPACK tred2 routine).
// On exit d holds the diagonal, e the subdiagonal in e[1..n-1], and v the
// accumulated orthogonal transform.
void tridiagonalize(std::vector<double>& v, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e) {
    auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };
    for (std::size_t j = 0; j < n; ++j)
        d[j] = V(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0, h = 0.0;
        for (std::size_t k = 0; k < i; ++k)
            scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
                V(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0)
                g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j)
                e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                V(j, i) = f;
                g = e[j] + V(j, j) * f;
                for (std::size_t k = j + 1; k + 1 <= i; ++k) {
                    g += V(k, j) * d[k];
                    e[k] += V(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j)
                e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k + 1 <= i; ++k)
                    V(k, j) -= (f * e[k] + g * d[k]);
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        V(n - 1, i) = V(i, i);
        V(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k)
                d[k] = V(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k)
                    g += V(k, i + 1) * V(k, j);
                for (std::size_t k = 0; k <= i; ++k)
                    V(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k)
            V(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
        V(n - 1, j) = 0.0;
    }
    V(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit QL with Wilkinson-style shifts (after the EISPACK tql2 routine).
// e[1..n-1] is the subdiagonal on entry. If `v` is non-empty the rotations
// are accumulated into it.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>& v,
                 std::size_t n) {
    const bool vectors = !v.empty();
    for (std::size_t i = 1; i < n; ++i)
        e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0, tst1 = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_sweeps = 100;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1)
                break;
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > max_sweeps)
                    throw ConvergenceFailure(static_cast<std::size_t>(iter), std::abs(e[l]));
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0)
                    r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i)
                    d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t ii = m; ii-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[ii];
                    h = c * p;
                    r = std::hypot(p, e[ii]);
                    e[ii + 1] = s * r;
                    s = e[ii] / r;
                    c = p / r;
                    p = c * d[ii] - s * g;
                    d[ii + 1] = h + s * (c * g + s * d[ii]);
                    if (vectors) {
                        for (std::size_t k = 0; k < n; ++k) {
                            double* row = v.data() + k * n;
                            h = row[ii + 1];
                            row[ii + 1] = s * row[ii] + c * h;
                            row[ii] = c * row[ii] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

EigenDecomposition sorted(std::vector<double> d, std::vector<double> v, std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    EigenDecomposition out;
    out.n = n;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.values[k] = d[order[k]];
    if (!v.empty()) {
        out.vectors.resize(n * n);
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t k = 0; k < n; ++k)
                out.vectors[row * n + k] = v[row * n + order[k]];
    }
    return out;
}

} // namespace

EigenDecomposition symmetric_eigen(std::vector<double> matrix, std::size_t n, bool want_vectors) {
    if (n == 0)
        return {};
    // tridiagonalize reads the lower triangle row by row; mirror it.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            matrix[i * n + j] = matrix[j * n + i];
    std::vector<double> d(n), e(n);
    tridiagonalize(matrix, n, d, e);
    if (!want_vectors)
        matrix.clear();
    ql_implicit(d, e, matrix, n);
    return sorted(std::move(d), std::move(matrix), n);
}

EigenDecomposition tridiagonal_eigen(std::vector<double> diag, std::vector<double> offdiag,
                                     bool want_vectors) {
    const std::size_t m = diag.size();
    if (m == 0)
        return {};
    std::vector<double> e(m, 0.0);
    for (std::size_t i = 1; i < m; ++i)
        e[i] = offdiag[i - 1];
    std::vector<double> v;
    if (want_vectors) {
        v.assign(m * m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            v[i * m + i] = 1.0;
    }
    ql_implicit(diag, e, v, m);
    return sorted(std::move(diag), std::move(v), m);
}

} // namespace mixcert::detail
