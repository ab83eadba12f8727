#include "mixcert/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mixcert/rng.hpp"
#include "symmetric_eigen.hpp"

namespace mixcert {

std::string_view to_string(SpectralMethod m) {
    return m == SpectralMethod::ExactDense ? "exact-dense" : "iterative";
}

void apply_walk_matrix(const RegularGraph& g, std::span<const double> x, std::span<double> y) {
    const double inv_d = 1.0 / static_cast<double>(g.degree());
    for (Vertex v = 0; v < g.order(); ++v) {
        double acc = 0.0;
        for (Vertex u : g.neighbors(v))
            acc += x[u];
        y[v] = acc * inv_d;
    }
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void remove_mean(std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(x.size());
    for (double& v : x)
        v -= mean;
}

void normalize(std::vector<double>& x) {
    const double s = norm(x);
    if (s > 0)
        for (double& v : x)
            v /= s;
}

double residual_of(const RegularGraph& g, std::span<const double> v, double value) {
    std::vector<double> pv(v.size());
    apply_walk_matrix(g, v, pv);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = pv[i] - value * v[i];
        s += r * r;
    }
    return std::sqrt(s);
}

std::vector<double> dense_walk_matrix(const RegularGraph& g) {
    const std::size_t n = g.order();
    std::vector<double> p(n * n, 0.0);
    const double inv_d = 1.0 / static_cast<double>(g.degree());
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v : g.neighbors(u))
            p[static_cast<std::size_t>(u) * n + v] = inv_d;
    return p;
}

ExtremeEigenpairs dense_pairs(const RegularGraph& g, const SpectralOptions& options) {
    const std::size_t n = g.order();
    if (n > options.dense_cap)
        throw SizeCap(n, options.dense_cap);
    const auto eig = detail::symmetric_eigen(dense_walk_matrix(g), n, true);

    auto column = [&](std::size_t k) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = eig.vector_entry(i, k);
        // The top eigenspace contains 1; for disconnected graphs it is larger,
        // so an eigenvector of 1 may have a uniform component.
        remove_mean(v);
        normalize(v);
        return v;
    };

    ExtremeEigenpairs out;
    out.summary.method = SpectralMethod::ExactDense;
    out.summary.lambda2 = eig.values[n - 2];
    out.summary.lambda_n = eig.values[0];
    out.second = column(n - 2);
    out.smallest = column(0);
    return out;
}

// Lanczos with full reorthogonalisation on the complement of the uniform vector.
ExtremeEigenpairs lanczos_pairs(const RegularGraph& g, const SpectralOptions& options) {
    const std::size_t n = g.order();
    const std::size_t dim_cap = std::min<std::size_t>(
        n - 1, std::max<std::size_t>(60, std::min<std::size_t>(300, 20'000'000 / n)));

    Rng rng(derive_seed(options.seed, 0x5eed));
    std::vector<double> start(n);
    for (double& v : start)
        v = rng.uniform() - 0.5;

    std::size_t matvecs = 0;
    double last_residual = 1.0;
    std::vector<double> w(n);

    for (;;) {
        remove_mean(start);
        normalize(start);
        std::vector<std::vector<double>> basis{start};
        std::vector<double> alpha, beta;

        for (std::size_t j = 0; j < dim_cap; ++j) {
            apply_walk_matrix(g, basis[j], w);
            ++matvecs;
            const double a = dot(basis[j], w);
            alpha.push_back(a);
            for (std::size_t i = 0; i < n; ++i)
                w[i] -= a * basis[j][i] + (j > 0 ? beta[j - 1] * basis[j - 1][i] : 0.0);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : basis) {
                    const double c = dot(q, w);
                    for (std::size_t i = 0; i < n; ++i)
                        w[i] -= c * q[i];
                }
                remove_mean(w);
            }
            const double b = norm(w);
            const std::size_t m = alpha.size();
            const bool exhausted = b < 1e-12 || m == n - 1;
            const bool last = exhausted || m == dim_cap;

            if (last || m % 10 == 0) {
                const auto t = detail::tridiagonal_eigen(
                    alpha, std::vector<double>(beta.begin(), beta.end()), true);
                const double est_low = std::abs(b * t.vector_entry(m - 1, 0));
                const double est_high = std::abs(b * t.vector_entry(m - 1, m - 1));
                if (last || std::max(est_low, est_high) < 0.1 * options.tolerance) {
                    auto ritz = [&](std::size_t k) {
                        std::vector<double> v(n, 0.0);
                        for (std::size_t r = 0; r < m; ++r) {
                            const double y = t.vector_entry(r, k);
                            for (std::size_t i = 0; i < n; ++i)
                                v[i] += y * basis[r][i];
                        }
                        remove_mean(v);
                        normalize(v);
                        return v;
                    };
                    ExtremeEigenpairs out;
                    out.summary.method = SpectralMethod::Iterative;
                    out.summary.lambda2 = t.values[m - 1];
                    out.summary.lambda_n = t.values[0];
                    out.second = ritz(m - 1);
                    out.smallest = ritz(0);
                    last_residual =
                        std::max(residual_of(g, out.second, out.summary.lambda2),
                                 residual_of(g, out.smallest, out.summary.lambda_n));
                    if (last_residual <= options.tolerance)
                        return out;
                    if (last) {
                        // Explicit restart from the current Ritz vectors.
                        for (std::size_t i = 0; i < n; ++i)
                            start[i] = out.second[i] + out.smallest[i];
                        break;
                    }
                }
            }
            if (matvecs >= options.max_iterations)
                throw ConvergenceFailure(matvecs, last_residual);
            beta.push_back(b);
            std::vector<double> next(n);
            for (std::size_t i = 0; i < n; ++i)
                next[i] = w[i] / b;
            basis.push_back(std::move(next));
        }
        if (matvecs >= options.max_iterations)
            throw ConvergenceFailure(matvecs, last_residual);
    }
}

void finish(const RegularGraph& g, ExtremeEigenpairs& pairs) {
    auto& s = pairs.summary;
    s.lambda2 = std::clamp(s.lambda2, -1.0, 1.0);
    s.lambda_n = std::clamp(s.lambda_n, -1.0, s.lambda2);
    s.lambda = std::max(s.lambda2, std::abs(s.lambda_n));
    s.residual = std::max(residual_of(g, pairs.second, s.lambda2),
                          residual_of(g, pairs.smallest, s.lambda_n));
}

} // namespace

ExtremeEigenpairs extreme_eigenpairs(const RegularGraph& g, SpectralMethod method,
                                     const SpectralOptions& options) {
    ExtremeEigenpairs pairs = method == SpectralMethod::ExactDense ? dense_pairs(g, options)
                                                                   : lanczos_pairs(g, options);
    finish(g, pairs);
    if (pairs.summary.residual > options.tolerance)
        throw ConvergenceFailure(0, pairs.summary.residual);
    return pairs;
}

SpectralSummary spectrum(const RegularGraph& g, SpectralMethod method,
                         const SpectralOptions& options) {
    return extreme_eigenpairs(g, method, options).summary;
}

std::vector<double> full_spectrum(const RegularGraph& g, const SpectralOptions& options) {
    const std::size_t n = g.order();
    if (n > options.dense_cap)
        throw SizeCap(n, options.dense_cap);
    auto values = detail::symmetric_eigen(dense_walk_matrix(g), n, false).values;
    std::reverse(values.begin(), values.end());
    return values;
}

// ---------------------------------------------------------------- cross-checks

EmlReport eml_check(const RegularGraph& g, double lambda, std::span<const SetPair> pairs,
                    double tolerance) {
    const double n = static_cast<double>(g.order());
    const double d = static_cast<double>(g.degree());
    EmlReport report;
    report.lambda = lambda;
    report.entries.reserve(pairs.size());
    report.min_margin = pairs.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (const auto& p : pairs) {
        const auto key = SurplusKey::make(p.est, p.s.size(), p.t.size(), g.order(), g.degree());
        EmlEntry e;
        e.lhs = static_cast<double>(std::llabs(key.numerator)) / n;
        e.rhs = lambda * d * std::sqrt(static_cast<double>(key.size_product));
        e.margin = e.rhs - e.lhs;
        report.min_margin = std::min(report.min_margin, e.margin);
        if (e.margin < -tolerance)
            ++report.violations;
        report.entries.push_back(e);
    }
    return report;
}

CheegerReport cheeger_check(const SpectralSummary& summary, double phi, PhiKind kind,
                            double tolerance) {
    CheegerReport r;
    const double gap = std::max(0.0, 1.0 - summary.lambda2);
    r.lower = gap / 2.0;
    r.upper = std::sqrt(2.0 * gap);
    r.phi = phi;
    r.lower_holds = phi >= r.lower - tolerance;
    r.upper_checked = kind == PhiKind::Exact;
    r.upper_holds = !r.upper_checked || phi <= r.upper + tolerance;
    return r;
}

double tanner_bound(double lambda, std::size_t s, std::size_t n) {
    if (s < 1 || s > n)
        throw SizeOutOfRange("Tanner bound needs 1 <= s <= n");
    const double l2 = lambda * lambda;
    const double frac = static_cast<double>(s) / static_cast<double>(n);
    return 1.0 / (frac * (1.0 - l2) + l2) - 1.0;
}

double alon_boppana_ref(std::size_t d) {
    if (d < 2)
        throw InvalidArgument("Alon-Boppana reference needs d >= 2");
    return 2.0 * std::sqrt(static_cast<double>(d - 1)) / static_cast<double>(d);
}

} // namespace mixcert
