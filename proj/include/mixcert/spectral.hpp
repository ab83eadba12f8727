#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mixcert/graph.hpp"

namespace mixcert {

enum class SpectralMethod { ExactDense, Iterative };

std::string_view to_string(SpectralMethod m);

struct SpectralOptions {
    std::size_t dense_cap = 4096;
    double tolerance = 1e-8;
    std::size_t max_iterations = 100000;
    // Seeds the deterministic start vector of the iterative solver.
    std::uint64_t seed = 0;
};

// Extreme non-trivial eigenvalues of P = A/d. lambda_1 = 1 (uniform vector) is implied.
struct SpectralSummary {
    double lambda2 = 0.0;
    double lambda_n = 0.0;
    double lambda = 0.0; // max(lambda2, |lambda_n|)
    SpectralMethod method = SpectralMethod::ExactDense;
    double residual = 0.0; // max ||Pv - lambda v|| over the two reported pairs
};

// Eigenpairs behind a summary, exposed for spectral rounding.
struct ExtremeEigenpairs {
    SpectralSummary summary;
    std::vector<double> second;   // unit eigenvector of lambda2, orthogonal to 1
    std::vector<double> smallest; // unit eigenvector of lambda_n, orthogonal to 1
};

SpectralSummary spectrum(const RegularGraph& g, SpectralMethod method,
                         const SpectralOptions& options = {});
ExtremeEigenpairs extreme_eigenpairs(const RegularGraph& g, SpectralMethod method,
                                     const SpectralOptions& options = {});

// Every eigenvalue of P in descending order (dense path; n <= options.dense_cap).
std::vector<double> full_spectrum(const RegularGraph& g, const SpectralOptions& options = {});

// y = P x
void apply_walk_matrix(const RegularGraph& g, std::span<const double> x, std::span<double> y);

// ---------------------------------------------------------------- cross-checks

struct EmlEntry {
    double lhs = 0.0;    // | |E(S,T)| - d|S||T|/n |
    double rhs = 0.0;    // lambda d sqrt(|S||T|)
    double margin = 0.0; // rhs - lhs
};

struct EmlReport {
    double lambda = 0.0;
    std::vector<EmlEntry> entries;
    double min_margin = 0.0;
    std::size_t violations = 0; // margins below -tolerance
};

// Expander mixing lemma on each pair. Any lambda >= the true spectral radius is admissible.
EmlReport eml_check(const RegularGraph& g, double lambda, std::span<const SetPair> pairs,
                    double tolerance = 1e-6);
inline EmlReport eml_check(const RegularGraph& g, const SpectralSummary& summary,
                           std::span<const SetPair> pairs, double tolerance = 1e-6) {
    return eml_check(g, summary.lambda, pairs, tolerance);
}

enum class PhiKind {
    Exact,      // phi is the exact conductance: both sides are checkable
    UpperBound, // phi comes from one cut: only the lower side is checkable
};

struct CheegerReport {
    double lower = 0.0; // (1 - lambda2) / 2
    double phi = 0.0;
    double upper = 0.0; // sqrt(2 (1 - lambda2))
    bool lower_holds = true;
    bool upper_checked = false;
    bool upper_holds = true;
    bool holds() const { return lower_holds && upper_holds; }
};

CheegerReport cheeger_check(const SpectralSummary& summary, double phi, PhiKind kind,
                            double tolerance = 1e-6);

// Lower bound on psi(S) valid for every S with |S| = s: ((s/n)(1-l^2) + l^2)^-1 - 1.
double tanner_bound(double lambda, std::size_t s, std::size_t n);
inline double tanner_bound(const SpectralSummary& summary, std::size_t s, std::size_t n) {
    return tanner_bound(summary.lambda, s, n);
}

// 2 sqrt(d-1) / d
double alon_boppana_ref(std::size_t d);

inline bool is_ramanujan(const SpectralSummary& summary, std::size_t d) {
    return summary.lambda <= alon_boppana_ref(d) + 1e-12;
}

} // namespace mixcert
