#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixcert/graph.hpp"

namespace mixcert {

// Probability vector over the vertices.
class Distribution {
public:
    Distribution() = default;
    // Validates nonnegativity and unit mass (tolerance 1e-12 relative to n).
    explicit Distribution(std::vector<double> probs);

    static Distribution point_mass(std::size_t n, Vertex v);
    static Distribution uniform(std::size_t n);
    // U_S = chi_S / |S|
    static Distribution uniform_on(const VertexSet& s);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const { return probs_; }

private:
    friend Distribution step(const RegularGraph& g, const Distribution& p);
    std::vector<double> probs_;
};

// One non-lazy walk step: (Pp)(v) = sum_{u ~ v} p(u) / d, renormalised.
Distribution step(const RegularGraph& g, const Distribution& p);

// (1/2) ||p - q||_1
double variation_distance(std::span<const double> p, std::span<const double> q);
inline double variation_distance(const Distribution& p, const Distribution& q) {
    return variation_distance(p.probs(), q.probs());
}
// d_TV(p, uniform)
double distance_to_uniform(std::span<const double> p);
double l2_squared(std::span<const double> p);

enum class StartKind { AllPointMasses, SampledPointMasses, Explicit };

std::string_view to_string(StartKind k);

struct Starts {
    StartKind kind = StartKind::AllPointMasses;
    std::size_t samples = 0; // SampledPointMasses
    std::uint64_t seed = 0;  // SampledPointMasses
    std::vector<Distribution> explicit_starts;

    static Starts all() { return {}; }
    static Starts sampled(std::size_t count, std::uint64_t seed) {
        return {StartKind::SampledPointMasses, count, seed, {}};
    }
    static Starts given(std::vector<Distribution> list) {
        return {StartKind::Explicit, 0, 0, std::move(list)};
    }
};

inline constexpr std::size_t kExactWalkCap = 4096;

struct TraceStep {
    std::size_t t = 0;
    double d_tv = 0.0; // max over tracked starts of d_TV(P^t p, pi)
    double l2sq = 0.0; // max over tracked starts of ||P^t p||^2
};

struct WalkTrace {
    StartKind starts = StartKind::AllPointMasses;
    std::size_t start_count = 0;
    std::vector<TraceStep> steps; // t = 0 .. t_max
    // Largest per-start increase ||P^{t+1}p||^2 - ||P^t p||^2 seen (<= 0 in exact arithmetic).
    double max_l2_increase = 0.0;
    // Per-start d_TV, indexed [t][start], kept only when requested.
    std::vector<std::vector<double>> per_start_d_tv;

    // With all point masses the max over starts is the true d_TV(t).
    bool exact() const { return starts == StartKind::AllPointMasses; }
    std::size_t t_max() const { return steps.empty() ? 0 : steps.back().t; }
};

struct WalkOptions {
    unsigned threads = 1;
    bool keep_per_start = false;
    // Stop as soon as the tracked max d_TV is <= this value.
    std::optional<double> stop_at;
};

// Default budget ceil(10 log2 n).
std::size_t default_step_budget(std::size_t n);

// Evolves every start for t_max steps. Throws BudgetZero when t_max == 0.
WalkTrace trace_walk(const RegularGraph& g, const Starts& starts, std::size_t t_max,
                     const WalkOptions& options = {});

void write_trace_csv(std::ostream& out, const WalkTrace& trace);

struct MixingEstimate {
    double epsilon = 0.0;
    std::optional<std::size_t> tau; // empty: not reached within budget
    bool exact = true;              // false: sampled starts give a lower bound on tau
    std::size_t budget = 0;
    double last_d_tv = 0.0;

    bool reached() const { return tau.has_value(); }
    // tau, or NotReached.
    std::size_t value() const;
};

// First t with tracked max d_TV <= epsilon.
MixingEstimate mixing_time(const RegularGraph& g, double epsilon, const Starts& starts,
                           std::size_t t_max, const WalkOptions& options = {});

// ---------------------------------------------------------------- audits

struct L2DecreaseReport {
    double lhs = 0.0;          // ||Pp||^2
    double p_l2sq = 0.0;       // ||p||^2
    double c_delta = 1.0;      // delta + 5(1 - delta)/4
    double floor = 0.0;        // C_delta / n
    double excess_ratio = 0.0; // (lhs - floor) / ||p||^2
    double scale = 0.0;        // sqrt((alpha/d) ln d / xi)
    bool regime_density = true; // (alpha/d) ln d / xi <= 1
    bool regime_delta = true;   // delta >= ((sqrt 5 - 2)/2)(alpha/d)
    std::vector<std::string> warnings;
};

L2DecreaseReport l2_decrease_audit(const RegularGraph& g, const Distribution& p, double delta,
                                   double alpha, double xi);

struct SubmultiplicativityReport {
    std::size_t k = 0, t = 0;
    double lhs = 0.0; // d_TV(kt)
    double rhs = 0.0; // (2 d_TV(t))^k
    double margin = 0.0;
    bool holds(double tolerance = 1e-6) const { return margin >= -tolerance; }
};

// Requires an exact trace containing step k t.
SubmultiplicativityReport submultiplicativity_audit(const WalkTrace& trace, std::size_t k,
                                                    std::size_t t);

struct LowerBoundStep {
    std::size_t t = 0;
    double measured = 0.0; // d_TV(P^t U_S, pi)
    double bound = 0.0;    // (1/2)(alpha/2d)^{2t} - min(|S|,|T|)/(2n)
    double margin = 0.0;
};

struct LowerBoundReport {
    double alpha = 0.0;
    double surplus = 0.0;
    std::size_t start_side_size = 0; // the smaller of |S|, |T|; U is uniform on it
    std::vector<LowerBoundStep> steps;
    bool holds = true;
    double delta = 0.0;                  // max(|S|,|T|)/n
    std::optional<double> mixing_floor;  // log(1/delta)/log(d/alpha); empty when alpha >= d
    MixingEstimate tau;                  // tau_{1/n}
    std::optional<double> floor_ratio;   // tau / mixing_floor
};

inline constexpr double kLowerBoundTolerance = 1e-9;

// Evolves U on the smaller side of a witness pair and checks the variation-distance floor.
LowerBoundReport lower_bound_audit(const RegularGraph& g, const SetPair& pair, double alpha,
                                   std::size_t t_max, const WalkOptions& options = {});

} // namespace mixcert
