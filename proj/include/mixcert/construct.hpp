#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixcert/graph.hpp"

namespace mixcert {

class Divisibility : public InvalidArgument {
public:
    Divisibility(std::size_t n, std::size_t divisor)
        : InvalidArgument(std::to_string(divisor) + " does not divide n = " + std::to_string(n)) {}
};

class OddDegree : public InvalidArgument {
public:
    explicit OddDegree(std::size_t d)
        : InvalidArgument("planted constructions need an even degree, got " + std::to_string(d)) {}
};

inline constexpr std::size_t kGenerationRetries = 1000;

// Simple d-regular graph on n vertices: pairing model where each pair is drawn
// among the points that keep the graph simple, restarting when stuck.
// Degrees above (n-1)/2 are generated as complements.
RegularGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

// Simple `degree`-regular bipartite graph between [0, size_s) and [0, size_t),
// returned as (left, right) pairs in local ids, sorted. Requires size_s == size_t.
std::vector<Edge> bipartite_regular(std::size_t size_s, std::size_t size_t, std::size_t degree,
                                    std::uint64_t seed);

enum class PlantedFamily { Expander, SmallSetVertexExpander };
enum class Grade { Exact, Spectral, Sampled, Heuristic, Unverified };

std::string_view to_string(PlantedFamily f);
std::string_view to_string(Grade g);
PlantedFamily planted_family_from_string(std::string_view s);

struct ClaimResult {
    bool applicable = false;
    bool holds = false;
    Grade grade = Grade::Unverified;
    double measured = 0.0;  // exact value, or the worst sampled value
    double threshold = 0.0;
    std::size_t probes = 0;
    std::optional<double> spectral_bound; // proof-grade bound when available
    std::string note;
};

struct ClaimsReport {
    ClaimResult conductance;      // phi(G) >= 1/8
    ClaimResult density;          // |E(S,T)| >= d|S||T|/n + (d/4) sqrt(|S||T|)
    ClaimResult vertex_expansion; // psi(W) >= d/8 for |W| <= n/d
    bool all_hold() const {
        return (!conductance.applicable || conductance.holds) && (!density.applicable || density.holds) &&
               (!vertex_expansion.applicable || vertex_expansion.holds);
    }
};

// Spectral facts about the inner (d-1)-regular graph on R = V \ (S u T).
struct InnerCertificate {
    double lambda2 = 0.0;
    double lambda = 0.0;
    double cheeger_lower = 0.0; // (1 - lambda2)/2, compared with the ideal 1/2
    std::size_t expansion_cap = 0; // floor(dn / ((d+2)(d-1)))
    double tanner_at_cap = 0.0;    // Tanner bound inside R at expansion_cap
    bool certified = false;        // family target met spectrally
};

struct PlantedInstance {
    RegularGraph graph;
    VertexSet s, t;
    std::size_t n = 0, d = 0;
    std::uint64_t seed = 0;
    PlantedFamily family = PlantedFamily::Expander;
    InnerCertificate inner;
    std::optional<ClaimsReport> claims;
};

// |S| = |T| = n/(d+2) with a d/2-regular bipartite gadget between them; every
// S u T vertex sends its other d/2 edges to distinct R vertices (a bijection
// onto R) and R carries a random (d-1)-regular graph.
PlantedInstance planted_expander(std::size_t n, std::size_t d, std::uint64_t seed);
// Same skeleton, d >= 8, inner graph certified for small-set vertex expansion when possible.
PlantedInstance planted_ssve(std::size_t n, std::size_t d, std::uint64_t seed);

// Checks the four structural invariants; returns a description of the first failure.
std::optional<std::string> planted_structure_violation(const RegularGraph& g, const VertexSet& s,
                                                       const VertexSet& t);

// Rebuilds an instance around an existing graph (e.g. loaded with a sidecar).
PlantedInstance adopt_planted(RegularGraph g, VertexSet s, VertexSet t, PlantedFamily family,
                              std::uint64_t seed);

struct ClaimEffort {
    std::size_t cut_samples = 10000;
    std::size_t set_samples = 10000;
    std::uint64_t seed = 0;
    std::size_t exact_conductance_cap = 24;
    std::size_t exact_expansion_budget = 2'000'000; // max subsets enumerated exactly
};

ClaimsReport verify_claims(const PlantedInstance& inst, const ClaimEffort& effort = {});

// Exact integer test of |E(S,T)| >= d|S||T|/n + c sqrt(|S||T|) with c = num/den.
bool density_at_least(std::int64_t e, std::size_t a, std::size_t b, std::size_t n, std::size_t d,
                      std::int64_t c_num, std::int64_t c_den);

} // namespace mixcert
