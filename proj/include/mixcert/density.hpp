#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "mixcert/graph.hpp"

namespace mixcert {

// Relative tolerance for every surplus-versus-alpha comparison.
inline constexpr double kSurplusTolerance = 1e-9;

// surplus > alpha beyond tolerance
inline bool exceeds(double surplus, double alpha) {
    return surplus > alpha + kSurplusTolerance * std::max(1.0, std::abs(alpha));
}
// surplus >= alpha up to tolerance
inline bool reaches(double surplus, double alpha) {
    return surplus >= alpha - kSurplusTolerance * std::max(1.0, std::abs(alpha));
}

enum class Verdict { Holds, Violated, HoldsUpToSearch };
enum class SearchMode { Exact, Heuristic };

std::string_view to_string(Verdict v);
std::string_view to_string(SearchMode m);

struct SearchBudget {
    std::size_t restarts = 64;
    std::size_t steps = 0; // 0 means 10 n
};

struct SearchInfo {
    SearchMode mode = SearchMode::Exact;
    std::size_t restarts = 0;
    std::size_t steps = 0;
    std::optional<std::uint64_t> seed;
};

// Outcome of checking |E(S,T)| <= d|S||T|/n + alpha sqrt(|S||T|) for |S|,|T| <= delta n.
struct DensityCertificate {
    double alpha = 0.0;
    double delta = 1.0;
    std::size_t size_cap = 0; // floor(delta n)
    Verdict verdict = Verdict::Holds;
    std::optional<SetPair> witness;         // present iff violated
    std::optional<SetPair> best_pair;       // pair attaining max_surplus_found
    std::optional<double> max_surplus_found; // empty in the vacuous regime
    bool vacuous = false;                    // delta n < 1: no nonempty sets qualify
    SearchInfo search;
};

struct DensityOptions {
    std::size_t exact_cap = 12;
    unsigned threads = 1;
};

inline constexpr std::size_t kExactHardCeiling = 16;

// Exhaustive enumeration of every nonempty pair within the size cap.
DensityCertificate certify_exact(const RegularGraph& g, double alpha, double delta,
                                 const DensityOptions& options = {});

// Spectral rounding seeds plus greedy local search. Never certifies "holds".
DensityCertificate search_witness(const RegularGraph& g, double alpha, double delta,
                                  const SearchBudget& budget, std::uint64_t seed,
                                  const DensityOptions& options = {});

// A pair from which no single vertex can be dropped while keeping surplus >= alpha.
struct MinimalWitness {
    SetPair pair;
    std::int64_t degree_floor_s = 0; // min over v in S of |N(v) & T|
    std::int64_t degree_floor_t = 0; // min over u in T of |N(u) & S|
    std::int64_t d_min = 0;
};

MinimalWitness minimize_witness(const RegularGraph& g, const SetPair& pair, double alpha);

struct DegreeFloorCheck {
    double bound_s = 0.0;    // (alpha/2) sqrt(|T|/|S|)
    double bound_t = 0.0;    // (alpha/2) sqrt(|S|/|T|)
    double bound_dmin = 0.0; // alpha^2 / (4d)
    bool floor_s_holds = false;
    bool floor_t_holds = false;
    bool dmin_holds = false;
    bool holds() const { return floor_s_holds && floor_t_holds && dmin_holds; }
};

DegreeFloorCheck check_degree_floors(const MinimalWitness& w, double alpha, std::size_t d);

// True iff every single-vertex removal drops the surplus below alpha.
bool is_minimal(const RegularGraph& g, const SetPair& pair, double alpha);

struct ConductanceResult {
    double conductance = 0.0;
    VertexSet cut;
};

inline constexpr std::size_t kConductanceExactCap = 24;

// Exact phi(G) over all S with 1 <= |S| <= n/2 (Gray-code enumeration).
ConductanceResult min_conductance_exact(const RegularGraph& g,
                                        std::size_t cap = kConductanceExactCap);

} // namespace mixcert
