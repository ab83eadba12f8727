#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixcert/graph.hpp"
#include "mixcert/spectral.hpp"
#include "mixcert/walk.hpp"
#include "sidecar.hpp"

namespace mixcert::cli {

struct VerifyConfig {
    std::string graph_path;
    std::string sidecar_path;
    std::optional<double> alpha;
    std::optional<double> delta;
    std::uint64_t seed = 0;
    std::size_t probes = 10000;
    std::optional<std::size_t> t_max;
    std::size_t lemma_steps = 50;
    std::size_t exact_cap = 12;
    std::size_t restarts = 64;
    std::size_t sampled_starts = 256; // used above the exact walk cap
    double tolerance = 1e-6;
    unsigned threads = 1;
};

// One family of probes of a proved inequality.
struct CheckSummary {
    std::string name;
    std::string inequality;
    std::size_t probes = 0;
    std::size_t violations = 0;
    double min_margin = 0.0;
    std::string grade = "exact";
    std::string note;
    bool gating = true;
    bool failed() const { return gating && violations > 0; }
};

Json check_json(const CheckSummary& c);

// Individual cross-checks, usable on their own by the acceptance suite.
CheckSummary eml_probes(const RegularGraph& g, const SpectralSummary& s, std::size_t count,
                        std::uint64_t seed, double tol);
CheckSummary cheeger_probes(const RegularGraph& g, const SpectralSummary& s,
                            const std::vector<double>& fiedler, std::size_t count,
                            std::uint64_t seed, double tol);
CheckSummary tanner_probes(const RegularGraph& g, const SpectralSummary& s, std::size_t count,
                           std::uint64_t seed, double tol);

struct WalkChecks {
    CheckSummary submultiplicativity;
    CheckSummary l2_monotone;
    CheckSummary envelope;
};
WalkChecks walk_probes(const WalkTrace& trace, const SpectralSummary& s, std::size_t n, double tol);

struct VerifyOutcome {
    Json report;
    bool cross_check_failed = false;
};

// Spectral summary, mixing-lemma / Cheeger / Tanner probes, density certificate,
// walk trace audits, witness lower-bound audit and a theorem comparison table.
VerifyOutcome run_verify(const RegularGraph& g, const std::optional<Sidecar>& sidecar,
                         const VerifyConfig& cfg);

} // namespace mixcert::cli
