#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "harness.hpp"

namespace mixcert::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternal = 1,
    kBadInput = 2,
    kRefused = 3,
    kCrossCheckFailed = 4,
};

struct GenerateConfig {
    std::string kind; // random-regular | planted-expander | planted-ssve
    std::size_t n = 0, d = 0;
    std::optional<std::uint64_t> seed;
    std::string output;  // empty: stdout for random-regular, <kind>.el for planted
    std::string sidecar; // empty: output with a .json extension
    bool verify_claims = false;
    std::size_t samples = 10000;
};

struct CertifyConfig {
    std::string graph;
    double alpha = 0.0;
    double delta = 1.0;
    std::string mode = "auto"; // auto | exact | heuristic
    std::size_t exact_cap = 12;
    std::optional<std::uint64_t> seed;
    std::size_t restarts = 64;
    std::size_t steps = 0;
    std::string output;
};

struct MixConfig {
    std::string graph;
    double epsilon = 0.0;
    std::optional<std::size_t> t_max;
    std::string starts = "auto"; // auto | all | sampled
    std::size_t samples = 256;
    std::optional<std::uint64_t> seed;
    std::string trace_csv;
    std::string output;
};

struct SpectrumConfig {
    std::string graph;
    std::string method = "auto"; // auto | dense | iterative
    std::optional<std::uint64_t> seed;
    double tolerance = 1e-8;
    bool full = false;
    std::string output;
};

struct VerifyCommand {
    VerifyConfig config;
    std::optional<std::uint64_t> seed;
    std::string output;
};

int cmd_generate(const GenerateConfig& cfg, unsigned threads, std::ostream& out, std::ostream& err);
int cmd_certify(const CertifyConfig& cfg, unsigned threads, std::ostream& out, std::ostream& err);
int cmd_mix(const MixConfig& cfg, unsigned threads, std::ostream& out, std::ostream& err);
int cmd_spectrum(const SpectrumConfig& cfg, unsigned threads, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyCommand& cmd, unsigned threads, std::ostream& out, std::ostream& err);

// Full command line entry point.
int run(int argc, char** argv);

} // namespace mixcert::cli
