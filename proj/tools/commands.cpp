#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mixcert/density.hpp"
#include "mixcert/walk.hpp"

namespace mixcert::cli {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

Json seed_json(const std::optional<std::uint64_t>& seed) {
    return seed ? Json(*seed) : Json(nullptr);
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const std::string& stage) {
    if (!seed)
        throw InvalidArgument("--seed is required for " + stage);
    return *seed;
}

// Report = {command, config, result, timestamp}; everything but the timestamp is reproducible.
void emit(const std::string& command, Json config, Json result, const std::string& path,
          std::ostream& out) {
    Json report;
    report["command"] = command;
    report["config"] = std::move(config);
    report["result"] = std::move(result);
    report["timestamp"] = utc_timestamp();
    if (path.empty() || path == "-") {
        out << report.dump(2) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw Error("cannot write '" + path + "'");
    f << report.dump(2) << '\n';
}

Json pair_json(const SetPair& p) {
    return {{"S", p.s.members()}, {"T", p.t.members()}, {"edges", p.est}, {"surplus", p.surplus}};
}

std::string replace_extension(const std::string& path, const std::string& ext) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + ext;
    return path.substr(0, dot) + ext;
}

Json opt(const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); }

} // namespace

int cmd_generate(const GenerateConfig& cfg, unsigned, std::ostream& out, std::ostream& err) {
    const std::uint64_t seed = require_seed(cfg.seed, "generate");
    Json config{{"kind", cfg.kind}, {"n", cfg.n}, {"d", cfg.d}, {"seed", seed}};
    Json result;
    if (cfg.kind == "random-regular") {
        const auto g = random_regular(cfg.n, cfg.d, seed);
        result["edges"] = g.edge_count();
        if (cfg.output.empty() || cfg.output == "-") {
            write_edge_list(out, g);
            config["output"] = "-";
            emit("generate", config, result, "", err);
        } else {
            save_edge_list(cfg.output, g);
            config["output"] = cfg.output;
            emit("generate", config, result, "", out);
        }
        return kSuccess;
    }

    const auto family = planted_family_from_string(cfg.kind);
    auto inst = family == PlantedFamily::Expander ? planted_expander(cfg.n, cfg.d, seed)
                                                  : planted_ssve(cfg.n, cfg.d, seed);
    if (cfg.verify_claims) {
        ClaimEffort effort;
        effort.seed = seed;
        effort.cut_samples = cfg.samples;
        effort.set_samples = cfg.samples;
        inst.claims = verify_claims(inst, effort);
        config["samples"] = cfg.samples;
    }
    const std::string path = cfg.output.empty() ? cfg.kind + ".el" : cfg.output;
    const std::string side = cfg.sidecar.empty() ? replace_extension(path, ".json") : cfg.sidecar;
    save_edge_list(path, inst.graph);
    save_sidecar(side, inst);
    config["output"] = path;
    config["sidecar"] = side;
    config["verify_claims"] = cfg.verify_claims;
    result["edges"] = inst.graph.edge_count();
    result["set_size"] = inst.s.size();
    result["planted_edges"] = ordered_edge_count(inst.graph, inst.s, inst.t);
    result["planted_surplus"] = density_surplus(inst.graph, inst.s, inst.t);
    result["inner"] = inner_json(inst.inner);
    result["claims"] = inst.claims ? claims_json(*inst.claims) : Json(nullptr);
    emit("generate", config, result, "", out);
    if (inst.claims && !inst.claims->all_hold()) {
        err << "warning: a planted claim failed verification\n";
    }
    return kSuccess;
}

int cmd_certify(const CertifyConfig& cfg, unsigned threads, std::ostream& out, std::ostream& err) {
    const auto g = load_edge_list(cfg.graph);
    const double dd = static_cast<double>(g.degree());
    if (!(cfg.alpha > 0.0))
        throw InvalidArgument("alpha must be positive");
    if (cfg.mode != "auto" && cfg.mode != "exact" && cfg.mode != "heuristic")
        throw InvalidArgument("mode must be auto, exact or heuristic");
    const bool exact = cfg.mode == "exact" ||
                       (cfg.mode == "auto" && g.order() <= std::min(cfg.exact_cap, kExactHardCeiling));
    Json warnings = Json::array();
    if (cfg.alpha <= std::sqrt(dd)) {
        warnings.push_back("alpha <= sqrt(d): even random graphs violate the density condition here");
        err << "warning: alpha <= sqrt(d)\n";
    }

    DensityOptions opts;
    opts.exact_cap = cfg.exact_cap;
    opts.threads = threads;
    DensityCertificate cert;
    if (exact) {
        try {
            cert = certify_exact(g, cfg.alpha, cfg.delta, opts);
        } catch (const SizeCap&) {
            err << "hint: use --mode heuristic (with --seed) for graphs this large\n";
            throw;
        }
    } else {
        const auto seed = require_seed(cfg.seed, "heuristic certification");
        cert = search_witness(g, cfg.alpha, cfg.delta, SearchBudget{cfg.restarts, cfg.steps}, seed,
                              opts);
    }

    Json config{{"graph", cfg.graph},   {"alpha", cfg.alpha},         {"delta", cfg.delta},
                {"mode", cfg.mode},     {"exact_cap", cfg.exact_cap}, {"seed", seed_json(cfg.seed)},
                {"restarts", cfg.restarts}, {"steps", cfg.steps}};
    Json result;
    result["n"] = g.order();
    result["d"] = g.degree();
    result["search_mode"] = std::string(to_string(cert.search.mode));
    result["grade"] = exact ? "exact" : "heuristic";
    result["verdict"] = std::string(to_string(cert.verdict));
    result["size_cap"] = cert.size_cap;
    result["vacuous"] = cert.vacuous;
    result["max_surplus_found"] =
        cert.max_surplus_found ? Json(*cert.max_surplus_found) : Json(nullptr);
    result["best_pair"] = cert.best_pair ? pair_json(*cert.best_pair) : Json(nullptr);
    result["witness"] = cert.witness ? pair_json(*cert.witness) : Json(nullptr);
    if (cert.witness) {
        const auto mw = minimize_witness(g, *cert.witness, cfg.alpha);
        const auto fl = check_degree_floors(mw, cfg.alpha, g.degree());
        Json m = pair_json(mw.pair);
        m["degree_floor_s"] = mw.degree_floor_s;
        m["degree_floor_t"] = mw.degree_floor_t;
        m["d_min"] = mw.d_min;
        m["bound_s"] = fl.bound_s;
        m["bound_t"] = fl.bound_t;
        m["bound_dmin"] = fl.bound_dmin;
        m["floors_hold"] = fl.holds();
        m["grade"] = "exact";
        result["minimal_witness"] = m;
    }
    result["warnings"] = warnings;
    emit("certify", config, result, cfg.output, out);
    return kSuccess;
}

int cmd_mix(const MixConfig& cfg, unsigned threads, std::ostream& out, std::ostream&) {
    const auto g = load_edge_list(cfg.graph);
    const std::size_t n = g.order();
    if (!(cfg.epsilon > 0.0))
        throw InvalidArgument("epsilon must be positive");
    std::string kind = cfg.starts;
    if (kind == "auto")
        kind = n <= kExactWalkCap ? "all" : "sampled";
    Starts starts;
    if (kind == "all") {
        if (n > kExactWalkCap)
            throw SizeCap(n, kExactWalkCap);
        starts = Starts::all();
    } else if (kind == "sampled") {
        starts = Starts::sampled(cfg.samples, require_seed(cfg.seed, "sampled starts"));
    } else {
        throw InvalidArgument("starts must be auto, all or sampled");
    }
    const std::size_t t_max = cfg.t_max.value_or(default_step_budget(n));
    WalkOptions opts;
    opts.threads = threads;
    const auto trace = trace_walk(g, starts, t_max, opts);
    std::optional<std::size_t> tau;
    for (const auto& s : trace.steps)
        if (s.d_tv <= cfg.epsilon) {
            tau = s.t;
            break;
        }
    if (!cfg.trace_csv.empty()) {
        std::ofstream f(cfg.trace_csv);
        if (!f)
            throw Error("cannot write '" + cfg.trace_csv + "'");
        write_trace_csv(f, trace);
    }

    Json config{{"graph", cfg.graph}, {"epsilon", cfg.epsilon}, {"t_max", t_max},
                {"starts", kind},     {"samples", kind == "sampled" ? Json(cfg.samples) : Json(nullptr)},
                {"seed", seed_json(cfg.seed)}, {"trace_csv", cfg.trace_csv}};
    Json result;
    result["n"] = n;
    result["d"] = g.degree();
    result["tau"] = opt(tau);
    result["reached"] = tau.has_value();
    result["grade"] = trace.exact() ? "exact" : "sampled";
    result["tau_kind"] = trace.exact() ? "exact" : "lower-bound";
    result["start_count"] = trace.start_count;
    result["final_d_tv"] = trace.steps.back().d_tv;
    result["max_l2_increase"] = trace.max_l2_increase;
    Json rows = Json::array();
    for (const auto& s : trace.steps)
        rows.push_back(Json::array({s.t, s.d_tv, s.l2sq}));
    result["trace"] = rows;
    emit("mix", config, result, cfg.output, out);
    return kSuccess;
}

int cmd_spectrum(const SpectrumConfig& cfg, unsigned, std::ostream& out, std::ostream&) {
    const auto g = load_edge_list(cfg.graph);
    const std::size_t n = g.order();
    SpectralOptions opts;
    opts.tolerance = cfg.tolerance;
    SpectralMethod method;
    if (cfg.method == "dense")
        method = SpectralMethod::ExactDense;
    else if (cfg.method == "iterative")
        method = SpectralMethod::Iterative;
    else if (cfg.method == "auto")
        method = n <= 1024 ? SpectralMethod::ExactDense : SpectralMethod::Iterative;
    else
        throw InvalidArgument("method must be auto, dense or iterative");
    if (method == SpectralMethod::Iterative)
        opts.seed = require_seed(cfg.seed, "the iterative eigensolver");
    if (method == SpectralMethod::ExactDense && n > opts.dense_cap)
        throw SizeCap(n, opts.dense_cap);
    const auto s = spectrum(g, method, opts);

    Json config{{"graph", cfg.graph}, {"method", cfg.method}, {"seed", seed_json(cfg.seed)},
                {"tolerance", cfg.tolerance}, {"full", cfg.full}};
    Json result;
    result["n"] = n;
    result["d"] = g.degree();
    result["lambda2"] = s.lambda2;
    result["lambda_n"] = s.lambda_n;
    result["lambda"] = s.lambda;
    result["method"] = std::string(to_string(s.method));
    result["residual"] = s.residual;
    result["grade"] = "spectral";
    if (g.degree() >= 2) {
        result["alon_boppana"] = alon_boppana_ref(g.degree());
        result["is_ramanujan"] = is_ramanujan(s, g.degree());
    }
    result["cheeger_lower"] = (1.0 - s.lambda2) / 2.0;
    result["cheeger_upper"] = std::sqrt(2.0 * std::max(0.0, 1.0 - s.lambda2));
    if (cfg.full) {
        if (n > opts.dense_cap)
            throw SizeCap(n, opts.dense_cap);
        result["eigenvalues"] = full_spectrum(g, opts);
    }
    emit("spectrum", config, result, cfg.output, out);
    return kSuccess;
}

int cmd_verify(const VerifyCommand& cmd, unsigned threads, std::ostream& out, std::ostream& err) {
    VerifyConfig cfg = cmd.config;
    cfg.seed = require_seed(cmd.seed, "verify");
    cfg.threads = threads;
    const auto g = load_edge_list(cfg.graph_path);
    std::optional<Sidecar> sidecar;
    if (!cfg.sidecar_path.empty())
        sidecar = load_sidecar(cfg.sidecar_path, g.order());

    auto outcome = run_verify(g, sidecar, cfg);
    Json config{{"graph", cfg.graph_path},
                {"sidecar", cfg.sidecar_path},
                {"alpha", cfg.alpha ? Json(*cfg.alpha) : Json(nullptr)},
                {"delta", cfg.delta ? Json(*cfg.delta) : Json(nullptr)},
                {"seed", cfg.seed},
                {"probes", cfg.probes},
                {"t_max", cfg.t_max ? Json(*cfg.t_max) : Json(nullptr)},
                {"lemma_steps", cfg.lemma_steps},
                {"exact_cap", cfg.exact_cap},
                {"restarts", cfg.restarts},
                {"sampled_starts", cfg.sampled_starts},
                {"tolerance", cfg.tolerance}};
    Json result = std::move(outcome.report);
    result["n"] = g.order();
    result["d"] = g.degree();
    emit("verify", config, result, cmd.output, out);
    if (outcome.cross_check_failed) {
        err << "error: a theorem cross-check failed\n";
        return kCrossCheckFailed;
    }
    return kSuccess;
}

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const SizeCap& e) {
        err << "error: " << e.what() << '\n';
        return kRefused;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

unsigned resolve_threads(std::optional<unsigned> flag) {
    if (flag)
        return std::max(1u, *flag);
    if (const char* env = std::getenv("MIXCERT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw InvalidArgument("MIXCERT_THREADS must be a positive integer");
    }
    return 1;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Spectral, density and random-walk certification for regular graphs", "mixcert"};
    app.require_subcommand(1);
    std::optional<unsigned> threads;
    app.add_option("--threads", threads, "Worker threads (default: MIXCERT_THREADS or 1)");

    GenerateConfig gen;
    auto* g = app.add_subcommand("generate", "Generate a random or planted regular graph");
    g->add_option("kind", gen.kind, "random-regular | planted-expander | planted-ssve")
        ->required()
        ->check(CLI::IsMember({"random-regular", "planted-expander", "planted-ssve"}));
    g->add_option("--n", gen.n, "Vertices")->required();
    g->add_option("--d", gen.d, "Degree")->required();
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("-o,--output", gen.output, "Edge-list path");
    g->add_option("--sidecar", gen.sidecar, "Sidecar JSON path for planted instances");
    g->add_flag("--verify-claims", gen.verify_claims, "Check the planted claims after generation");
    g->add_option("--samples", gen.samples, "Sampled cuts / sets for claim checks");

    CertifyConfig cert;
    auto* c = app.add_subcommand("certify", "Check the bipartite density condition");
    c->add_option("graph", cert.graph, "Edge-list file")->required();
    c->add_option("--alpha", cert.alpha, "Density parameter")->required();
    c->add_option("--delta", cert.delta, "Small-set fraction")->capture_default_str();
    c->add_option("--mode", cert.mode, "auto | exact | heuristic")->capture_default_str();
    c->add_option("--exact-cap", cert.exact_cap, "Largest n certified exactly")->capture_default_str();
    c->add_option("--seed", cert.seed, "Seed for the heuristic search");
    c->add_option("--restarts", cert.restarts, "Search restarts")->capture_default_str();
    c->add_option("--steps", cert.steps, "Local-search steps per restart (0: 10n)");
    c->add_option("-o,--output", cert.output, "Report path");

    MixConfig mix;
    auto* m = app.add_subcommand("mix", "Exact random-walk trace and mixing time");
    m->add_option("graph", mix.graph, "Edge-list file")->required();
    m->add_option("--epsilon", mix.epsilon, "Target variation distance")->required();
    m->add_option("--t-max", mix.t_max, "Step budget (default ceil(10 log2 n))");
    m->add_option("--starts", mix.starts, "auto | all | sampled")->capture_default_str();
    m->add_option("--samples", mix.samples, "Sampled point masses")->capture_default_str();
    m->add_option("--seed", mix.seed, "Seed for sampled starts");
    m->add_option("--trace", mix.trace_csv, "CSV trace path");
    m->add_option("-o,--output", mix.output, "Report path");

    SpectrumConfig spec;
    auto* s = app.add_subcommand("spectrum", "Extreme eigenvalues of the walk matrix");
    s->add_option("graph", spec.graph, "Edge-list file")->required();
    s->add_option("--method", spec.method, "auto | dense | iterative")->capture_default_str();
    s->add_option("--seed", spec.seed, "Seed for the iterative solver");
    s->add_option("--tolerance", spec.tolerance, "Residual tolerance")->capture_default_str();
    s->add_flag("--full", spec.full, "Include every eigenvalue");
    s->add_option("-o,--output", spec.output, "Report path");

    VerifyCommand ver;
    auto* v = app.add_subcommand("verify", "Run every cross-check and audit on one graph");
    v->add_option("--graph", ver.config.graph_path, "Edge-list file")->required();
    v->add_option("--sidecar", ver.config.sidecar_path, "Planted sidecar JSON");
    v->add_option("--alpha", ver.config.alpha, "Density parameter");
    v->add_option("--delta", ver.config.delta, "Small-set fraction");
    v->add_option("--seed", ver.seed, "Seed for every randomized stage");
    v->add_option("--probes", ver.config.probes, "Probes per cross-check")->capture_default_str();
    v->add_option("--t-max", ver.config.t_max, "Walk trace length");
    v->add_option("--lemma-steps", ver.config.lemma_steps, "Steps of the lower-bound audit")
        ->capture_default_str();
    v->add_option("--exact-cap", ver.config.exact_cap, "Largest n certified exactly")
        ->capture_default_str();
    v->add_option("--restarts", ver.config.restarts, "Search restarts")->capture_default_str();
    v->add_option("-o,--output", ver.output, "Report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kBadInput;
    }

    return guarded(std::cerr, [&] {
        const unsigned t = resolve_threads(threads);
        if (g->parsed())
            return cmd_generate(gen, t, std::cout, std::cerr);
        if (c->parsed())
            return cmd_certify(cert, t, std::cout, std::cerr);
        if (m->parsed())
            return cmd_mix(mix, t, std::cout, std::cerr);
        if (s->parsed())
            return cmd_spectrum(spec, t, std::cout, std::cerr);
        return cmd_verify(ver, t, std::cout, std::cerr);
    });
}

} // namespace mixcert::cli
