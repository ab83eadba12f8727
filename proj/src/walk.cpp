#include "mixcert/walk.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

#include "mixcert/parallel.hpp"
#include "mixcert/rng.hpp"

namespace mixcert {

// ---------------------------------------------------------------- Distribution

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0))
            throw InvalidArgument("distribution has a negative or NaN entry");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12 * std::max<double>(1.0, static_cast<double>(probs_.size())))
        throw InvalidArgument("distribution does not sum to 1");
}

Distribution Distribution::point_mass(std::size_t n, Vertex v) {
    if (v >= n)
        throw InvalidArgument("point mass outside the vertex range");
    std::vector<double> p(n, 0.0);
    p[v] = 1.0;
    return Distribution(std::move(p));
}

Distribution Distribution::uniform(std::size_t n) {
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::uniform_on(const VertexSet& s) {
    if (s.empty())
        throw EmptySet();
    std::vector<double> p(s.universe(), 0.0);
    const double w = 1.0 / static_cast<double>(s.size());
    s.for_each([&](Vertex v) { p[v] = w; });
    return Distribution(std::move(p));
}

Distribution step(const RegularGraph& g, const Distribution& p) {
    const std::size_t n = g.order();
    if (p.size() != n)
        throw InvalidArgument("distribution size does not match the graph");
    Distribution out;
    out.probs_.resize(n);
    const double inv_d = 1.0 / static_cast<double>(g.degree());
    double total = 0.0;
    for (Vertex v = 0; v < n; ++v) {
        double acc = 0.0;
        for (Vertex u : g.neighbors(v))
            acc += p.probs_[u];
        out.probs_[v] = acc * inv_d;
        total += out.probs_[v];
    }
    for (double& x : out.probs_)
        x /= total;
    return out;
}

double variation_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw InvalidArgument("distributions differ in size");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double distance_to_uniform(std::span<const double> p) {
    const double u = 1.0 / static_cast<double>(p.size());
    double s = 0.0;
    for (double x : p)
        s += std::abs(x - u);
    return 0.5 * s;
}

double l2_squared(std::span<const double> p) {
    double s = 0.0;
    for (double x : p)
        s += x * x;
    return s;
}

std::string_view to_string(StartKind k) {
    switch (k) {
    case StartKind::AllPointMasses:
        return "all-point-masses";
    case StartKind::SampledPointMasses:
        return "sampled-point-masses";
    case StartKind::Explicit:
        return "explicit";
    }
    return "unknown";
}

std::size_t default_step_budget(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(10.0 * std::log2(static_cast<double>(n))));
}

// ---------------------------------------------------------------- evolution

namespace {

// k start vectors stored vertex-major (x[v * k + j]) so one neighbour sweep
// advances every start. Columns are split across workers; each column is
// always reduced in vertex order, so results do not depend on the worker count.
class Ensemble {
public:
    Ensemble(const RegularGraph& g, const Starts& starts) : g_(g), n_(g.order()) {
        switch (starts.kind) {
        case StartKind::AllPointMasses:
            if (n_ > kExactWalkCap)
                throw SizeCap(n_, kExactWalkCap);
            k_ = n_;
            x_.assign(n_ * k_, 0.0);
            for (std::size_t v = 0; v < n_; ++v)
                x_[v * k_ + v] = 1.0;
            break;
        case StartKind::SampledPointMasses: {
            if (starts.samples == 0)
                throw InvalidArgument("sampled starts need at least one sample");
            std::vector<Vertex> ids(n_);
            std::iota(ids.begin(), ids.end(), Vertex{0});
            Rng rng(derive_seed(starts.seed, 0x57a7));
            k_ = std::min(starts.samples, n_);
            for (std::size_t i = 0; i < k_; ++i)
                std::swap(ids[i], ids[i + rng.below(n_ - i)]);
            x_.assign(n_ * k_, 0.0);
            for (std::size_t j = 0; j < k_; ++j)
                x_[ids[j] * k_ + j] = 1.0;
            break;
        }
        case StartKind::Explicit:
            if (starts.explicit_starts.empty())
                throw InvalidArgument("explicit starts list is empty");
            k_ = starts.explicit_starts.size();
            x_.assign(n_ * k_, 0.0);
            for (std::size_t j = 0; j < k_; ++j) {
                const auto& p = starts.explicit_starts[j];
                if (p.size() != n_)
                    throw InvalidArgument("start distribution size does not match the graph");
                for (std::size_t v = 0; v < n_; ++v)
                    x_[v * k_ + j] = p[v];
            }
            break;
        }
        y_.assign(n_ * k_, 0.0);
        d_tv_.assign(k_, 0.0);
        l2_.assign(k_, 0.0);
        measure_all(x_);
    }

    std::size_t count() const { return k_; }
    const std::vector<double>& d_tv() const { return d_tv_; }
    const std::vector<double>& l2() const { return l2_; }

    // Advances one step; returns the largest per-start increase in ||p||^2.
    double advance(unsigned threads) {
        const std::size_t blocks = std::min<std::size_t>(std::max(1u, threads), k_);
        std::vector<double> increase(blocks, -std::numeric_limits<double>::infinity());
        parallel_for(blocks, static_cast<unsigned>(blocks), [&](std::size_t b) {
            const std::size_t lo = k_ * b / blocks, hi = k_ * (b + 1) / blocks;
            step_columns(lo, hi);
            for (std::size_t j = lo; j < hi; ++j) {
                const double before = l2_[j];
                measure(y_, j);
                increase[b] = std::max(increase[b], l2_[j] - before);
            }
        });
        std::swap(x_, y_);
        return *std::max_element(increase.begin(), increase.end());
    }

private:
    void step_columns(std::size_t lo, std::size_t hi) {
        const double inv_d = 1.0 / static_cast<double>(g_.degree());
        const std::size_t w = hi - lo;
        std::vector<double> total(w, 0.0);
        for (Vertex v = 0; v < n_; ++v) {
            double* out = y_.data() + v * k_ + lo;
            std::fill(out, out + w, 0.0);
            for (Vertex u : g_.neighbors(v)) {
                const double* in = x_.data() + static_cast<std::size_t>(u) * k_ + lo;
                for (std::size_t j = 0; j < w; ++j)
                    out[j] += in[j];
            }
            for (std::size_t j = 0; j < w; ++j) {
                out[j] *= inv_d;
                total[j] += out[j];
            }
        }
        // Absorb floating drift so every column stays a probability vector.
        for (Vertex v = 0; v < n_; ++v) {
            double* out = y_.data() + v * k_ + lo;
            for (std::size_t j = 0; j < w; ++j)
                out[j] /= total[j];
        }
    }

    void measure(const std::vector<double>& x, std::size_t j) {
        const double u = 1.0 / static_cast<double>(n_);
        double tv = 0.0, sq = 0.0;
        for (std::size_t v = 0; v < n_; ++v) {
            const double p = x[v * k_ + j];
            tv += std::abs(p - u);
            sq += p * p;
        }
        d_tv_[j] = 0.5 * tv;
        l2_[j] = sq;
    }

    void measure_all(const std::vector<double>& x) {
        for (std::size_t j = 0; j < k_; ++j)
            measure(x, j);
    }

    const RegularGraph& g_;
    std::size_t n_;
    std::size_t k_ = 0;
    std::vector<double> x_, y_;
    std::vector<double> d_tv_, l2_;
};

TraceStep snapshot(std::size_t t, const Ensemble& e) {
    return {t, *std::max_element(e.d_tv().begin(), e.d_tv().end()),
            *std::max_element(e.l2().begin(), e.l2().end())};
}

WalkTrace evolve(const RegularGraph& g, const Starts& starts, std::size_t t_max,
                 const WalkOptions& options) {
    Ensemble ens(g, starts);
    WalkTrace trace;
    trace.starts = starts.kind;
    trace.start_count = ens.count();
    trace.max_l2_increase = -std::numeric_limits<double>::infinity();
    trace.steps.push_back(snapshot(0, ens));
    if (options.keep_per_start)
        trace.per_start_d_tv.push_back(ens.d_tv());
    for (std::size_t t = 1; t <= t_max; ++t) {
        if (options.stop_at && trace.steps.back().d_tv <= *options.stop_at)
            break;
        trace.max_l2_increase = std::max(trace.max_l2_increase, ens.advance(options.threads));
        trace.steps.push_back(snapshot(t, ens));
        if (options.keep_per_start)
            trace.per_start_d_tv.push_back(ens.d_tv());
    }
    if (trace.steps.size() == 1)
        trace.max_l2_increase = 0.0;
    return trace;
}

} // namespace

WalkTrace trace_walk(const RegularGraph& g, const Starts& starts, std::size_t t_max,
                     const WalkOptions& options) {
    if (t_max == 0)
        throw BudgetZero();
    return evolve(g, starts, t_max, options);
}

void write_trace_csv(std::ostream& out, const WalkTrace& trace) {
    out << "t,d_tv,l2sq\n" << std::setprecision(17);
    for (const auto& s : trace.steps)
        out << s.t << ',' << s.d_tv << ',' << s.l2sq << '\n';
}

std::size_t MixingEstimate::value() const {
    if (!tau)
        throw NotReached(budget, last_d_tv);
    return *tau;
}

MixingEstimate mixing_time(const RegularGraph& g, double epsilon, const Starts& starts,
                           std::size_t t_max, const WalkOptions& options) {
    if (!(epsilon > 0.0))
        throw InvalidArgument("epsilon must be positive");
    WalkOptions opts = options;
    opts.stop_at = epsilon;
    const auto trace = evolve(g, starts, t_max, opts);
    MixingEstimate est;
    est.epsilon = epsilon;
    est.exact = trace.exact();
    est.budget = t_max;
    est.last_d_tv = trace.steps.back().d_tv;
    for (const auto& s : trace.steps) {
        if (s.d_tv <= epsilon) {
            est.tau = s.t;
            break;
        }
    }
    return est;
}

// ---------------------------------------------------------------- audits

L2DecreaseReport l2_decrease_audit(const RegularGraph& g, const Distribution& p, double delta,
                                   double alpha, double xi) {
    if (!(delta > 0.0) || delta > 1.0)
        throw InvalidArgument("delta must lie in (0, 1]");
    if (!(alpha > 0.0) || !(xi > 0.0))
        throw InvalidArgument("alpha and xi must be positive");
    const double n = static_cast<double>(g.order());
    const double d = static_cast<double>(g.degree());
    const auto next = step(g, p);

    L2DecreaseReport r;
    r.lhs = l2_squared(next.probs());
    r.p_l2sq = l2_squared(p.probs());
    r.c_delta = delta + 5.0 * (1.0 - delta) / 4.0;
    r.floor = r.c_delta / n;
    r.excess_ratio = (r.lhs - r.floor) / r.p_l2sq;
    const double alpha_bar = alpha / d;
    const double regime = alpha_bar * std::log(d) / xi;
    r.scale = std::sqrt(regime);
    r.regime_density = regime <= 1.0;
    r.regime_delta = delta >= (std::sqrt(5.0) - 2.0) / 2.0 * alpha_bar;
    if (!r.regime_density)
        r.warnings.push_back("(alpha/d) ln d / xi = " + std::to_string(regime) + " exceeds 1");
    if (!r.regime_delta)
        r.warnings.push_back("delta is below ((sqrt 5 - 2)/2) alpha/d");
    return r;
}

SubmultiplicativityReport submultiplicativity_audit(const WalkTrace& trace, std::size_t k,
                                                    std::size_t t) {
    if (!trace.exact())
        throw InvalidArgument("sub-multiplicativity needs an exact (all point masses) trace");
    if (k == 0)
        throw InvalidArgument("k must be at least 1");
    if (k * t > trace.t_max() || k * t >= trace.steps.size())
        throw IndexOutOfTrace(k * t, trace.t_max());
    SubmultiplicativityReport r;
    r.k = k;
    r.t = t;
    r.lhs = trace.steps[k * t].d_tv;
    r.rhs = std::pow(2.0 * trace.steps[t].d_tv, static_cast<double>(k));
    r.margin = r.rhs - r.lhs;
    return r;
}

LowerBoundReport lower_bound_audit(const RegularGraph& g, const SetPair& pair, double alpha,
                                   std::size_t t_max, const WalkOptions& options) {
    const double surplus = density_surplus(g, pair.s, pair.t);
    const double tol = 1e-9 * std::max(1.0, std::abs(alpha));
    if (!(surplus >= alpha - tol))
        throw NotAWitness(surplus, alpha);

    const double n = static_cast<double>(g.order());
    const double d = static_cast<double>(g.degree());
    const VertexSet& start_side = pair.t.size() < pair.s.size() ? pair.t : pair.s;
    const std::size_t small = start_side.size();
    const std::size_t large = std::max(pair.s.size(), pair.t.size());

    LowerBoundReport r;
    r.alpha = alpha;
    r.surplus = surplus;
    r.start_side_size = small;

    WalkOptions opts = options;
    opts.stop_at.reset();
    const auto trace = evolve(g, Starts::given({Distribution::uniform_on(start_side)}), t_max, opts);
    for (const auto& s : trace.steps) {
        LowerBoundStep row;
        row.t = s.t;
        row.measured = s.d_tv;
        row.bound = 0.5 * std::pow(alpha / (2.0 * d), 2.0 * static_cast<double>(s.t)) -
                    static_cast<double>(small) / (2.0 * n);
        row.margin = row.measured - row.bound;
        if (row.margin < -kLowerBoundTolerance)
            r.holds = false;
        r.steps.push_back(row);
    }

    r.delta = static_cast<double>(large) / n;
    if (alpha < d && r.delta < 1.0)
        r.mixing_floor = std::log(1.0 / r.delta) / std::log(d / alpha);
    const std::size_t budget = std::max(t_max, 2 * default_step_budget(g.order()));
    const Starts starts = g.order() <= kExactWalkCap
                              ? Starts::all()
                              : Starts::given({Distribution::uniform_on(start_side)});
    r.tau = mixing_time(g, 1.0 / n, starts, budget, opts);
    if (r.mixing_floor && r.tau.reached() && *r.mixing_floor > 0.0)
        r.floor_ratio = static_cast<double>(*r.tau.tau) / *r.mixing_floor;
    return r;
}

} // namespace mixcert
