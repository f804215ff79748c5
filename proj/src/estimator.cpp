#include "qmet/estimator.hpp"

#include "qmet/errors.hpp"
#include "qmet/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <thread>

namespace qmet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct RunningStats {
    // inputs reused by the jackknife reductions
    std::vector<double> wrapped, raw;
    double sum_w2 = 0.0, sum_r2 = 0.0, sum_cos = 0.0, sum_sin = 0.0;

    void add(double w, double r) {
        wrapped.push_back(w);
        raw.push_back(r);
        sum_w2 += w * w;
        sum_r2 += r * r;
        sum_cos += std::cos(w);
        sum_sin += std::sin(w);
    }
};

double jackknife_stderr(const std::vector<double>& loo) {
    const std::size_t n = loo.size();
    if (n < 2) return 0.0;
    double mean = std::accumulate(loo.begin(), loo.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    return std::sqrt(double(n - 1) / double(n) * ss);
}

void rms_with_stderr(const std::vector<double>& e, double sum_sq, double* out, double* out_se) {
    const std::size_t n = e.size();
    *out = std::sqrt(sum_sq / double(n));
    if (n < 2) {
        *out_se = 0.0;
        return;
    }
    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) loo[i] = std::sqrt(std::max(sum_sq - e[i] * e[i], 0.0) / double(n - 1));
    *out_se = jackknife_stderr(loo);
}

void holevo_with_stderr(const RunningStats& st, double* v, double* se, double* sharp) {
    const std::size_t n = st.wrapped.size();
    const double r = std::hypot(st.sum_cos, st.sum_sin) / double(n);
    *sharp = r;
    *v = r > 0.0 ? 1.0 / (r * r) - 1.0 : std::numeric_limits<double>::infinity();
    if (n < 2 || !(r > 0.0)) {
        *se = 0.0;
        return;
    }
    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = st.sum_cos - std::cos(st.wrapped[i]);
        const double s = st.sum_sin - std::sin(st.wrapped[i]);
        const double ri = std::hypot(c, s) / double(n - 1);
        loo[i] = ri > 0.0 ? 1.0 / (ri * ri) - 1.0 : std::numeric_limits<double>::infinity();
    }
    *se = jackknife_stderr(loo);
}

// Exact entropy (nats) of the composite probe's generator eigenvalue
// distribution: every component copy contributes 1/2 at 0 and 1/2 at its gap.
double composite_probe_asymmetry(const SchemeSpec& spec) {
    std::vector<double> pmf = {1.0};
    for (const auto& c : spec.components) {
        for (int copy = 0; copy < spec.M; ++copy) {
            std::vector<double> next(pmf.size() + std::size_t(c.gap), 0.0);
            for (std::size_t i = 0; i < pmf.size(); ++i) {
                next[i] += 0.5 * pmf[i];
                next[i + std::size_t(c.gap)] += 0.5 * pmf[i];
            }
            pmf = std::move(next);
        }
    }
    if (pmf.size() == 1) return 0.0;
    return shannon_entropy(pmf);
}

struct GapTable {
    std::vector<double> c, s;
};

GapTable make_gap_table(long gap, std::size_t grid) {
    GapTable t;
    t.c.resize(grid);
    t.s.resize(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        const double phi = double(i) * kTwoPi / double(grid);
        t.c[i] = std::cos(double(gap) * phi);
        t.s[i] = std::sin(double(gap) * phi);
    }
    return t;
}

double circular_mean(const std::vector<double>& p, const GapTable& unit) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        c += p[i] * unit.c[i];
        s += p[i] * unit.s[i];
    }
    return wrap_to_2pi(std::atan2(s, c));
}

} // namespace

double wrap_to_pi(double x) {
    double y = std::remainder(x, kTwoPi);
    if (y <= -kPi) y += kTwoPi;
    return y;
}

double wrap_to_2pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    return y;
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

Policy policy_from_string(const std::string& s) {
    if (s == "adaptive") return Policy::Adaptive;
    if (s == "nonadaptive") return Policy::Nonadaptive;
    if (s == "bitwise") return Policy::Bitwise;
    throw BadParameters("unknown policy '" + s + "'");
}

std::string policy_name(Policy p) {
    switch (p) {
        case Policy::Adaptive: return "adaptive";
        case Policy::Nonadaptive: return "nonadaptive";
        case Policy::Bitwise: return "bitwise";
    }
    return "?";
}

FitModel fit_model_from_string(const std::string& s) {
    if (s == "power") return FitModel::PowerLaw;
    if (s == "exp") return FitModel::Exponential;
    if (s == "exp-sqrt") return FitModel::ExponentialSqrt;
    throw BadParameters("unknown fit model '" + s + "'");
}

std::string fit_model_name(FitModel m) {
    switch (m) {
        case FitModel::PowerLaw: return "power";
        case FitModel::Exponential: return "exp";
        case FitModel::ExponentialSqrt: return "exp-sqrt";
    }
    return "?";
}

SchemeSpec preset(const std::string& name, int K, int M, int q) {
    if (name == "none") {
        SchemeSpec s;
        s.preset = "none";
        s.M = 1;
        return s;
    }
    if (M < 1) throw BadParameters("preset: M must be >= 1");
    Schedule sched;
    if (name == "linear_multipass") {
        sched = schedule_linear_multipass(K);
    } else if (name == "quadratic_iterative") {
        sched = schedule_quadratic(K);
    } else if (name == "power_q_iterative") {
        sched = schedule_power_q(K, q);
    } else if (name == "roy_iterative") {
        sched = schedule_roy(K);
    } else {
        throw UnknownPreset("preset: unknown scheme '" + name + "'");
    }
    SchemeSpec s;
    s.preset = name;
    s.components = sched.components;
    s.K = K;
    s.M = M;
    s.q = (name == "quadratic_iterative") ? 2 : q;
    s.resources.bits = K;
    s.resources.copies = M;
    for (const auto& c : s.components) {
        s.resources.qubits += long(M) * c.qubits;
        s.resources.passes += long(M) * c.passes;
    }
    if (name == "linear_multipass") {
        s.resources.passes_alt = long(M) * ((long{1} << (K + 1)) - 1);
        s.notes.push_back("passes: schedule sums to M(2^K-1); the stated M(2^(K+1)-1) is reported alongside");
    }
    if (name == "roy_iterative") s.resources.qubits_alt = long(M) * long(K) * long(K - 1) / 2;
    if (!sched.note.empty()) s.notes.push_back(sched.note);
    return s;
}

namespace {

struct TrialOutput {
    double phase = 0.0, estimate = 0.0;
    std::uint32_t n_outcomes = 0;
};

class Simulator {
public:
    Simulator(const SchemeSpec& spec, const PriorDistribution& prior, const SimulationOptions& opt)
        : spec_(spec), prior_(prior), opt_(opt) {
        if (opt.trials < 1) throw BadParameters("simulate: trials must be >= 1");
        if (opt.grid < (std::size_t{1} << 10) || !std::has_single_bit(opt.grid))
            throw BadParameters("simulate: grid must be a power of two >= 2^10");
        long max_gap = 1;
        for (const auto& c : spec.components) {
            if (c.gap < 1) throw DegenerateComponent("simulate: component gap < 1");
            max_gap = std::max(max_gap, c.gap);
        }
        if (!spec.components.empty() && double(opt.grid) < 16.0 * double(max_gap))
            throw GridTooCoarse("simulate: grid step exceeds 2pi/(16 max_gap)");

        order_.resize(spec.components.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return spec.components[a].gap > spec.components[b].gap; // largest gap first
        });

        if (opt.policy == Policy::Bitwise) prepare_bitwise();

        prior_grid_ = prior.grid_density(opt.grid);
        unit_ = make_gap_table(1, opt.grid);
        for (std::size_t idx : order_) {
            const long gap = spec.components[idx].gap;
            // the adaptive rule also needs the phase factors e^{i 2 gap phi}
            for (long g : {gap, 2 * gap})
                if (!tables_.count(g)) tables_.emplace(g, make_gap_table(g, opt_.grid));
        }
    }

    TrialOutput run_trial(std::uint64_t index, std::vector<double>& posterior) const {
        std::mt19937_64 rng(child_seed(opt_.seed, index));
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        TrialOutput out;
        out.phase = prior_.sample(rng);

        if (opt_.policy == Policy::Bitwise) {
            run_bitwise(out, rng, unif);
            return out;
        }

        posterior = prior_grid_;
        std::size_t meas = 0;
        for (std::size_t idx : order_) {
            const auto& comp = spec_.components[idx];
            const auto& tab = tables_.at(comp.gap);
            for (int copy = 0; copy < spec_.M; ++copy, ++meas) {
                double delta;
                if (opt_.policy == Policy::Adaptive) {
                    delta = best_feedback(posterior, comp.gap);
                } else {
                    delta = (meas % 2 == 0) ? 0.0 : kPi / 2.0;
                }
                const double cphi = std::cos(double(comp.gap) * out.phase - delta);
                const int b = (unif(rng) < 0.5 * (1.0 + cphi)) ? 0 : 1;
                const double sgn = (b == 0) ? 1.0 : -1.0;
                const double cd = std::cos(delta), sd = std::sin(delta);
                double norm = 0.0;
                for (std::size_t i = 0; i < posterior.size(); ++i) {
                    posterior[i] *= 0.5 * (1.0 + sgn * (tab.c[i] * cd + tab.s[i] * sd));
                    norm += posterior[i];
                }
                if (norm <= 0.0) throw Error("simulate: posterior collapsed to zero");
                const double inv = 1.0 / norm;
                for (double& p : posterior) p *= inv;
                ++out.n_outcomes;
            }
        }

        if (opt_.map_estimate) {
            const std::size_t arg = std::size_t(std::max_element(posterior.begin(), posterior.end()) - posterior.begin());
            out.estimate = double(arg) * kTwoPi / double(opt_.grid);
        } else {
            out.estimate = circular_mean(posterior, unit_);
        }
        return out;
    }

private:
    // Feedback for a gap-D component: maximize the expected sharpness of the
    // posterior over the probed variable theta = D phi,
    //   E_b |sum p' e^{i theta}| = |V1/2 + W(delta)/4| + |V1/2 - W(delta)/4|,
    //   W(delta) = e^{-i delta} V2 + e^{i delta},
    // with the moments V1 = sum p e^{i D phi}, V2 = sum p e^{i 2 D phi}.
    // For a unimodal posterior the maximizer is the slope-maximizing
    // mean + pi/2 offset; for the antipodal two-mode ambiguity left by the
    // preceding (gap 2D) stage it is a discriminating angle (where mean + pi/2
    // would yield P(b) = 1/2 at both modes and learn nothing).
    double best_feedback(const std::vector<double>& p, long gap) const {
        cplx v1(0.0, 0.0), v2(0.0, 0.0);
        const GapTable& t1 = tables_.at(gap);
        const GapTable& t2 = tables_.at(2 * gap);
        for (std::size_t i = 0; i < p.size(); ++i) {
            v1 += p[i] * cplx(t1.c[i], t1.s[i]);
            v2 += p[i] * cplx(t2.c[i], t2.s[i]);
        }
        constexpr int kCandidates = 64;
        double best = -1.0, best_delta = 0.0;
        for (int k = 0; k < kCandidates; ++k) {
            const double d = double(k) * kTwoPi / double(kCandidates);
            const cplx w = std::polar(1.0, -d) * v2 + std::polar(1.0, d);
            const double f = std::abs(0.5 * v1 + 0.25 * w) + std::abs(0.5 * v1 - 0.25 * w);
            if (f > best) {
                best = f;
                best_delta = d;
            }
        }
        return best_delta;
    }

    void prepare_bitwise() {
        // requires the exact power-of-two ladder 1, 2, ..., 2^(K-1)
        std::vector<long> gaps;
        for (const auto& c : spec_.components) gaps.push_back(c.gap);
        std::sort(gaps.begin(), gaps.end());
        for (std::size_t k = 0; k < gaps.size(); ++k)
            if (gaps[k] != (long{1} << k))
                throw BadParameters("bitwise policy requires gaps 1,2,...,2^(K-1)");
    }

    void run_bitwise(TrialOutput& out, std::mt19937_64& rng, std::uniform_real_distribution<double>& unif) const {
        const std::size_t kbits = spec_.components.size();
        double lower_bits = 0.0; // 2pi * 0.b_{k+1} b_{k+2} ...
        std::vector<int> bits(kbits, 0);
        for (std::size_t pos = 0; pos < kbits; ++pos) {
            const std::size_t idx = order_[pos]; // largest gap = least significant bit first
            const long gap = spec_.components[idx].gap;
            const double delta = lower_bits * double(gap);
            int votes = 0;
            for (int copy = 0; copy < spec_.M; ++copy) {
                const double cphi = std::cos(double(gap) * out.phase - delta);
                const int b = (unif(rng) < 0.5 * (1.0 + cphi)) ? 0 : 1;
                votes += b;
                ++out.n_outcomes;
            }
            bits[pos] = (2 * votes > spec_.M) ? 1 : 0;
            lower_bits = 0.0;
            for (std::size_t j = 0; j <= pos; ++j) {
                const long gj = spec_.components[order_[j]].gap;
                lower_bits += bits[j] * kPi / double(gj); // 2pi * b_j / (2 g_j)
            }
        }
        out.estimate = wrap_to_2pi(lower_bits + kPi / double(2 * spec_.components[order_.front()].gap));
    }

    const SchemeSpec& spec_;
    const PriorDistribution& prior_;
    const SimulationOptions& opt_;
    std::vector<std::size_t> order_;
    std::vector<double> prior_grid_;
    GapTable unit_;
    std::map<long, GapTable> tables_;
};

MiEstimate auto_mi(const std::vector<TrialRecord>& records, int requested) {
    if (requested < 0) return {};
    if (requested > 0) return mutual_information(records, requested);
    // auto: largest bin count in {32, 16, 8} the sample size supports
    for (int b : {32, 16, 8})
        if (double(records.size()) >= 10.0 * double(b) * double(b)) return mutual_information(records, b);
    return {};
}

} // namespace

EstimationReport simulate(const SchemeSpec& spec, const PriorDistribution& prior, const SimulationOptions& opt) {
    Simulator sim(spec, prior, opt);

    const std::uint64_t T = opt.trials;
    std::vector<TrialOutput> outputs(T);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nthreads = std::min<std::uint64_t>(opt.threads > 0 ? unsigned(opt.threads) : hw, T);

    auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<double> posterior;
        for (std::uint64_t t = lo; t < hi; ++t) outputs[t] = sim.run_trial(t, posterior);
    };
    if (nthreads <= 1) {
        worker(0, T);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (T + nthreads - 1) / nthreads;
        for (unsigned i = 0; i < nthreads; ++i) {
            const std::uint64_t lo = std::uint64_t(i) * chunk;
            if (lo >= T) break;
            pool.emplace_back(worker, lo, std::min(lo + chunk, T));
        }
        for (auto& th : pool) th.join();
    }

    RunningStats st;
    st.wrapped.reserve(T);
    st.raw.reserve(T);
    std::vector<TrialRecord> records(T);
    for (std::uint64_t t = 0; t < T; ++t) {
        const auto& o = outputs[t];
        const double w = wrap_to_pi(o.estimate - o.phase);
        st.add(w, o.estimate - o.phase);
        records[t] = {o.phase, o.estimate, w, o.n_outcomes};
    }

    EstimationReport rep;
    rep.preset = spec.preset;
    rep.policy = policy_name(opt.policy);
    rep.prior = prior.describe();
    rep.trials = T;
    rep.seed = opt.seed;
    rep.grid = opt.grid;
    rms_with_stderr(st.wrapped, st.sum_w2, &rep.eps, &rep.eps_stderr);
    rms_with_stderr(st.raw, st.sum_r2, &rep.eps_raw, &rep.eps_raw_stderr);
    holevo_with_stderr(st, &rep.holevo, &rep.holevo_stderr, &rep.sharpness);
    rep.mi = auto_mi(records, opt.mi_bins);
    rep.asymmetry_composite = composite_probe_asymmetry(spec);
    rep.bound_error_lower = error_lower_bound(rep.asymmetry_composite, prior);
    if (spec.preset != "none") {
        SchemeQuery q;
        q.preset = spec.preset;
        q.K = spec.K;
        q.M = spec.M;
        q.q = spec.q;
        rep.bound_scheme = scheme_bound(q, prior).error_lower;
    }
    rep.resources = spec.resources;
    rep.notes = spec.notes;
    if (opt.keep_records) rep.records = std::move(records);
    return rep;
}

double canonical_exact_error(std::uint64_t D) {
    if (D < 1) throw BadParameters("canonical_exact_error: D must be >= 1");
    double sum = 0.0;
    for (std::uint64_t d = D; d-- > 1;) {
        const double term = (1.0 - double(d) / double(D)) / (double(d) * double(d));
        sum += (d % 2 == 1) ? -term : term;
    }
    return std::sqrt(kPi * kPi / 3.0 + 4.0 * sum);
}

EstimationReport canonical_sample(int K, const PriorDistribution& prior, std::uint64_t trials, std::uint64_t seed) {
    if (K < 1 || K > 24) throw SizeExceeded("canonical_sample: K must be in 1..24");
    if (trials < 1) throw BadParameters("canonical_sample: trials must be >= 1");
    const std::uint64_t D = std::uint64_t{1} << K;

    // cell-midpoint pmf of the Fejer kernel on (-pi, pi], 2^16 cells
    const std::size_t n = std::size_t{1} << 16;
    const double h = kTwoPi / double(n);
    std::vector<double> cdf(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = -kPi + (double(j) + 0.5) * h;
        const double s = std::sin(0.5 * theta);
        double p;
        if (std::abs(s) < 1e-12) {
            p = double(D) / kTwoPi;
        } else {
            const double num = std::sin(0.5 * double(D) * theta);
            p = num * num / (s * s) / (kTwoPi * double(D));
        }
        cdf[j + 1] = cdf[j] + p * h;
    }
    const double total = cdf.back();
    for (double& c : cdf) c /= total;

    RunningStats st;
    std::vector<TrialRecord> records(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(child_seed(seed, t));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double phi = prior.sample(rng);
        const double u = unif(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t j = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cdf.begin() - 1, 0), n - 1);
        const double span = cdf[j + 1] - cdf[j];
        const double f = span > 0.0 ? (u - cdf[j]) / span : 0.5;
        const double theta = -kPi + (double(j) + f) * h;
        const double est = wrap_to_2pi(phi + theta);
        const double w = wrap_to_pi(est - phi);
        st.add(w, est - phi);
        records[t] = {phi, est, w, 1};
    }

    EstimationReport rep;
    rep.preset = "canonical";
    rep.policy = "canonical";
    rep.prior = prior.describe();
    rep.trials = trials;
    rep.seed = seed;
    rep.grid = n;
    rms_with_stderr(st.wrapped, st.sum_w2, &rep.eps, &rep.eps_stderr);
    rms_with_stderr(st.raw, st.sum_r2, &rep.eps_raw, &rep.eps_raw_stderr);
    holevo_with_stderr(st, &rep.holevo, &rep.holevo_stderr, &rep.sharpness);
    rep.mi = auto_mi(records, 0);
    rep.asymmetry_composite = double(K) * std::log(2.0);
    rep.bound_error_lower = error_lower_bound(rep.asymmetry_composite, prior);
    rep.eps_exact = canonical_exact_error(D);
    rep.resources.qubits = K;
    rep.resources.bits = K;
    rep.resources.copies = 1;
    rep.resources.passes = long(D) - 1;
    rep.resources.passes_alt = 2 * long(D) - 1;
    SchemeQuery q;
    q.preset = "linear_multipass";
    q.K = K;
    q.M = 1;
    rep.bound_scheme = scheme_bound(q, prior).error_lower;
    return rep;
}

MiEstimate mutual_information(const std::vector<TrialRecord>& records, int bins) {
    if (bins < 8) throw BadParameters("mutual_information: bins must be >= 8");
    const std::size_t T = records.size();
    if (double(T) < 10.0 * double(bins) * double(bins))
        throw InsufficientSamples("mutual_information: need T >= 10 B^2 samples");

    const std::size_t B = std::size_t(bins);
    std::vector<std::size_t> joint(B * B, 0), rows(B, 0), cols(B, 0);
    std::vector<std::size_t> cell_of(T);
    for (std::size_t t = 0; t < T; ++t) {
        auto bin_of = [&](double x) {
            const auto b = std::size_t(wrap_to_2pi(x) / kTwoPi * double(B));
            return std::min(b, B - 1);
        };
        const std::size_t r = bin_of(records[t].phase), c = bin_of(records[t].estimate);
        cell_of[t] = r * B + c;
        ++joint[r * B + c];
        ++rows[r];
        ++cols[c];
    }

    auto nlogn = [](std::size_t n) { return n > 1 ? double(n) * std::log(double(n)) : 0.0; };
    double jj = 0.0, jr = 0.0, jc = 0.0;
    std::size_t mj = 0, mr = 0, mc = 0;
    for (std::size_t i = 0; i < B * B; ++i) {
        jj += nlogn(joint[i]);
        if (joint[i]) ++mj;
    }
    for (std::size_t i = 0; i < B; ++i) {
        jr += nlogn(rows[i]);
        if (rows[i]) ++mr;
        jc += nlogn(cols[i]);
        if (cols[i]) ++mc;
    }

    auto mi_from = [&](double sj, double sr, double sc, std::size_t kj, std::size_t kr, std::size_t kc, double nn) {
        // H = ln N - J/N per margin; Miller-Madow adds (m-1)/(2N) to each entropy
        const double plug = (std::log(nn) - sr / nn) + (std::log(nn) - sc / nn) - (std::log(nn) - sj / nn);
        const double mm = (double(kj) - double(kr) - double(kc) + 1.0) / (2.0 * nn);
        return plug + mm;
    };

    MiEstimate est;
    est.bins = bins;
    est.value = mi_from(jj, jr, jc, mj, mr, mc, double(T));

    // leave-one-out values are identical for trials sharing a cell
    std::map<std::size_t, double> loo_by_cell;
    std::vector<double> loo(T);
    for (std::size_t t = 0; t < T; ++t) {
        const std::size_t cell = cell_of[t];
        auto it = loo_by_cell.find(cell);
        if (it == loo_by_cell.end()) {
            const std::size_t r = cell / B, c = cell % B;
            const std::size_t nj = joint[cell], nr = rows[r], nc = cols[c];
            const double sj = jj - nlogn(nj) + nlogn(nj - 1);
            const double sr = jr - nlogn(nr) + nlogn(nr - 1);
            const double sc = jc - nlogn(nc) + nlogn(nc - 1);
            const std::size_t kj = mj - (nj == 1 ? 1 : 0);
            const std::size_t kr = mr - (nr == 1 ? 1 : 0);
            const std::size_t kc = mc - (nc == 1 ? 1 : 0);
            it = loo_by_cell.emplace(cell, mi_from(sj, sr, sc, kj, kr, kc, double(T - 1))).first;
        }
        loo[t] = it->second;
    }
    est.stderr_value = jackknife_stderr(loo);
    return est;
}

ScanReport scaling_scan(const std::string& preset_name, int k_lo, int k_hi, int M, int q,
                        const PriorDistribution& prior, const SimulationOptions& opt, FitModel model) {
    if (k_hi - k_lo + 1 < 4) throw BadParameters("scaling_scan: need at least 4 scan points");
    ScanReport scan;
    scan.preset = preset_name;
    scan.fit_model = fit_model_name(model);

    for (int K = k_lo; K <= k_hi; ++K) {
        SimulationOptions o = opt;
        o.seed = child_seed(opt.seed, std::uint64_t(K));
        o.mi_bins = -1;
        EstimationReport rep;
        if (preset_name == "linear_multipass" && M == 1) {
            rep = canonical_sample(K, prior, o.trials, o.seed);
        } else {
            const SchemeSpec spec = preset(preset_name, K, M, q);
            long max_gap = 1;
            for (const auto& c : spec.components) max_gap = std::max(max_gap, c.gap);
            while (double(o.grid) < 16.0 * double(max_gap)) o.grid <<= 1;
            rep = simulate(spec, prior, o);
        }
        ScanPoint pt;
        pt.K = K;
        pt.n = double(rep.resources.qubits);
        pt.eps = rep.eps;
        pt.eps_stderr = rep.eps_stderr;
        pt.bound = rep.bound_scheme;
        scan.points.push_back(pt);
    }

    std::vector<double> x, y;
    for (const auto& pt : scan.points) {
        switch (model) {
            case FitModel::PowerLaw: x.push_back(std::log(pt.n)); break;
            case FitModel::Exponential: x.push_back(pt.n); break;
            case FitModel::ExponentialSqrt: x.push_back(std::sqrt(pt.n)); break;
        }
        y.push_back(std::log(pt.eps));
    }
    const double n = double(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    scan.slope = sxy / sxx;
    scan.intercept = my - scan.slope * mx;
    double ssres = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (scan.intercept + scan.slope * x[i]);
        scan.residuals.push_back(r);
        ssres += r * r;
    }
    scan.r_squared = syy > 0.0 ? 1.0 - ssres / syy : 1.0;
    return scan;
}

} // namespace qmet
