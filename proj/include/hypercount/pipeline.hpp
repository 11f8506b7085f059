#ifndef HYPERCOUNT_PIPELINE_HPP
#define HYPERCOUNT_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypercount/bisection.hpp"
#include "hypercount/bounds.hpp"
#include "hypercount/factors.hpp"
#include "hypercount/parallel.hpp"
#include "hypercount/report.hpp"
#include "hypercount/stitch.hpp"

namespace hypercount {

struct PipelineConfig {
    std::string mode = "cycle"; // cycle, power or factor
    std::string input;          // recorded only
    unsigned ell = 0;           // cycle mode; 0 means k-1
    unsigned t = 0;             // power mode clique size
    std::string pattern;        // factor mode pattern file; empty means a single edge
    unsigned d = 0;             // factor mode degree order; 0 means k-1
    Rational mu{1, 2};
    std::size_t m = 6;
    Rational delta{1, 2};
    Rational gamma{1, 10};
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultSearchBudget;
    unsigned workers = 1;
    unsigned junction_retries = 20;
    std::string stitch_on = "good"; // good or all
    bool exact = false;
    std::size_t samples = 3;
    unsigned bits = 64;
};

// Runs f(), prefixing any library error with the stage name and keeping its type.
template <class F>
auto run_stage(const std::string& name, F&& f) -> decltype(f()) {
    const std::string p = "stage " + name + ": ";
    try {
        return f();
    } catch (const budget_exhausted& e) {
        throw budget_exhausted(p + e.what());
    } catch (const divisibility_error& e) {
        throw divisibility_error(p + e.what());
    } catch (const invalid_query& e) {
        throw invalid_query(p + e.what());
    } catch (const invalid_structure& e) {
        throw invalid_structure(p + e.what());
    } catch (const construction_error& e) {
        throw construction_error(p + e.what());
    } catch (const io_error& e) {
        throw io_error(p + e.what());
    } catch (const error& e) {
        throw error(p + e.what());
    }
}

inline json pipeline_config_json(const PipelineConfig& c, const Hypergraph& h) {
    return json{{"command", "pipeline"},
                {"mode", c.mode},
                {"input", c.input},
                {"n", h.n()},
                {"k", h.k()},
                {"ell", c.ell},
                {"t", c.t},
                {"pattern", c.pattern},
                {"d", c.d},
                {"mu", to_string(c.mu)},
                {"m", c.m},
                {"delta", to_string(c.delta)},
                {"gamma", to_string(c.gamma)},
                {"trials", c.trials},
                {"seed", c.seed},
                {"budget", c.budget},
                {"workers", c.workers},
                {"junction_retries", c.junction_retries},
                {"stitch_on", c.stitch_on},
                {"exact", c.exact},
                {"samples", c.samples},
                {"bits", c.bits}};
}

namespace detail {

struct TrialRecord {
    std::uint64_t seed = 0;
    bool good = false;
    std::optional<Rational> min_ratio;
    std::size_t violations = 0;
    bool events_hold = false;
    std::size_t clamped = 0;
    bool consistent = true;
    bool attempted = false;
    bool stitched = false;
    std::optional<bool> sound;
    std::optional<std::size_t> multiplicity;
    json certificate;
};

inline json optional_json(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }
inline json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

} // namespace detail

// size_vector, then per trial: random_bisection, goodness check, stitch
// (on good partitions, or on all with stitch_on = "all"), and an
// independent re-validation of every stitched structure.
inline Report run_pipeline(const Hypergraph& h, const PipelineConfig& c, const std::optional<FactorSpec>& pattern = {}) {
    if (c.mode != "cycle" && c.mode != "power" && c.mode != "factor")
        throw invalid_query("unknown mode '" + c.mode + "' (cycle, power or factor)");
    if (c.stitch_on != "good" && c.stitch_on != "all") throw invalid_query("stitch_on must be good or all");
    if (c.trials < 1) throw invalid_query("trials must be at least 1");
    const unsigned k = h.k();
    const unsigned ell = c.ell ? c.ell : k - 1;
    const unsigned d = c.d ? c.d : k - 1;
    // ell and d are recorded resolved, so the emitted config re-runs identically.
    const FactorSpec fspec = pattern ? *pattern : FactorSpec::single_edge(k);
    const GoodnessSpec spec{c.delta, c.gamma};
    run_stage("config", [&] {
        spec.validate();
        if (c.mode == "cycle" && (ell < 1 || ell >= k)) throw invalid_query("ell must lie in [1, k-1]");
        if (c.mode == "power" && c.t < k) throw invalid_query("power mode needs t >= k");
        if (c.mode == "factor") fspec.validate(k);
    });

    std::size_t divisor = 1;
    if (c.mode == "cycle") divisor = k - ell;
    if (c.mode == "factor") divisor = fspec.t();
    const SizeVector sv = run_stage("size_vector", [&] { return size_vector(h.n(), c.m, divisor, k); });
    const Rational target = c.delta + c.gamma / 2;

    std::vector<detail::TrialRecord> records(c.trials);
    parallel_for(c.trials, c.workers, [&](std::size_t trial) {
        auto& rec = records[trial];
        rec.seed = derive_seed(c.seed, "bisection", trial);
        const auto res = run_stage("bisection", [&] { return random_bisection(h, sv, spec, rec.seed); });
        rec.events_hold = true;
        for (unsigned i = 0; i <= res.trace.s; ++i) {
            rec.events_hold = rec.events_hold && res.trace.level_holds(i);
            for (const auto& b : res.trace.levels[i]) rec.clamped += b.clamped;
        }
        rec.consistent = trace_is_consistent(res.trace, sv);
        const auto report = run_stage("goodness", [&] {
            return c.mode == "factor" ? check_good_factor(h, res.partition, d, c.mu, sv, 0)
                                      : check_good(h, res.partition, target, sv, 0);
        });
        rec.good = report.good();
        rec.min_ratio = report.min_ratio;
        rec.violations = report.violation_count;
        if (!rec.good && c.stitch_on == "good") return;
        rec.attempted = true;
        StitchOptions opts{c.junction_retries, c.budget, derive_seed(c.seed, "stitch", trial)};
        run_stage("stitch", [&] {
            if (c.mode == "cycle") {
                if (auto cert = stitch_cycle(h, res.partition, ell, opts)) {
                    rec.stitched = true;
                    rec.sound = is_hamilton_ell_cycle(h, cert->cycle) && is_respecting(cert->cycle, res.partition);
                    rec.multiplicity = respecting_multiplicity(cert->cycle, sv);
                    rec.certificate = to_json(*cert);
                }
            } else if (c.mode == "power") {
                if (auto cert = stitch_power_cycle(h, res.partition, c.t, opts)) {
                    rec.stitched = true;
                    rec.sound = cert->cycle.order.size() == h.n() && validate_power_cycle(h, cert->cycle) &&
                                is_respecting(cert->cycle, res.partition);
                    rec.multiplicity = respecting_multiplicity(cert->cycle, sv);
                    rec.certificate = to_json(*cert);
                }
            } else {
                if (auto dec = stitch_factor(h, res.partition, fspec, c.budget)) {
                    rec.stitched = true;
                    bool ok = verify_decomposition(h, fspec, *dec);
                    for (const auto& block : res.partition.blocks) {
                        FactorDecomposition part;
                        for (const auto& copy : dec->copies)
                            if (std::binary_search(block.begin(), block.end(), copy.front())) part.copies.push_back(copy);
                        ok = ok && verify_decomposition(h, fspec, part, block);
                    }
                    rec.sound = ok;
                    rec.certificate = to_json(*dec);
                    rec.certificate["blocks"] = res.partition.blocks;
                }
            }
        });
    });

    Report out;
    PipelineConfig resolved = c;
    resolved.ell = ell;
    resolved.d = d;
    out.config = pipeline_config_json(resolved, h);
    out.columns = {"trial", "seed", "good", "min_ratio", "violations", "events_hold", "clamped_events",
                   "trace_consistent", "stitch_attempted", "stitched", "sound", "multiplicity"};
    std::size_t good = 0, attempts = 0, successes = 0, unsound = 0, inconsistent = 0;
    std::optional<std::size_t> max_mult;
    for (std::size_t t = 0; t < records.size(); ++t) {
        const auto& r = records[t];
        good += r.good;
        attempts += r.attempted;
        successes += r.stitched;
        unsound += r.sound && !*r.sound;
        inconsistent += !r.consistent;
        if (r.multiplicity && (!max_mult || *r.multiplicity > *max_mult)) max_mult = r.multiplicity;
        out.rows.push_back({t, r.seed, r.good, r.min_ratio ? json(to_string(*r.min_ratio)) : json(nullptr),
                            r.violations, r.events_hold, r.clamped, r.consistent, r.attempted, r.stitched,
                            detail::optional_json(r.sound), detail::optional_json(r.multiplicity)});
        if (r.stitched && out.samples.size() < c.samples) out.samples["trial_" + std::to_string(t)] = r.certificate;
    }

    auto& s = out.summary;
    std::string sizes;
    for (auto x : sv.sizes) sizes += (sizes.empty() ? "" : " ") + std::to_string(x);
    s["sizes"] = sizes;
    s["blocks"] = sv.blocks();
    s["levels"] = sv.levels();
    s["trials"] = c.trials;
    s["good"] = good;
    s["goodness_fraction"] = static_cast<double>(good) / static_cast<double>(c.trials);
    const auto wi = wilson_interval(good, c.trials);
    s["goodness_wilson_lower"] = wi.lower;
    s["goodness_wilson_upper"] = wi.upper;
    s["inconsistent_traces"] = inconsistent;
    s["stitch_attempts"] = attempts;
    s["stitch_successes"] = successes;
    s["stitch_success_rate"] = attempts ? json(static_cast<double>(successes) / static_cast<double>(attempts))
                                        : json(nullptr);
    s["unsound_outputs"] = unsound;
    if (c.mode != "factor") {
        s["max_multiplicity"] = detail::optional_json(max_mult);
        s["multiplicity_bound"] = 2 * h.n();
    }

    const CountBound bound = run_stage("bounds", [&] {
        return c.mode == "factor" ? factor_lower_bound(h.n(), fspec.t(), sv, c.bits)
                                  : lower_bound_count(h.n(), sv, c.bits);
    });
    s["lower_bound"] = format_interval(*bound.value);
    if (c.mode == "factor") s["partition_multiplicity_bound"] = to_string(partition_multiplicity_bound(h.n(), fspec.t()));

    if (c.exact) {
        std::optional<BigInt> exact;
        try {
            exact = run_stage("exact", [&] {
                if (c.mode == "cycle")
                    return enumerate_hamilton_ell_cycles(h, ell, EnumerationMode::count, c.budget, c.workers).count;
                if (c.mode == "power")
                    return enumerate_hamilton_ell_cycles(clique_graph(h, c.t, c.budget), c.t - 1, EnumerationMode::count,
                                                         c.budget, c.workers)
                        .count;
                return count_f_factors(h, fspec, c.budget);
            });
        } catch (const budget_exhausted&) {
        }
        s["exact_status"] = exact ? "ok" : "budget_exhausted";
        s["exact_count"] = exact ? json(to_string(*exact)) : json(nullptr);
        s["bound_le_exact"] = exact ? json(bound.certainly_at_most(Rational(*exact))) : json(nullptr);
    }
    return out;
}

} // namespace hypercount

#endif // HYPERCOUNT_PIPELINE_HPP
