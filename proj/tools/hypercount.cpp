#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypercount/hypercount.hpp"

using namespace hypercount;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct Common {
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultSearchBudget;
    unsigned workers = 1;
    std::string out;
    std::string format = "json";
    bool force = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "root seed")->capture_default_str();
    cmd->add_option("--budget", c.budget, "search node budget")->capture_default_str();
    cmd->add_option("--workers", c.workers, "worker threads")->capture_default_str();
    cmd->add_option("--out", c.out, "output path (stdout if omitted)");
    cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_flag("--force", c.force, "overwrite an existing output file");
}

// Existing outputs are never modified unless --force is given.
void emit(const std::string& text, const std::string& path, bool force) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    if (!force && std::filesystem::exists(path))
        throw io_error("refusing to overwrite " + path + " (use --force)");
    write_text_file(path, text);
}

void emit_report(const Report& r, const Common& c) { emit(render_report(r, c.format), c.out, c.force); }

json common_config(const std::string& command, const Common& c) {
    return json{{"command", command}, {"seed", c.seed}, {"budget", c.budget}, {"workers", c.workers},
                {"format", c.format}};
}

std::vector<Vertex> parse_vertices(const std::string& text) {
    std::istringstream in(text);
    std::vector<Vertex> out;
    long long v;
    while (in >> v) {
        if (v < 0) throw invalid_query("negative vertex in '" + text + "'");
        out.push_back(static_cast<Vertex>(v));
    }
    if (!in.eof()) throw invalid_query("cannot parse vertex list '" + text + "'");
    return out;
}

SizeVector partition_sizes(const Partition& p, unsigned k) {
    SizeVector sv;
    sv.sizes = p.sizes();
    sv.k = k;
    return sv;
}

// ---- generate

struct GenerateArgs {
    std::string family = "complete";
    std::size_t n = 0;
    unsigned k = 3;
    double p = 0.5;
    unsigned ell = 0;
    double noise = 0;
    std::string pattern;
    std::string planted_out;
};

int cmd_generate(const GenerateArgs& a, const Common& c) {
    if (a.n == 0) throw invalid_query("--n is required");
    if (a.p < 0 || a.p > 1 || a.noise < 0 || a.noise > 1) throw invalid_query("probabilities must lie in [0,1]");
    const unsigned ell = a.ell ? a.ell : a.k - 1;
    std::optional<Hypergraph> h;
    json planted;
    if (a.family == "complete") {
        h.emplace(Hypergraph::complete(a.n, a.k));
    } else if (a.family == "binomial") {
        h.emplace(gen_random(a.n, a.k, a.p, c.seed));
    } else if (a.family == "planted-cycle") {
        auto pl = planted_cycle(a.n, a.k, ell, c.seed, a.noise);
        h.emplace(std::move(pl.graph));
        planted = json{{"kind", "cycle"}, {"ell", ell}, {"k", a.k}, {"order", pl.structure.order}};
    } else if (a.family == "planted-path") {
        auto pl = planted_path(a.n, a.k, ell, c.seed, a.noise);
        h.emplace(std::move(pl.graph));
        planted = json{{"kind", "path"}, {"ell", ell}, {"k", a.k}, {"order", pl.structure.order}};
    } else {
        FactorSpec spec = a.pattern.empty() ? FactorSpec::single_edge(a.k) : FactorSpec{read_edge_list_file(a.pattern)};
        auto pl = planted_factor(a.n, spec, c.seed, a.noise);
        h.emplace(std::move(pl.graph));
        planted = json{{"kind", "factor"}, {"copies", pl.structure.copies}};
    }
    emit(edge_list_string(*h), c.out, c.force);
    if (!a.planted_out.empty()) {
        if (planted.is_null()) throw invalid_query("--planted-out needs a planted family");
        emit(planted.dump(2) + "\n", a.planted_out, c.force);
    }
    return 0;
}

// ---- partition

struct PartitionArgs {
    std::string in;
    std::size_t m = 6;
    std::string delta = "1/2", gamma = "1/10";
    std::size_t divisor = 1;
    std::size_t trials = 1;
    std::string blocks_out;
};

int cmd_partition(const PartitionArgs& a, const Common& c) {
    const auto h = read_edge_list_file(a.in);
    const GoodnessSpec spec{parse_rational(a.delta), parse_rational(a.gamma)};
    spec.validate();
    const auto sv = size_vector(h.n(), a.m, a.divisor, h.k());
    const auto res = random_bisection(h, sv, spec, derive_seed(c.seed, "bisection", 0));
    const auto good = check_good(h, res.partition, spec.delta + spec.gamma / 2, sv);

    Report r;
    r.config = common_config("partition", c);
    r.config.update(json{{"input", a.in}, {"m", a.m}, {"delta", a.delta}, {"gamma", a.gamma},
                         {"divisor", a.divisor}, {"trials", a.trials}});
    std::string sizes;
    for (auto x : sv.sizes) sizes += (sizes.empty() ? "" : " ") + std::to_string(x);
    r.summary = json{{"sizes", sizes},
                     {"good", good.good()},
                     {"min_ratio", good.min_ratio ? json(to_string(*good.min_ratio)) : json(nullptr)},
                     {"violations", good.violation_count},
                     {"trace_consistent", trace_is_consistent(res.trace, sv)}};
    if (a.trials > 1) {
        const auto est = estimate_good_probability(h, sv, spec, a.trials, c.seed, c.workers);
        r.summary["estimate_trials"] = est.trials;
        r.summary["estimate_good"] = est.good;
        r.summary["estimate_fraction"] = est.fraction;
        r.summary["estimate_wilson_lower"] = est.interval.lower;
        r.summary["estimate_wilson_upper"] = est.interval.upper;
        r.columns = {"level", "given", "both", "frequency", "claimed_lower_bound"};
        for (const auto& l : est.levels)
            r.rows.push_back({l.level, l.given, l.both, l.frequency ? json(*l.frequency) : json(nullptr),
                              l.claimed_lower_bound});
    }
    r.samples["partition"] = res.partition.blocks;
    r.samples["trace"] = to_json(res.trace);
    if (!a.blocks_out.empty()) emit(blocks_string(res.partition.blocks), a.blocks_out, c.force);
    emit_report(r, c);
    return 0;
}

// ---- stitch

struct StitchArgs {
    std::string in, blocks;
    unsigned ell = 0, t = 0;
    unsigned retries = 20;
};

int cmd_stitch(const StitchArgs& a, const Common& c) {
    const auto h = read_edge_list_file(a.in);
    const auto p = sorted_partition(read_blocks_file(a.blocks));
    const StitchOptions opts{a.retries, c.budget, derive_seed(c.seed, "stitch", 0)};
    Report r;
    r.config = common_config("stitch", c);
    r.config.update(json{{"input", a.in}, {"blocks", a.blocks}, {"ell", a.ell}, {"t", a.t}, {"retries", a.retries}});
    const auto sv = partition_sizes(p, h.k());
    if (a.t) {
        auto cert = stitch_power_cycle(h, p, a.t, opts);
        r.summary["stitched"] = cert.has_value();
        if (cert) {
            r.summary["valid"] = validate_power_cycle(h, cert->cycle);
            r.summary["respecting"] = is_respecting(cert->cycle, p);
            r.summary["multiplicity"] = respecting_multiplicity(cert->cycle, sv);
            r.samples["certificate"] = to_json(*cert);
        }
    } else {
        const unsigned ell = a.ell ? a.ell : h.k() - 1;
        auto cert = stitch_cycle(h, p, ell, opts);
        r.summary["stitched"] = cert.has_value();
        if (cert) {
            r.summary["valid"] = is_hamilton_ell_cycle(h, cert->cycle);
            r.summary["respecting"] = is_respecting(cert->cycle, p);
            r.summary["multiplicity"] = respecting_multiplicity(cert->cycle, sv);
            r.samples["certificate"] = to_json(*cert);
        }
    }
    emit_report(r, c);
    return 0;
}

// ---- count

struct CountArgs {
    std::string in;
    unsigned ell = 0, t = 0;
    bool list = false;
    std::size_t m = 0;
    std::string psi_delta;
};

int cmd_count(const CountArgs& a, const Common& c) {
    const auto h = read_edge_list_file(a.in);
    const unsigned ell = a.ell ? a.ell : h.k() - 1;
    const auto mode = a.list ? EnumerationMode::list : EnumerationMode::count;
    const auto result = a.t ? enumerate_hamilton_ell_cycles(clique_graph(h, a.t, c.budget), a.t - 1, mode, c.budget,
                                                            c.workers)
                            : enumerate_hamilton_ell_cycles(h, ell, mode, c.budget, c.workers);
    Report r;
    r.config = common_config("count", c);
    r.config.update(json{{"input", a.in}, {"ell", a.ell}, {"t", a.t}, {"list", a.list}, {"m", a.m},
                         {"psi_delta", a.psi_delta}});
    r.summary["n"] = h.n();
    r.summary["k"] = h.k();
    r.summary["count"] = to_string(result.count);
    if (a.m) {
        const auto sv = size_vector(h.n(), a.m, a.t ? 1 : h.k() - ell, h.k());
        const auto bound = lower_bound_count(h.n(), sv);
        r.summary["lower_bound"] = format_interval(*bound.value);
        r.summary["bound_le_count"] = bound.certainly_at_most(Rational(result.count));
    }
    if (!a.psi_delta.empty()) {
        const auto psi = expected_random_count(h.n(), h.k(), ell, parse_rational(a.psi_delta), c.budget, c.workers);
        r.summary["psi"] = to_string(*psi.exact_value);
    }
    if (a.list) {
        r.columns = {"index", "order"};
        for (std::size_t i = 0; i < result.cycles.size(); ++i) {
            std::string order;
            for (auto v : result.cycles[i].order) order += (order.empty() ? "" : " ") + std::to_string(v);
            r.rows.push_back({i, order});
        }
    }
    emit_report(r, c);
    return 0;
}

// ---- factors

struct FactorsArgs {
    std::string in, pattern, blocks;
    bool count = false, relation = false;
};

int cmd_factors(const FactorsArgs& a, const Common& c) {
    const auto h = read_edge_list_file(a.in);
    const FactorSpec spec = a.pattern.empty() ? FactorSpec::single_edge(h.k()) : FactorSpec{read_edge_list_file(a.pattern)};
    Report r;
    r.config = common_config("factors", c);
    r.config.update(json{{"input", a.in}, {"pattern", a.pattern}, {"blocks", a.blocks}, {"count", a.count},
                         {"relation", a.relation}});
    std::optional<FactorDecomposition> dec;
    if (!a.blocks.empty()) {
        const auto p = sorted_partition(read_blocks_file(a.blocks));
        dec = stitch_factor(h, p, spec, c.budget);
    } else {
        dec = find_f_factor(h, spec, c.budget);
    }
    r.summary["found"] = dec.has_value();
    if (dec) {
        r.summary["valid"] = verify_decomposition(h, spec, *dec);
        r.samples["decomposition"] = to_json(*dec);
    }
    if (a.count) r.summary["count"] = to_string(count_f_factors(h, spec, c.budget));
    if (a.relation) {
        const auto rel = matching_zero_cycle_relation(h, c.budget);
        r.summary["matchings"] = to_string(rel.matchings);
        r.summary["zero_cycle_arrangements"] = to_string(rel.zero_cycle_arrangements);
        r.summary["predicted_arrangements"] = to_string(rel.predicted);
        r.summary["ratio_check"] = rel.ratio_check;
    }
    emit_report(r, c);
    return 0;
}

// ---- absorb-classify

struct AbsorbArgs {
    std::string in;
    unsigned ell = 0;
    std::string beta = "1/100";
    unsigned t_abs = 4;
    std::vector<std::string> sets;
};

int cmd_absorb(const AbsorbArgs& a, const Common& c) {
    const auto h = read_edge_list_file(a.in);
    const unsigned ell = a.ell ? a.ell : h.k() - 1;
    if (ell < 1 || ell >= h.k()) throw invalid_query("ell must lie in [1, k-1]");
    const AbsorberConfig cfg{parse_rational(a.beta), a.t_abs};
    std::vector<std::vector<Vertex>> sets;
    for (const auto& s : a.sets) sets.push_back(parse_vertices(s));
    if (sets.empty())
        for_each_combination(iota_vertices(h.n()), h.k() - ell,
                             [&](std::span<const Vertex> s) { sets.emplace_back(s.begin(), s.end()); });
    Report r;
    r.config = common_config("absorb-classify", c);
    r.config.update(json{{"input", a.in}, {"ell", ell}, {"beta", a.beta}, {"t_abs", a.t_abs}, {"sets", a.sets}});
    r.columns = {"set", "count", "good"};
    std::size_t good = 0;
    std::string threshold;
    for (const auto& s : sets) {
        if (s.size() != h.k() - ell) throw invalid_query("every set needs k-ell vertices");
        const auto cls = classify_set(h, s, cfg, c.budget);
        good += cls.good;
        threshold = to_string(cls.threshold);
        std::string text;
        for (auto v : s) text += (text.empty() ? "" : " ") + std::to_string(v);
        r.rows.push_back({text, to_string(cls.count), cls.good});
    }
    r.summary = json{{"sets", sets.size()}, {"good_sets", good}, {"threshold", threshold}};
    emit_report(r, c);
    return 0;
}

// ---- verify

struct VerifyArgs {
    std::string in, order, certificate, blocks;
    std::string kind = "cycle";
    unsigned ell = 0, t = 0;
};

int cmd_verify(const VerifyArgs& a, const Common& c) {
    const auto h = read_edge_list_file(a.in);
    std::vector<Vertex> order;
    if (!a.certificate.empty()) {
        std::ifstream in(a.certificate);
        if (!in) throw io_error("cannot open " + a.certificate + " for reading");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw io_error(a.certificate + ": " + e.what());
        }
        const json* node = &j;
        if (j.contains("samples") && j["samples"].contains("certificate")) node = &j["samples"]["certificate"];
        if (!node->contains("order")) throw io_error(a.certificate + ": no vertex order found");
        order = (*node)["order"].get<std::vector<Vertex>>();
    } else {
        order = parse_vertices(a.order);
    }
    const unsigned ell = a.ell ? a.ell : h.k() - 1;
    bool valid = false;
    if (a.kind == "cycle") valid = validate_ell_cycle(h, EllCycle{order, ell, h.k()});
    else if (a.kind == "path") valid = validate_ell_path(h, EllPath{order, ell, h.k()});
    else valid = validate_power_cycle(h, PowerCycle{order, a.t ? a.t : h.k(), h.k()});
    Report r;
    r.config = common_config("verify", c);
    r.config.update(json{{"input", a.in}, {"kind", a.kind}, {"ell", a.ell}, {"t", a.t}, {"order", a.order},
                         {"certificate", a.certificate}, {"blocks", a.blocks}});
    r.summary["valid"] = valid;
    r.summary["spanning"] = order.size() == h.n();
    bool ok = valid;
    if (!a.blocks.empty()) {
        const bool respecting = is_respecting(order, sorted_partition(read_blocks_file(a.blocks)));
        r.summary["respecting"] = respecting;
        ok = ok && respecting;
    }
    emit_report(r, c);
    return ok ? 0 : kExitNegative;
}

// ---- pipeline

struct PipelineArgs {
    PipelineConfig cfg;
    std::string delta = "1/2", gamma = "1/10", mu = "1/2";
};

int cmd_pipeline(PipelineArgs a, const Common& c) {
    a.cfg.seed = c.seed;
    a.cfg.budget = c.budget;
    a.cfg.workers = c.workers;
    a.cfg.delta = parse_rational(a.delta);
    a.cfg.gamma = parse_rational(a.gamma);
    a.cfg.mu = parse_rational(a.mu);
    const auto h = run_stage("input", [&] { return read_edge_list_file(a.cfg.input); });
    std::optional<FactorSpec> pattern;
    if (!a.cfg.pattern.empty())
        pattern = FactorSpec{run_stage("input", [&] { return read_edge_list_file(a.cfg.pattern); })};
    Report r = run_pipeline(h, a.cfg, pattern);
    r.config["format"] = c.format;
    emit_report(r, c);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypercount: random partitions, stitching and exact counting for dense hypergraphs"};
    app.require_subcommand(1);

    Common common;
    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "write a hypergraph edge list");
    g->add_option("--family", gen.family)
        ->check(CLI::IsMember({"complete", "binomial", "planted-cycle", "planted-path", "planted-factor"}))
        ->capture_default_str();
    g->add_option("--n", gen.n)->required();
    g->add_option("--k", gen.k)->capture_default_str();
    g->add_option("--p", gen.p, "edge probability")->capture_default_str();
    g->add_option("--ell", gen.ell, "overlap for planted paths and cycles (default k-1)");
    g->add_option("--noise", gen.noise, "extra edge probability for planted families")->capture_default_str();
    g->add_option("--pattern", gen.pattern, "pattern edge list for planted-factor (default one edge)");
    g->add_option("--planted-out", gen.planted_out, "write the planted structure as JSON");
    add_common(g, common);

    PartitionArgs part;
    auto* pa = app.add_subcommand("partition", "random bisection with goodness check");
    pa->add_option("--in", part.in)->required();
    pa->add_option("--m", part.m)->capture_default_str();
    pa->add_option("--delta", part.delta)->capture_default_str();
    pa->add_option("--gamma", part.gamma)->capture_default_str();
    pa->add_option("--divisor", part.divisor)->capture_default_str();
    pa->add_option("--trials", part.trials, "trials for the goodness estimate")->capture_default_str();
    pa->add_option("--blocks-out", part.blocks_out, "write the partition, one block per line");
    add_common(pa, common);

    StitchArgs st;
    auto* s = app.add_subcommand("stitch", "stitch a respecting Hamilton cycle over a partition");
    s->add_option("--in", st.in)->required();
    s->add_option("--blocks", st.blocks)->required();
    s->add_option("--ell", st.ell, "overlap (default k-1)");
    s->add_option("--t", st.t, "power-cycle clique size; switches to power cycles");
    s->add_option("--retries", st.retries)->capture_default_str();
    add_common(s, common);

    CountArgs cnt;
    auto* co = app.add_subcommand("count", "exact count of distinct Hamilton cycles");
    co->add_option("--in", cnt.in)->required();
    co->add_option("--ell", cnt.ell, "overlap (default k-1)");
    co->add_option("--t", cnt.t, "count tight Hamilton cycles of the clique graph K_t(H)");
    co->add_flag("--list", cnt.list, "list the cycles");
    co->add_option("--m", cnt.m, "also report the partition lower bound for this m");
    co->add_option("--delta", cnt.psi_delta, "also report the expected count in the binomial model");
    add_common(co, common);

    FactorsArgs fa;
    auto* f = app.add_subcommand("factors", "find, stitch or count F-factors");
    f->add_option("--in", fa.in)->required();
    f->add_option("--pattern", fa.pattern, "pattern edge list (default one edge)");
    f->add_option("--blocks", fa.blocks, "stitch per block of this partition");
    f->add_flag("--count", fa.count, "count all F-factors");
    f->add_flag("--relation", fa.relation, "matching versus 0-cycle arrangement check");
    add_common(f, common);

    AbsorbArgs ab;
    auto* a = app.add_subcommand("absorb-classify", "count absorbing paths per (k-ell)-set");
    a->add_option("--in", ab.in)->required();
    a->add_option("--ell", ab.ell, "overlap (default k-1)");
    a->add_option("--beta", ab.beta)->capture_default_str();
    a->add_option("--t", ab.t_abs, "absorbing path vertex count")->capture_default_str();
    a->add_option("--set", ab.sets, "a set to classify, e.g. \"3 5\" (default: all)");
    add_common(a, common);

    VerifyArgs ve;
    auto* v = app.add_subcommand("verify", "validate a path, cycle or power cycle");
    v->add_option("--in", ve.in)->required();
    v->add_option("--kind", ve.kind)->check(CLI::IsMember({"cycle", "path", "power"}))->capture_default_str();
    v->add_option("--ell", ve.ell, "overlap (default k-1)");
    v->add_option("--t", ve.t, "power-cycle window (default k)");
    v->add_option("--order", ve.order, "vertex order, e.g. \"0 1 2 3\"");
    v->add_option("--certificate", ve.certificate, "stitch report or JSON with an order field");
    v->add_option("--blocks", ve.blocks, "also check that the cycle respects this partition");
    add_common(v, common);

    PipelineArgs pl;
    auto* p = app.add_subcommand("pipeline", "size vector, bisection trials, goodness, stitching and bounds");
    p->add_option("--in", pl.cfg.input)->required();
    p->add_option("--mode", pl.cfg.mode)->check(CLI::IsMember({"cycle", "power", "factor"}))->capture_default_str();
    p->add_option("--ell", pl.cfg.ell, "overlap (default k-1)");
    p->add_option("--t", pl.cfg.t, "clique size for power mode");
    p->add_option("--pattern", pl.cfg.pattern, "pattern edge list for factor mode");
    p->add_option("--d", pl.cfg.d, "degree order for factor goodness (default k-1)");
    p->add_option("--mu", pl.mu)->capture_default_str();
    p->add_option("--m", pl.cfg.m)->capture_default_str();
    p->add_option("--delta", pl.delta)->capture_default_str();
    p->add_option("--gamma", pl.gamma)->capture_default_str();
    p->add_option("--trials", pl.cfg.trials)->capture_default_str();
    p->add_option("--retries", pl.cfg.junction_retries)->capture_default_str();
    p->add_option("--stitch-on", pl.cfg.stitch_on)->check(CLI::IsMember({"good", "all"}))->capture_default_str();
    p->add_flag("--exact", pl.cfg.exact, "add the exact count when the budget allows");
    p->add_option("--samples", pl.cfg.samples, "certificates to include")->capture_default_str();
    p->add_option("--bits", pl.cfg.bits, "precision of transcendental brackets")->capture_default_str();
    add_common(p, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*g) return cmd_generate(gen, common);
        if (*pa) return cmd_partition(part, common);
        if (*s) return cmd_stitch(st, common);
        if (*co) return cmd_count(cnt, common);
        if (*f) return cmd_factors(fa, common);
        if (*a) return cmd_absorb(ab, common);
        if (*v) return cmd_verify(ve, common);
        if (*p) return cmd_pipeline(pl, common);
    } catch (const budget_exhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kExitBudget;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
