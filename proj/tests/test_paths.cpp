#include <gtest/gtest.h>

#include "hypercount/hypercount.hpp"
#include "oracles.hpp"

using namespace hypercount;

TEST(Validate, PathExamples) {
    EXPECT_TRUE(validate_ell_path(Hypergraph::complete(6, 3), EllPath{{0, 1, 2, 3, 4, 5}, 2, 3}));
    EXPECT_TRUE(validate_ell_path(Hypergraph(5, 3, {{0, 1, 2}, {2, 3, 4}}), EllPath{{0, 1, 2, 3, 4}, 1, 3}));
    EXPECT_FALSE(validate_ell_path(Hypergraph(4, 3, {{0, 1, 2}}), EllPath{{0, 1, 2, 3}, 2, 3}));
}

TEST(Validate, CycleExamples) {
    EXPECT_TRUE(validate_ell_cycle(Hypergraph::complete(4, 3), EllCycle{{0, 1, 2, 3}, 2, 3}));
    EXPECT_TRUE(validate_ell_cycle(Hypergraph::complete(7, 2), EllCycle{{3, 1, 6, 0, 2, 5, 4}, 1, 2}));
    EXPECT_THROW(validate_ell_cycle(Hypergraph::complete(7, 3), EllCycle{{0, 1, 2, 3, 4, 5, 6}, 1, 3}),
                 invalid_structure);
}

TEST(Validate, MalformedOrderings) {
    const auto h = Hypergraph::complete(8, 3);
    EXPECT_THROW(validate_ell_path(h, EllPath{{0, 1, 2, 1}, 2, 3}), invalid_structure);
    EXPECT_THROW(validate_ell_path(h, EllPath{{0, 1, 2, 3}, 1, 3}), invalid_structure);
    EXPECT_THROW(validate_ell_cycle(h, EllCycle{{0, 1, 2, 3, 4, 4}, 2, 3}), invalid_structure);
}

TEST(Validate, EdgeCountPerCycle) {
    EXPECT_EQ(ell_cycle_edge_count(12, 3, 1), 6u);
    EXPECT_EQ(ell_cycle_edge_count(12, 3, 2), 12u);
    EXPECT_EQ(ell_cycle_edge_count(12, 4, 2), 6u);
    for (auto [n, k, ell] : {std::tuple{12u, 3u, 1u}, {12u, 3u, 2u}, {12u, 4u, 2u}, {9u, 4u, 1u}, {10u, 2u, 1u}}) {
        std::vector<Vertex> order = iota_vertices(n);
        EXPECT_EQ(cycle_edges(EllCycle{order, ell, k}).size(), ell_cycle_edge_count(n, k, ell));
        EXPECT_EQ(oracle::cycle_windows(order, k, ell).size(), ell_cycle_edge_count(n, k, ell));
    }
}

TEST(Validate, RemovingAWindowLeavesPaths) {
    const auto planted = planted_cycle(12, 3, 1, 4);
    const auto& c = planted.structure;
    const std::size_t n = c.order.size();
    for (std::size_t start = 0; start < n; start += 2) {
        // Reading the cycle from `start` and dropping the wrap-around window
        // gives an ell-path on n + ell vertices minus the closing edge.
        std::vector<Vertex> order;
        for (std::size_t i = 0; i < n; ++i) order.push_back(c.order[(start + i) % n]);
        order.push_back(order.front());
        std::vector<Vertex> path(order.begin(), order.end() - 1);
        path.resize(n - 1);
        EXPECT_TRUE(validate_ell_path(planted.graph, EllPath{path, 1, 3}));
    }
}

TEST(HamiltonPath, CompleteHostWithEnds) {
    const auto h = Hypergraph::complete(8, 3);
    auto p = find_hamilton_ell_path(h, 2, EndPair{{0, 1}, {6, 7}});
    ASSERT_TRUE(p);
    EXPECT_TRUE(validate_ell_path(h, *p));
    EXPECT_EQ(p->order.size(), 8u);
    EXPECT_EQ(std::vector<Vertex>(p->order.begin(), p->order.begin() + 2), (std::vector<Vertex>{0, 1}));
    EXPECT_EQ(std::vector<Vertex>(p->order.end() - 2, p->order.end()), (std::vector<Vertex>{6, 7}));
}

TEST(HamiltonPath, EdgelessAndDivisibility) {
    EXPECT_FALSE(find_hamilton_ell_path(Hypergraph::empty(8, 3), 2, EndPair{{0, 1}, {6, 7}}));
    // (k - ell) must divide n - ell: 8 - 1 = 7 is odd.
    EXPECT_THROW(find_hamilton_ell_path(Hypergraph::complete(8, 3), 1, EndPair{{0}, {7}}), divisibility_error);
    EXPECT_THROW(find_hamilton_ell_path(Hypergraph::complete(8, 3), 2, EndPair{{0, 1}, {1, 7}}), invalid_query);
}

TEST(HamiltonPath, PlantedPathRecovered) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto pl = planted_path(11, 3, 1, seed);
        const auto& order = pl.structure.order;
        auto p = find_hamilton_ell_path(pl.graph, 1, EndPair{{order.front()}, {order.back()}});
        ASSERT_TRUE(p);
        EXPECT_EQ(oracle::path_windows(p->order, 3, 1), oracle::path_windows(order, 3, 1));
    }
}

TEST(HamiltonPath, BudgetExhaustionIsAnError) {
    EXPECT_THROW(find_hamilton_ell_path(Hypergraph::complete(12, 2), 1, EndPair{{0}, {11}}, 5), budget_exhausted);
    EXPECT_FALSE(find_hamilton_ell_path(Hypergraph::empty(12, 2), 1, EndPair{{0}, {11}}, 0));
    EXPECT_THROW(
        enumerate_hamilton_ell_cycles(Hypergraph::complete(9, 2), 1, EnumerationMode::count, 100), budget_exhausted);
}

TEST(PathConnected, Examples) {
    EXPECT_TRUE(is_hamilton_path_connected(Hypergraph::complete(8, 3), 2));
    EXPECT_FALSE(is_hamilton_path_connected(Hypergraph::empty(8, 3), 2));
    for (unsigned n = 4; n <= 6; ++n) EXPECT_TRUE(is_hamilton_path_connected(Hypergraph::complete(n, 2), 1));
}

TEST(PathConnected, MatchesPermutationOracle) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto h = gen_random(6, 2, 0.6, seed);
        const auto es = oracle::edges_of(h);
        bool all = true;
        for (Vertex a = 0; a < 6; ++a)
            for (Vertex b = 0; b < 6; ++b) {
                if (a == b) continue;
                std::vector<Vertex> order = iota_vertices(6);
                bool found = false;
                do {
                    if (order.front() != a || order.back() != b) continue;
                    bool ok = true;
                    for (const auto& e : oracle::path_windows(order, 2, 1)) ok = ok && es.count(e);
                    found = found || ok;
                } while (std::next_permutation(order.begin(), order.end()));
                all = all && found;
            }
        EXPECT_EQ(is_hamilton_path_connected(h, 1), all) << "seed " << seed;
    }
}

TEST(Enumerate, CompleteGraphClosedForm) {
    for (unsigned n = 3; n <= 8; ++n) {
        const BigInt expected = factorial(n - 1) / 2;
        EXPECT_EQ(enumerate_hamilton_ell_cycles(Hypergraph::complete(n, 2), 1).count, n == 3 ? BigInt(1) : expected);
    }
}

TEST(Enumerate, Examples) {
    EXPECT_EQ(enumerate_hamilton_ell_cycles(Hypergraph::complete(5, 2), 1).count, 12);
    EXPECT_EQ(enumerate_hamilton_ell_cycles(Hypergraph::complete(4, 3), 2).count, 1);
    EXPECT_EQ(enumerate_hamilton_ell_cycles(Hypergraph::empty(6, 3), 2).count, 0);
    // 3 overlap vertices, then one private vertex per consecutive pair
    EXPECT_EQ(enumerate_hamilton_ell_cycles(Hypergraph::complete(6, 3), 1).count, 20 * 6);
}

TEST(Enumerate, MatchesPermutationOracle) {
    struct Case {
        unsigned n, k, ell;
        double p;
    };
    for (auto c : {Case{7, 2, 1, 0.6}, Case{6, 3, 2, 0.8}, Case{6, 3, 1, 0.5}, Case{8, 4, 2, 0.5}, Case{8, 3, 2, 0.9},
                   Case{8, 4, 3, 0.95}}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto h = gen_random(c.n, c.k, c.p, seed);
            const auto expected = oracle::hamilton_cycle_count(oracle::edges_of(h), c.n, c.k, c.ell);
            EXPECT_EQ(enumerate_hamilton_ell_cycles(h, c.ell).count, expected)
                << c.n << " " << c.k << " " << c.ell << " seed " << seed;
        }
    }
}

TEST(Enumerate, WorkersDoNotChangeResult) {
    const auto h = gen_random(8, 3, 0.9, 3);
    const auto one = enumerate_hamilton_ell_cycles(h, 2, EnumerationMode::list, kDefaultSearchBudget, 1);
    const auto three = enumerate_hamilton_ell_cycles(h, 2, EnumerationMode::list, kDefaultSearchBudget, 3);
    EXPECT_EQ(one.count, three.count);
    ASSERT_EQ(one.cycles.size(), three.cycles.size());
    for (std::size_t i = 0; i < one.cycles.size(); ++i) EXPECT_EQ(one.cycles[i].order, three.cycles[i].order);
}

TEST(Enumerate, ListedCyclesAreDistinctAndValid) {
    const auto h = gen_random(10, 3, 0.8, 1);
    const auto res = enumerate_hamilton_ell_cycles(h, 1, EnumerationMode::list);
    EXPECT_EQ(BigInt(res.cycles.size()), res.count);
    std::set<std::vector<std::uint64_t>> keys;
    for (const auto& c : res.cycles) {
        EXPECT_TRUE(is_hamilton_ell_cycle(h, c));
        keys.insert(edge_set_key(h, cycle_edges(c)));
    }
    EXPECT_EQ(keys.size(), res.cycles.size());
}

TEST(CliqueGraph, Examples) {
    const auto kt = clique_graph(Hypergraph::complete(7, 3), 4);
    EXPECT_EQ(kt.k(), 4u);
    EXPECT_EQ(kt.edge_count(), 35u);
    EXPECT_EQ(clique_graph(Hypergraph::empty(7, 3), 4).edge_count(), 0u);
    Hypergraph h(6, 3, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {2, 3, 4}});
    const auto k4 = clique_graph(h, 4);
    ASSERT_EQ(k4.edge_count(), 1u);
    EXPECT_EQ(std::vector<Vertex>(k4.edge(0).begin(), k4.edge(0).end()), (std::vector<Vertex>{0, 1, 2, 3}));
    EXPECT_THROW(clique_graph(h, 2), invalid_query);
}

TEST(CliqueGraph, MonotoneUnderEdgeAddition) {
    auto h = gen_random(9, 3, 0.6, 2);
    auto before = clique_graph(h, 4);
    const auto extra = gen_random(9, 3, 0.3, 5).edge_list();
    const auto bigger = with_edges(h, extra);
    const auto after = clique_graph(bigger, 4);
    for (std::size_t i = 0; i < before.edge_count(); ++i) EXPECT_TRUE(after.contains_edge(before.edge(i)));
}

TEST(FindClique, Examples) {
    auto c = find_clique(Hypergraph::complete(9, 3), 5);
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, (std::vector<Vertex>{0, 1, 2, 3, 4}));
    EXPECT_FALSE(find_clique(Hypergraph::empty(9, 3), 3));
}

TEST(FindClique, AgreesWithExhaustiveSearch) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto h = gen_random(9, 3, 0.75, seed);
        const auto es = oracle::edges_of(h);
        bool exists = false;
        for (const auto& s : oracle::subsets(9, 5)) {
            bool ok = true;
            for (const auto& t : oracle::subsets(5, 3)) ok = ok && es.count(std::vector<Vertex>{s[t[0]], s[t[1]], s[t[2]]});
            exists = exists || ok;
        }
        auto c = find_clique(h, 5);
        EXPECT_EQ(c.has_value(), exists);
        if (c) {
            EXPECT_TRUE(spans_clique(h, *c));
        }
    }
}

TEST(PowerCycle, Examples) {
    const auto h = Hypergraph::complete(8, 3);
    EXPECT_TRUE(validate_power_cycle(h, PowerCycle{{4, 2, 7, 0, 1, 6, 5, 3}, 5, 3}));
    auto edges = h.edge_list();
    edges.erase(std::find(edges.begin(), edges.end(), std::vector<Vertex>{0, 1, 2}));
    const Hypergraph missing(8, 3, edges);
    EXPECT_FALSE(validate_power_cycle(missing, PowerCycle{{0, 1, 2, 3, 4, 5, 6, 7}, 4, 3}));
    EXPECT_TRUE(validate_power_cycle(missing, PowerCycle{{0, 3, 1, 4, 2, 5, 6, 7}, 3, 3}));
    EXPECT_THROW(validate_power_cycle(h, PowerCycle{{0, 1}, 3, 3}), invalid_structure);
}

TEST(PowerCycle, ReducesToTightCycleAtTEqualsK) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto h = gen_random(7, 3, 0.85, seed);
        const auto order = random_order(7, seed + 100);
        EXPECT_EQ(validate_power_cycle(h, PowerCycle{order, 3, 3}), validate_ell_cycle(h, EllCycle{order, 2, 3}));
    }
}

TEST(PowerCycle, IsTightCycleOfCliqueGraph) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto h = gen_random(8, 3, 0.95, seed);
        const auto kt = clique_graph(h, 4);
        const auto order = random_order(8, seed);
        EXPECT_EQ(validate_power_cycle(h, PowerCycle{order, 4, 3}), validate_ell_cycle(kt, EllCycle{order, 3, 4}));
    }
}

TEST(Connector, MinimalOnCompleteHost) {
    const auto h = Hypergraph::complete(10, 3);
    auto p = find_short_connector(h, 2, EndPair{{0, 1}, {5, 6}}, default_connector_vertices(3));
    ASSERT_TRUE(p);
    EXPECT_EQ(p->order.size(), 4u);
    EXPECT_TRUE(validate_ell_path(h, *p));
    EXPECT_EQ(default_connector_vertices(3), 8u * 243u);
}

TEST(Connector, EdgelessAndPlanted) {
    EXPECT_FALSE(find_short_connector(Hypergraph::empty(10, 3), 2, EndPair{{0, 1}, {5, 6}}, 10));
    const auto pl = planted_path(10, 3, 2, 6);
    const auto& o = pl.structure.order;
    auto p = find_short_connector(pl.graph, 2, EndPair{{o[0], o[1]}, {o[8], o[9]}}, 10);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->order, o);
}
