#include <gtest/gtest.h>

#include "ltg/equivalence.hpp"
#include "ltg/lineage.hpp"
#include "ltg/normalize.hpp"
#include "ltg/parser.hpp"
#include "ltg/reasoner.hpp"
#include "ltg/wmc.hpp"
#include "support.hpp"

using namespace ltg;

namespace {

Program running() { return normalize(parse_program(fixtures::running_example())); }

AtomId atom_of(const ReasoningResult& r, const std::string& text) {
    Program scratch = *r.program;
    return *r.atoms.find(parse_atom(scratch, text));
}

std::size_t stored_in_rule_nodes(const ReasoningResult& r, std::uint32_t rule, AtomId root) {
    std::size_t n = 0;
    for (const auto& node : r.graph.nodes())
        if (!node.removed && node.rule == rule) n += r.stores.at(node.id).stored(root).size();
    return n;
}

}  // namespace

TEST(Pr, RunningExampleTerminatesAfterThreeRounds) {
    ReasoningResult r = run_pr(running());
    EXPECT_EQ(r.rounds, 3u);
    EXPECT_EQ(r.graph.depth(), 2u);
    EXPECT_FALSE(r.truncated);
    ASSERT_EQ(r.graph.size(), 5u);
    EXPECT_FALSE(r.graph.node(0).removed);
    EXPECT_FALSE(r.graph.node(1).removed);
    for (NodeId v : {2u, 3u, 4u}) EXPECT_TRUE(r.graph.node(v).removed);
    EXPECT_EQ(r.stores.at(0).stored_count(), 4u);
    // p(a,c), p(b,b), p(a,b) and p(c,c).
    EXPECT_EQ(r.stores.at(1).stored_count(), 4u);
    ASSERT_EQ(r.per_round.size(), 3u);
    EXPECT_EQ(r.per_round[2].removed_nodes, 3u);
}

TEST(Pr, FactsOnly) {
    ReasoningResult r = run_pr(normalize(parse_program("0.5::e(a,b).")));
    EXPECT_EQ(r.rounds, 0u);
    EXPECT_EQ(r.graph.size(), 0u);
}

TEST(Pr, CollapseExampleKeepsEveryTree) {
    ReasoningResult r = run_pr(normalize(parse_program(fixtures::collapse_example(3))));
    EXPECT_FALSE(r.truncated);
    EXPECT_EQ(stored_in_rule_nodes(r, 1, atom_of(r, "t(a)")), 3u);
    EXPECT_EQ(stored_in_rule_nodes(r, 2, atom_of(r, "r(a,b1)")), 2u);
    EXPECT_EQ(r.or_entries(), 0u);
}

TEST(Pcor, CollapseOnStoresOneEntryPerRoot) {
    ReasonerOptions opts;
    opts.collapse = CollapseMode::On;
    ReasoningResult r = run_pcor(normalize(parse_program(fixtures::collapse_example(1000))), opts);
    EXPECT_EQ(stored_in_rule_nodes(r, 1, atom_of(r, "t(a)")), 1u);
    EXPECT_EQ(stored_in_rule_nodes(r, 2, atom_of(r, "r(a,b1)")), 1u);

    ReasoningResult plain = run_pr(normalize(parse_program(fixtures::collapse_example(1000))));
    EXPECT_EQ(stored_in_rule_nodes(plain, 1, atom_of(plain, "t(a)")), 1000u);
    EXPECT_EQ(stored_in_rule_nodes(plain, 2, atom_of(plain, "r(a,b1)")), 999u);
    EXPECT_LT(r.per_round.back().allocated_entries, plain.per_round.back().allocated_entries);
}

TEST(Pcor, AutoBelowThresholdMatchesPr) {
    ReasonerOptions opts;
    opts.collapse = CollapseMode::Auto;
    ReasoningResult a = run_pcor(running(), opts);
    ReasoningResult b = run_pr(running());
    EXPECT_EQ(a.stored_entries(), b.stored_entries());
    EXPECT_EQ(a.or_entries(), 0u);
    EXPECT_EQ(a.rounds, b.rounds);
}

TEST(Pcor, AutoAboveThresholdCollapses) {
    ReasonerOptions opts;
    opts.collapse = CollapseMode::Auto;
    ReasoningResult r = run_pcor(normalize(parse_program(fixtures::collapse_example(30))), opts);
    EXPECT_EQ(stored_in_rule_nodes(r, 1, atom_of(r, "t(a)")), 1u);
}

TEST(Reasoner, MaxDepthTruncates) {
    ReasonerOptions opts;
    opts.max_depth = 1;
    ReasoningResult r = run_pr(running(), opts);
    EXPECT_TRUE(r.truncated);
    EXPECT_EQ(r.rounds, 1u);
}

TEST(Reasoner, MaxEntriesThrowsWithStats) {
    ReasonerOptions opts;
    opts.max_entries = 5;
    try {
        run_pr(running(), opts);
        FAIL();
    } catch (const ResourceLimitError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
        EXPECT_EQ(e.rounds().size(), 1u);
    }
}

TEST(Reasoner, MaxNodesThrows) {
    ReasonerOptions opts;
    opts.max_nodes = 3;
    EXPECT_THROW(run_pr(running(), opts), ResourceLimitError);
}

TEST(Snapshot, RunningExampleRounds) {
    ReasoningResult r = run_pr(running());
    AtomId pab = atom_of(r, "p(a,b)");
    auto s1 = round_bound_snapshot(r, 1);
    auto s2 = round_bound_snapshot(r, 2);
    EXPECT_EQ(s1.at(pab), Dnf::literal(0));
    EXPECT_EQ(s2.at(pab), Dnf::from_clauses({{0}, {2, 3}}));
    auto final_lineage = collect_lineage(r, r.program->queries[0]);
    ASSERT_EQ(final_lineage.size(), 1u);
    EXPECT_EQ(round_bound_snapshot(r, r.rounds).at(pab), final_lineage[0].lineage);
}

TEST(ReasonerProperties, PrAndPcorAgreeAndTerminate) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 80; ++i) {
        std::string text = fixtures::random_program_text(rng);
        Program p = normalize(parse_program(text));
        ReasonerOptions cap;
        cap.max_depth = 64;
        ReasoningResult a = run_pr(p, cap);
        cap.collapse = CollapseMode::On;
        ReasoningResult b = run_pcor(p, cap);
        ASSERT_FALSE(a.truncated) << text;
        ASSERT_FALSE(b.truncated) << text;
        EXPECT_EQ(a.rounds, b.rounds) << text;
        for (AtomId id = 0; id < a.atoms.size(); ++id) {
            auto other = b.atoms.find(a.atoms.to_atom(id));
            ASSERT_TRUE(other.has_value());
            LineageBuilder la(a.stores), lb(b.stores);
            ASSERT_TRUE(truth_table_equivalent(atom_lineage(a, la, id), atom_lineage(b, lb, *other))) << text;
        }
    }
}

TEST(ReasonerProperties, SnapshotsAreMonotone) {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 60; ++i) {
        Program p = normalize(parse_program(fixtures::random_program_text(rng)));
        ReasoningResult r = run_pr(p);
        VarWeights w = VarWeights::of(p);
        std::unordered_map<AtomId, double> prev;
        for (std::uint32_t k = 1; k <= r.rounds; ++k) {
            for (const auto& [atom, d] : round_bound_snapshot(r, k)) {
                double now = probability(d, w);
                EXPECT_LE(prev[atom], now + 1e-12);
                prev[atom] = now;
            }
        }
    }
}

TEST(Pcor, TerminatesWithCyclesAwayFromTheRoot) {
    const char* text =
        "0.5::e(a,d).\n0.5::e(d,d).\n0.5::e(d,b).\n0.5::e(b,a).\n"
        "p(X,Y) :- e(X,Y).\np(X,Y) :- e(X,Z), p(Z,Y).\nquery(p(a,b)).\n";
    Program p = normalize(parse_program(text));
    ReasonerOptions opts;
    opts.max_depth = 64;
    ReasoningResult a = run_pr(p, opts);
    opts.collapse = CollapseMode::On;
    ReasoningResult b = run_pcor(p, opts);
    EXPECT_FALSE(a.truncated);
    EXPECT_FALSE(b.truncated);
    EXPECT_EQ(a.rounds, b.rounds);
}

TEST(ReasonerProperties, SkippingUnjoinableNodesChangesNothingVisible) {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 60; ++i) {
        std::string text = fixtures::random_program_text(rng);
        Program p = normalize(parse_program(text));
        for (CollapseMode mode : {CollapseMode::Off, CollapseMode::On}) {
            ReasonerOptions opts;
            opts.collapse = mode;
            ReasoningResult a = reason(p, opts);
            opts.skip_unjoinable = true;
            ReasoningResult b = reason(p, opts);
            EXPECT_LE(b.rounds, a.rounds) << text;
            EXPECT_EQ(a.per_round.size(), b.per_round.size()) << text;
            EXPECT_EQ(a.graph.live_count(), b.graph.live_count()) << text;
            EXPECT_LE(b.graph.size(), a.graph.size()) << text;
            EXPECT_EQ(a.stored_entries(), b.stored_entries()) << text;
            LineageBuilder la(a.stores), lb(b.stores);
            for (AtomId id = 0; id < a.atoms.size(); ++id) {
                auto other = b.atoms.find(a.atoms.to_atom(id));
                ASSERT_TRUE(other.has_value());
                ASSERT_EQ(atom_lineage(a, la, id), atom_lineage(b, lb, *other)) << text;
            }
        }
    }
}
