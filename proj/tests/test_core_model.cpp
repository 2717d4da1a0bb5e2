#include <gtest/gtest.h>

#include <random>

#include "ltg/error.hpp"
#include "ltg/equivalence.hpp"
#include "ltg/normalize.hpp"
#include "ltg/parser.hpp"
#include "ltg/tcp_oracle.hpp"
#include "support.hpp"

using namespace ltg;

namespace {

ErrorKind parse_error_kind(const std::string& text) {
    try {
        parse_program(text);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for: " << text;
    return ErrorKind::Contract;
}

}  // namespace

TEST(Parser, ProbabilisticFact) {
    Program p = parse_program("0.3::e(a,b).");
    ASSERT_EQ(p.facts.size(), 1u);
    EXPECT_EQ(p.render(p.facts[0].fact), "e(a,b)");
    EXPECT_DOUBLE_EQ(p.facts[0].prob, 0.3);
    EXPECT_EQ(p.facts[0].var, 0u);
}

TEST(Parser, UnannotatedFactIsCertain) {
    Program p = parse_program("e(a,b).\ne(b,c).");
    ASSERT_EQ(p.facts.size(), 2u);
    EXPECT_DOUBLE_EQ(p.facts[1].prob, 1.0);
    EXPECT_EQ(p.facts[1].var, 1u);
}

TEST(Parser, Rule) {
    Program p = parse_program("p(X,Y) :- e(X,Y).");
    ASSERT_EQ(p.rules.size(), 1u);
    EXPECT_EQ(p.render(p.rules[0]), "p(X,Y) :- e(X,Y).");
    EXPECT_EQ(p.rules[0].kind, RuleKind::Base);
}

TEST(Parser, ArityMismatch) {
    EXPECT_EQ(parse_error_kind("q(a,b,c).\np(X) :- q(X,Y), r(Y)."), ErrorKind::Arity);
}

TEST(Parser, ProbabilityOutOfRange) {
    EXPECT_EQ(parse_error_kind("0::e(a,b)."), ErrorKind::Probability);
    EXPECT_EQ(parse_error_kind("1.5::e(a,b)."), ErrorKind::Probability);
    EXPECT_EQ(parse_error_kind("0.5::p(X) :- e(X,Y).\n2::q(X) :- e(X,Y)."), ErrorKind::Probability);
}

TEST(Parser, SyntaxErrorCarriesPosition) {
    try {
        parse_program("e(a,b).\np(X,Y) :- e(X,Y)\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Parser, UnsafeRule) {
    EXPECT_EQ(parse_error_kind("e(a,b).\np(X,Z) :- e(X,Y)."), ErrorKind::Unsafe);
}

TEST(Parser, NonGroundFact) { EXPECT_EQ(parse_error_kind("e(X,b)."), ErrorKind::Parse); }

TEST(Parser, CommentsAndQueries) {
    Program p = parse_program("% header\n0.5::e(a,b). % trailing\np(X,Y) :- e(X,Y).\nquery(p(a,X)).\n");
    ASSERT_EQ(p.queries.size(), 1u);
    EXPECT_EQ(p.render(p.queries[0]), "p(a,X)");
}

TEST(Parser, NullaryAtoms) {
    Program p = parse_program("0.5::rain.\nwet :- rain.\nquery(wet).");
    EXPECT_EQ(p.render(p.rules[0]), "wet :- rain.");
}

TEST(Parser, QueryAtomAgainstProgram) {
    Program p = parse_program(fixtures::running_example());
    Atom q = parse_atom(p, "p(a,X)");
    EXPECT_EQ(p.render(q), "p(a,X)");
    EXPECT_THROW(parse_atom(p, "zz(a)"), Error);
}

TEST(Desugar, RuleProbabilityAddsDummyFact) {
    Program p = parse_program("e(a,b).\n0.8::t(X) :- e(X,Y).");
    ASSERT_EQ(p.facts.size(), 2u);
    EXPECT_DOUBLE_EQ(p.facts[1].prob, 0.8);
    EXPECT_EQ(p.facts[1].var, 1u);
    EXPECT_EQ(p.facts[1].fact.args.size(), 0u);
    ASSERT_EQ(p.rules[0].body.size(), 2u);
    EXPECT_EQ(p.rules[0].body[1].predicate, p.facts[1].fact.predicate);
}

TEST(Desugar, CertainRuleStillGetsDummy) {
    Program p = parse_program("e(a,b).\n1.0::t(X) :- e(X,Y).");
    ASSERT_EQ(p.facts.size(), 2u);
    EXPECT_DOUBLE_EQ(p.facts[1].prob, 1.0);
}

TEST(Desugar, DistinctDummiesPerRule) {
    Program p = parse_program("e(a,b).\n0.8::t(X) :- e(X,Y).\n0.7::u(X) :- e(X,Y).");
    ASSERT_EQ(p.facts.size(), 3u);
    EXPECT_NE(p.facts[1].fact.predicate, p.facts[2].fact.predicate);
}

TEST(Desugar, DirectCall) {
    Program p = parse_program("e(a,b).\nt(X) :- e(X,Y).");
    auto [rule, fact] = desugar_rule_probability(p.symbols, p.rules[0], 0.8);
    EXPECT_EQ(rule.body.size(), 2u);
    EXPECT_DOUBLE_EQ(fact.prob, 0.8);
    EXPECT_THROW(desugar_rule_probability(p.symbols, p.rules[0], 0.0), Error);
}

TEST(Normalize, RunningExampleOnlyTagsRules) {
    Program p = parse_program(fixtures::running_example());
    Program n = normalize(p);
    ASSERT_EQ(n.rules.size(), 2u);
    EXPECT_EQ(n.rules[0].kind, RuleKind::Base);
    EXPECT_EQ(n.rules[1].kind, RuleKind::NonBase);
    EXPECT_EQ(serialize(n), serialize(p));
}

TEST(Normalize, MixedBodyGetsDerivedCopy) {
    Program p = parse_program("0.5::e(a,b).\n0.5::e(b,a).\np(X,Y) :- e(X,Y).\nt(X) :- p(X,Y), e(X,Y).");
    Program n = normalize(p);
    ASSERT_EQ(n.rules.size(), 3u);
    EXPECT_EQ(n.render(n.rules[1]), "t(X) :- p(X,Y), e_base(X,Y).");
    EXPECT_EQ(n.render(n.rules[2]), "e_base(X1,X2) :- e(X1,X2).");
    for (const auto& r : n.rules) EXPECT_NE(r.kind, RuleKind::Mixed);

    // Same lineage for every original atom.
    auto a = tcp_fixpoint(p, TcpMode::Naive).final;
    auto b = tcp_fixpoint(n, TcpMode::Naive).final;
    for (AtomId id = 0; id < a.atoms.size(); ++id) {
        if (!a.known(id)) continue;
        auto other = b.atoms.find(a.atoms.to_atom(id));
        ASSERT_TRUE(other.has_value());
        EXPECT_TRUE(truth_table_equivalent(a.lambda[id], b.lambda[*other]));
    }
}

TEST(Normalize, FactsOnDerivedPredicateMove) {
    Program p = parse_program("0.5::e(a,b).\n0.5::p(b,c).\np(X,Y) :- e(X,Y).");
    Program n = normalize(p);
    EXPECT_EQ(n.render(n.facts[1].fact), "p_db(b,c)");
    EXPECT_EQ(n.facts[1].var, 1u);
    ASSERT_EQ(n.rules.size(), 2u);
    EXPECT_EQ(n.render(n.rules[1]), "p(X1,X2) :- p_db(X1,X2).");
}

TEST(Normalize, EmptyRuleSetUnchanged) {
    Program p = parse_program("0.5::e(a,b).");
    EXPECT_TRUE(structurally_equal(normalize(p), p));
}

TEST(Normalize, CollapseExampleIntroducesBaseCopyOfS) {
    Program n = normalize(parse_program(fixtures::collapse_example(3)));
    ASSERT_EQ(n.rules.size(), 4u);
    EXPECT_EQ(n.render(n.rules[2]), "r(X,Y) :- t(X), s_base(X,Y).");
    EXPECT_EQ(n.rules[3].kind, RuleKind::Base);
}

TEST(CoreProperties, RoundTripAndIdempotence) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        std::string text = fixtures::random_program_text(rng);
        Program p = parse_program(text);
        Program again = parse_program(serialize(p));
        ASSERT_TRUE(structurally_equal(p, again)) << text;
        Program n = normalize(p);
        ASSERT_TRUE(structurally_equal(normalize(n), n)) << text;
        ASSERT_TRUE(structurally_equal(parse_program(serialize(n)), n)) << text;
    }
}

TEST(CoreProperties, NormalizePreservesLineage) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 60; ++i) {
        std::string text = fixtures::random_program_text(rng);
        Program p = parse_program(text);
        auto a = tcp_fixpoint(p, TcpMode::Naive).final;
        auto b = tcp_fixpoint(normalize(p), TcpMode::Naive).final;
        for (AtomId id = 0; id < a.atoms.size(); ++id) {
            if (!a.known(id)) continue;
            auto other = b.atoms.find(a.atoms.to_atom(id));
            ASSERT_TRUE(other && b.known(*other)) << text;
            ASSERT_TRUE(truth_table_equivalent(a.lambda[id], b.lambda[*other])) << text;
        }
    }
}
