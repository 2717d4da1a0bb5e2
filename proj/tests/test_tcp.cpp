#include <gtest/gtest.h>

#include <random>

#include "ltg/equivalence.hpp"
#include "ltg/normalize.hpp"
#include "ltg/parser.hpp"
#include "ltg/tcp_oracle.hpp"
#include "support.hpp"

using namespace ltg;

namespace {

// Fact variables of the running example in file order.
constexpr FactVar kAb = 0, kBc = 1, kAc = 2, kCb = 3;

Dnf lambda(const TcpInstance& inst, const std::string& text) {
    Program scratch = *inst.program;
    auto id = inst.atoms.find(parse_atom(scratch, text));
    if (!id || !inst.known(*id)) return Dnf::falsity();
    return inst.lambda[*id];
}

}  // namespace

TEST(Tcp, InitialInstanceIsTheDatabase) {
    Program p = parse_program(fixtures::running_example());
    TcpInstance i0 = tcp_initial(p);
    EXPECT_EQ(i0.round, 0u);
    EXPECT_EQ(lambda(i0, "e(a,c)"), Dnf::literal(kAc));
    EXPECT_TRUE(lambda(i0, "p(a,b)").is_false());
}

TEST(Tcp, RunningExampleRounds) {
    Program p = parse_program(fixtures::running_example());
    TcpInstance i1 = tcp_step(tcp_initial(p));
    EXPECT_EQ(lambda(i1, "p(a,b)"), Dnf::literal(kAb));
    EXPECT_EQ(lambda(i1, "p(b,c)"), Dnf::literal(kBc));
    EXPECT_EQ(lambda(i1, "p(a,c)"), Dnf::literal(kAc));
    EXPECT_EQ(lambda(i1, "p(c,b)"), Dnf::literal(kCb));

    TcpInstance i2 = tcp_step(i1);
    EXPECT_TRUE(truth_table_equivalent(lambda(i2, "p(a,b)"), Dnf::from_clauses({{kAc, kCb}, {kAb}})));
    EXPECT_TRUE(truth_table_equivalent(lambda(i2, "p(a,c)"), Dnf::from_clauses({{kAb, kBc}, {kAc}})));
    EXPECT_TRUE(truth_table_equivalent(lambda(i2, "p(b,b)"), Dnf::from_clauses({{kBc, kCb}})));
    EXPECT_TRUE(truth_table_equivalent(lambda(i2, "p(b,c)"), Dnf::literal(kBc)));

    TcpInstance i3 = tcp_step(i2);
    for (const char* a : {"p(a,b)", "p(a,c)", "p(b,b)", "p(b,c)"})
        EXPECT_TRUE(truth_table_equivalent(lambda(i3, a), lambda(i2, a))) << a;
    EXPECT_FALSE(i3.any_updated());
}

TEST(Tcp, RunningExampleFixpoint) {
    Program p = parse_program(fixtures::running_example());
    for (TcpMode mode : {TcpMode::Naive, TcpMode::Delta}) {
        TcpRun run = tcp_fixpoint(p, mode);
        EXPECT_TRUE(run.converged);
        EXPECT_EQ(run.final.round, 3u);
        EXPECT_EQ(lambda(run.final, "p(a,b)"), Dnf::from_clauses({{kAb}, {kAc, kCb}}));
    }
}

TEST(Tcp, FactsOnlyConvergesImmediately) {
    Program p = parse_program("0.4::e(a,b).");
    TcpRun run = tcp_fixpoint(p, TcpMode::Naive, 64, true);
    EXPECT_TRUE(run.converged);
    EXPECT_EQ(run.final.round, 1u);
    EXPECT_EQ(lambda(run.final, "e(a,b)"), Dnf::literal(0));
    EXPECT_EQ(run.final.instantiations, 0u);
}

TEST(Tcp, RoundCap) {
    Program p = parse_program(fixtures::running_example());
    TcpRun run = tcp_fixpoint(p, TcpMode::Naive, 2);
    EXPECT_FALSE(run.converged);
    EXPECT_EQ(run.final.round, 2u);
}

TEST(Tcp, DeltaDoesLessWork) {
    Program p = parse_program(fixtures::running_example());
    auto naive = tcp_fixpoint(p, TcpMode::Naive).final;
    auto delta = tcp_fixpoint(p, TcpMode::Delta).final;
    EXPECT_LT(delta.instantiations, naive.instantiations);
}

TEST(TcpProperties, NaiveAndDeltaAgree) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 100; ++i) {
        std::string text = fixtures::random_program_text(rng);
        Program p = parse_program(text);
        auto naive = tcp_fixpoint(p, TcpMode::Naive);
        auto delta = tcp_fixpoint(p, TcpMode::Delta);
        ASSERT_TRUE(naive.converged && delta.converged) << text;
        EXPECT_LE(delta.final.instantiations, naive.final.instantiations) << text;
        for (AtomId id = 0; id < naive.final.atoms.size(); ++id) {
            if (!naive.final.known(id)) continue;
            auto other = delta.final.atoms.find(naive.final.atoms.to_atom(id));
            ASSERT_TRUE(other && delta.final.known(*other)) << text;
            ASSERT_TRUE(truth_table_equivalent(naive.final.lambda[id], delta.final.lambda[*other])) << text;
        }
    }
}

TEST(TcpProperties, LambdaOnlyGrows) {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 40; ++i) {
        Program p = normalize(parse_program(fixtures::random_program_text(rng)));
        auto run = tcp_fixpoint(p, TcpMode::Naive, 64, true);
        for (std::size_t k = 1; k < run.history.size(); ++k) {
            const auto& prev = run.history[k - 1];
            const auto& now = run.history[k];
            for (AtomId id = 0; id < prev.atoms.size(); ++id) {
                if (!prev.known(id)) continue;
                ASSERT_TRUE(now.known(id));
                // prev implies now
                ASSERT_TRUE(truth_table_equivalent(disjoin(prev.lambda[id], now.lambda[id]), now.lambda[id]));
            }
        }
    }
}
