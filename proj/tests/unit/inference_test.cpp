#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "rulelens/error.hpp"
#include "rulelens/inference.hpp"
#include "rulelens/triples.hpp"
#include "support.hpp"

using namespace rulelens;
using rulelens::testing::ex;
using rulelens::testing::st;

namespace {

InferenceModel run(const std::string& facts, const std::string& rules, InferenceOptions o = {}) {
    return infer(parse_triples(facts), parse_rules(rules), o);
}

const char* kChain =
    "@prefix ex: <http://e/#> .\n"
    "ex:a ex:ancestorOf ex:b .\nex:b ex:ancestorOf ex:c .\nex:c ex:ancestorOf ex:d .\n";
const char* kTransitivity = "[T: (?x ex:ancestorOf ?y) (?y ex:ancestorOf ?z) -> (?x ex:ancestorOf ?z)]";

}  // namespace

TEST(Infer, LoanGroundTruth) {
    const auto l = rulelens::testing::load("loan");
    const std::vector<Statement> want{
        st("applicant1", "dtiRatio", Term::number(2000.0 / 5000.0)),
        st("applicant2", "dtiRatio", Term::number(0.3)),
        st("applicant3", "dtiRatio", Term::number(0.2)),
        st("applicant3", "loanEligibility", Term::string("Eligible")),
        st("applicant1", "loanEligibility", Term::string("Not Eligible")),
        st("applicant2", "loanEligibility", Term::string("Not Eligible")),
    };
    const auto got = list_statements(l.model, Which::Inferred);
    EXPECT_EQ(got, want);
    EXPECT_EQ(got, l.fixture.manifest.expected_inferred);
    EXPECT_EQ(got[0].object.value(), 0.4);
    EXPECT_EQ(got[1].object.value(), 1500.0 / 5000.0);
    EXPECT_TRUE(l.model.diagnostics().empty());
}

TEST(Infer, CanonicalDerivationIsFirst) {
    const auto l = rulelens::testing::load("loan");
    const auto& d = derivations_of(l.model, st("applicant1", "loanEligibility", Term::string("Not Eligible")));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(l.model.rules()[d[0].rule_index].name, "NotEligibleDTIRule");
    EXPECT_EQ(d[0].premises, (std::vector<Statement>{st("applicant1", "type", ex("Person")),
                                                     st("applicant1", "dtiRatio", Term::number(0.4))}));
    EXPECT_EQ(d[0].bindings.at("dti"), Term::number(0.4));

    // applicant2 has DTI 0.3, so only the credit rule fires.
    const auto& d2 = derivations_of(l.model, st("applicant2", "loanEligibility", Term::string("Not Eligible")));
    ASSERT_EQ(d2.size(), 1u);
    EXPECT_EQ(l.model.rules()[d2[0].rule_index].name, "NotEligibleCreditRule");

    // Two rules reaching the same conclusion: both recorded, file order first.
    const InferenceModel m = run("@prefix ex: <http://e/#> .\nex:a ex:p 1 .\nex:a ex:q 2 .\n",
                                 "@prefix ex: <http://e/#> .\n"
                                 "[R1: (?x ex:p ?v) -> (?x ex:r ex:yes)]\n"
                                 "[R2: (?x ex:q ?v) -> (?x ex:r ex:yes)]\n");
    const auto& d3 = derivations_of(m, st("a", "r", ex("yes")));
    ASSERT_EQ(d3.size(), 2u);
    EXPECT_EQ(m.rules()[d3[0].rule_index].name, "R1");
    EXPECT_EQ(m.rules()[d3[1].rule_index].name, "R2");
}

TEST(Infer, TransitiveChain) {
    const InferenceModel m = run(kChain, kTransitivity);
    const auto got = list_statements(m, Which::Inferred);
    ASSERT_EQ(got.size(), 3u);
    EXPECT_EQ(got[0], st("a", "ancestorOf", ex("c")));
    EXPECT_EQ(got[1], st("b", "ancestorOf", ex("d")));
    EXPECT_EQ(got[2], st("a", "ancestorOf", ex("d")));
    const auto& ad = derivations_of(m, got[2]);
    EXPECT_EQ(ad[0].premises, (std::vector<Statement>{got[0], st("c", "ancestorOf", ex("d"))}));
    // a→d is reachable as a→b + b→d too; that second pair is recorded after.
    ASSERT_EQ(ad.size(), 2u);
    EXPECT_EQ(ad[1].premises, (std::vector<Statement>{st("a", "ancestorOf", ex("b")), got[1]}));
}

TEST(Infer, NoRulesNoInferences) {
    const auto l = rulelens::testing::load("loan");
    const InferenceModel m = infer(l.fixture.graph, {});
    EXPECT_TRUE(m.inferred().empty());
    EXPECT_EQ(m.base(), l.fixture.graph);
    EXPECT_EQ(m.derivation_count(), 0u);
}

TEST(Infer, ConclusionsAlreadyAssertedAreNotInferred) {
    const InferenceModel m = run(std::string(kChain) + "ex:a ex:ancestorOf ex:c .\n", kTransitivity);
    EXPECT_FALSE(m.inferred().contains(st("a", "ancestorOf", ex("c"))));
    EXPECT_TRUE(is_asserted(m, st("a", "ancestorOf", ex("c"))));
    EXPECT_EQ(m.inferred().size(), 2u);
}

TEST(Infer, Deterministic) {
    for (const char* id : {"loan", "transitive", "diet"}) {
        const Fixture f = load_fixture(id);
        const InferenceModel a = infer(f.graph, f.rules.rules), b = infer(f.graph, f.rules.rules);
        ASSERT_EQ(list_statements(a, Which::All), list_statements(b, Which::All)) << id;
        for (const Statement& s : a.inferred().statements()) EXPECT_EQ(a.derivations(s), b.derivations(s));
    }
}

TEST(Infer, CapStopsRunawayRules) {
    const std::string facts = "@prefix ex: <http://e/#> .\nex:n ex:value 0 .\n";
    const std::string rules = "[Count: (?x ex:value ?v) sum(?v '1' ?w) -> (?x ex:value ?w)]";
    try {
        run(facts, rules, {.max_inferred = 25});
        FAIL() << "expected InferenceCapExceeded";
    } catch (const InferenceCapExceeded& e) {
        EXPECT_EQ(e.cap(), 25u);
    }
    EXPECT_THROW(run(facts, rules), InferenceCapExceeded);
    const InferenceModel bounded = run(facts, "[Count: (?x ex:value ?v) lessThan(?v '10') sum(?v '1' ?w) -> (?x ex:value ?w)]",
                                       {.max_inferred = 10});
    EXPECT_EQ(bounded.inferred().size(), 10u);
}

TEST(Infer, CapFromEnvironment) {
    ::setenv("RULELENS_MAX_INFERRED", "42", 1);
    EXPECT_EQ(options_from_env().max_inferred, 42u);
    ::setenv("RULELENS_MAX_INFERRED", "junk", 1);
    EXPECT_EQ(options_from_env().max_inferred, 10'000u);
    ::unsetenv("RULELENS_MAX_INFERRED");
    EXPECT_EQ(options_from_env().max_inferred, 10'000u);
}

TEST(Infer, BuiltinFailuresBecomeDiagnostics) {
    const InferenceModel m = run("@prefix ex: <http://e/#> .\nex:a ex:debt 1.0 .\nex:a ex:income 0.0 .\n",
                                 "[Div: (?x ex:debt ?d) (?x ex:income ?i) quotient(?d ?i ?r) -> (?x ex:ratio ?r)]");
    EXPECT_TRUE(m.inferred().empty());
    ASSERT_EQ(m.diagnostics().size(), 1u);
    EXPECT_EQ(m.diagnostics()[0].rfind("Div", 0), 0u);
}

TEST(Infer, StatementQueries) {
    const auto l = rulelens::testing::load("loan");
    EXPECT_TRUE(is_asserted(l.model, st("applicant1", "creditScore", Term::number(680))));
    EXPECT_FALSE(is_asserted(l.model, st("applicant1", "dtiRatio", Term::number(0.4))));
    EXPECT_THROW(is_asserted(l.model, st("applicant1", "dtiRatio", Term::number(0.5))), NotFoundError);
    EXPECT_THROW(derivations_of(l.model, st("applicant1", "creditScore", Term::number(680))), PreconditionError);
    EXPECT_THROW(derivations_of(l.model, st("nobody", "x", Term::number(1))), NotFoundError);
    const auto all = list_statements(l.model, Which::All);
    EXPECT_EQ(all.size(), 18u);
    EXPECT_EQ(all[12], st("applicant1", "dtiRatio", Term::number(0.4)));
    EXPECT_EQ(list_statements(l.model, Which::Base).size(), 12u);
}

TEST(Infer, FixpointIdempotentAndMonotone) {
    for (const auto& f : rulelens::testing::check_fixpoint_properties(21, 100)) ADD_FAILURE() << f;
}

TEST(Infer, DerivationsAreSoundAndAcyclic) {
    for (const auto& f : rulelens::testing::check_derivation_soundness()) ADD_FAILURE() << f;
}
