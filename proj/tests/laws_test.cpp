#include <gtest/gtest.h>

#include "effects/laws.hpp"

using namespace effects;

namespace {

LawOptions quick() {
  LawOptions o;
  o.exhaustive_limit = 20'000;
  o.samples = 300;
  return o;
}

bool all_passed(const std::vector<LawReport>& rs) {
  for (const auto& r : rs)
    if (r.applicable && !r.passed) return false;
  return true;
}

bool any_failed(const std::vector<LawReport>& rs) { return !all_passed(rs); }

// A type-preserving (where possible) corruption of an effectful value.
Value corrupt(const Evaluator& ev, const Eff& f, const Value& v) {
  switch (f.kind) {
    case EffKind::S: return make_set({});
    case EffKind::F: return make_pair(v.pair().first, make_set({}));
    case EffKind::M: return failure();
    case EffKind::W: return make_pair(v.pair().second, v.pair().first);
    case EffKind::R: {
      Value first = apply(v, v.func().fun->a()->at(0));
      return ev.fun(v.func().fun, [first](const Value&) { return first; });
    }
    case EffKind::C: return ev.fun(v.func().fun, [v](const Value& c) { return Value(!apply(v, c).boolean()); });
    case EffKind::T:
      return ev.fun(v.func().fun, [v](const Value& s) { return make_pair(apply(v, s).pair().first, s); });
    case EffKind::D: return ev.fun(v.func().fun, [](const Value&) { return make_set({}); });
  }
  return v;
}

Ops mutant(const Ops& ops, const std::string& target) {
  auto ev = ops.evaluator();
  return ops.with_mutation([ev, target](const std::string& op, const Eff& f, const Value& v) {
    return op == target ? corrupt(*ev, f, v) : v;
  });
}

struct Laws : ::testing::Test {
  EvalPtr ev = Evaluator::make(Model::synthetic(2, 1));
  Ops ops{ev};
};

}  // namespace

TEST_F(Laws, FunctorLawsHoldForEveryEffect) {
  for (const auto& f : default_law_effects()) {
    auto rs = check_functor_laws(ops, f, quick());
    EXPECT_TRUE(all_passed(rs)) << print_eff(f) << "\n" << law_reports_table(rs);
  }
}

TEST_F(Laws, ApplicativeAndMonadLawsHold) {
  for (const auto& f : default_law_effects()) {
    if (!is_applicative(f)) continue;
    auto a = check_applicative_laws(ops, f, quick());
    auto m = check_monad_laws(ops, f, quick());
    EXPECT_TRUE(all_passed(a)) << law_reports_table(a);
    EXPECT_TRUE(all_passed(m)) << law_reports_table(m);
    EXPECT_EQ(a.size(), 4u);
    EXPECT_EQ(m.size(), 3u);
  }
}

TEST_F(Laws, ContinuationFunctorIsCheckedExhaustively) {
  auto rs = check_functor_laws(ops, ty::eff(EffKind::C, ty::t()));
  for (const auto& r : rs) {
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.exhaustive) << r.law;
  }
}

TEST_F(Laws, NonMonoidWriterIsReportedNotApplicable) {
  Eff we = ty::eff(EffKind::W, ty::e());
  auto a = check_applicative_laws(ops, we);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_FALSE(a[0].applicable);
  EXPECT_NE(a[0].note.find("monoid"), std::string::npos);
  EXPECT_FALSE(check_monad_laws(ops, we)[0].applicable);
}

TEST_F(Laws, AdjunctionAndEquivalencesHold) {
  auto a = check_adjunction_laws(ops, quick());
  EXPECT_TRUE(all_passed(a)) << law_reports_table(a);
  auto e = check_equivalences(ops, quick());
  EXPECT_TRUE(all_passed(e)) << law_reports_table(e);
}

TEST_F(Laws, ReportInvariants) {
  auto rs = check_all_laws(ops, quick(), {ty::eff(EffKind::S), ty::eff(EffKind::W, ty::e())});
  for (const auto& r : rs) {
    EXPECT_EQ(r.passed, r.applicable && r.counterexamples.empty());
    if (r.applicable) {
      EXPECT_GT(r.cases, 0u);
    }
  }
  auto j = law_reports_to_json(rs);
  ASSERT_TRUE(j.is_array());
  EXPECT_TRUE(j[0].contains("counterexamples"));
  EXPECT_NE(law_reports_table(rs).find("functor.identity"), std::string::npos);
}

// Each mutation fixture must be caught by the class of laws it breaks.
TEST_F(Laws, MutationFixturesAreDetected) {
  for (const auto& f : default_law_effects()) {
    EXPECT_TRUE(any_failed(check_functor_laws(mutant(ops, "fmap"), f, quick()))) << "fmap " << print_eff(f);
    if (!is_applicative(f)) continue;
    EXPECT_TRUE(any_failed(check_applicative_laws(mutant(ops, "ap"), f, quick()))) << "ap " << print_eff(f);
    EXPECT_TRUE(any_failed(check_monad_laws(mutant(ops, "bind"), f, quick()))) << "bind " << print_eff(f);
  }
}

TEST_F(Laws, CorruptedPsiIsDetected) {
  auto ev2 = ev;
  Ops bad = ops.with_mutation([ev2](const std::string& op, const Eff&, const Value& v) {
    if (op != "psi") return v;
    auto idom = v.func().fun->a()->b();
    return ev2->fun(v.func().fun, [v, idom](const Value& w) {
      Value j = idom->at((idom->index_of(w.pair().second) + 1) % idom->size());
      return apply(v, make_pair(w.pair().first, j));
    });
  });
  auto rs = check_adjunction_laws(bad, quick());
  EXPECT_TRUE(any_failed(rs));
  bool psi_phi_failed = false;
  for (const auto& r : rs)
    if (r.law == "adjunction.psi_phi" && !r.passed) psi_phi_failed = true;
  EXPECT_TRUE(psi_phi_failed);
}

TEST_F(Laws, CounterexamplesAreRendered) {
  auto rs = check_functor_laws(mutant(ops, "fmap"), ty::eff(EffKind::S), quick());
  ASSERT_FALSE(rs.empty());
  ASSERT_FALSE(rs[0].counterexamples.empty());
  EXPECT_NE(rs[0].counterexamples[0].find("X = {"), std::string::npos);
}
