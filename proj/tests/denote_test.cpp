#include <gtest/gtest.h>

#include <random>

#include "effects/denote.hpp"
#include "test_util.hpp"

using namespace effects;

namespace {

struct Denote : ::testing::Test {
  Model m = [] {
    Model x = Model::synthetic(3);
    x.pred1["cat"] = {0, 2};
    x.pred2["likes"] = {{0, 1}, {1, 1}, {2, 0}};  // (subject, object)
    return x;
  }();
  EvalPtr ev = Evaluator::make(m);
  Ops ops{ev};
  Ty e = ty::e(), t = ty::t();

  Value ents(std::initializer_list<EntityId> xs) const {
    std::vector<Value> v;
    for (auto x : xs) v.push_back(Ent{x});
    return make_set(v);
  }
  Value pred(std::set<EntityId> ext) const {
    return ev->fun(e, t, [ext](const Value& x) { return Value(ext.count(x.ent()) > 0); });
  }
  Value run(const char* mode, const Value& l, const Value& r, const char* lt, const char* rt) const {
    return apply_mode(ops, parse_mode(mode), l, r, parse_type(lt), parse_type(rt));
  }
};

}  // namespace

TEST_F(Denote, BasicModes) {
  Value cat = pred({0, 2});
  EXPECT_TRUE(run("BA", Ent{0}, cat, "e", "e -> t").boolean());
  EXPECT_FALSE(run("FA", cat, Ent{1}, "e -> t", "e").boolean());
  Value both = run("PM", cat, pred({2}), "e -> t", "e -> t");
  EXPECT_TRUE(values_equal(both, pred({2})));
}

// {x | x in A} applied pointwise to {f | f in P}: {f x | f in P, x in A}.
TEST_F(Denote, StructuredApplicationIsTheComprehension) {
  Value subj = ents({0, 1});
  Value preds = make_set({pred({0}), pred({})});
  Value out = run("AP(BA)", subj, preds, "S e", "S (e -> t)");
  std::vector<Value> expect;
  for (const auto& x : subj.set().members)
    for (const auto& f : preds.set().members) expect.push_back(apply(f, x));
  EXPECT_TRUE(values_equal(out, make_set(expect)));
}

TEST_F(Denote, CounitResolvesThePronoun) {
  // <x, j> : W[e] e with x = a, j = c; the predicate reads the pronoun.
  Value subj = make_pair(Ent{0}, Ent{2});
  Value vp = ev->fun(e, ty::fn(e, t), [this](const Value& i) {
    return ev->fun(e, t, [i, this](const Value& x) {
      return Value(m.relation("likes").count({x.ent(), i.ent()}) > 0);
    });
  });
  Value out = run("CU(BA)", subj, vp, "W[e] e", "R[e] (e -> t)");
  EXPECT_FALSE(out.boolean());  // a does not like c
  Value subj2 = make_pair(Ent{2}, Ent{0});
  EXPECT_TRUE(run("CU(BA)", subj2, vp, "W[e] e", "R[e] (e -> t)").boolean());  // c likes a
}

TEST_F(Denote, LoweringAppliesTheIdentity) {
  Value not_ = ev->fun(t, t, [](const Value& p) { return Value(!p.boolean()); });
  Value everyone = detail::quantifier(*ev, "every", {0, 1, 2});
  Value cat_everyone = run("ML(BA)", everyone, pred({0, 2}), "C[t] e", "e -> t");
  Value out = run("DN(MR(FA))", not_, cat_everyone, "t -> t", "C[t] t");
  EXPECT_FALSE(out.boolean());  // negation lands under the quantifier: every x. not cat x
}

TEST_F(Denote, UnlicensedModeThrows) {
  EXPECT_THROW(run("FA", Ent{0}, Ent{1}, "e", "e"), type_error);
  EXPECT_THROW(run("CU(BA)", Ent{0}, Ent{1}, "R[e] e", "W[e] (e -> t)"), type_error);
}

TEST_F(Denote, UnitLiftsIntoTheFunction) {
  Value exclo = ev->fun(ty::S(t), t, [](const Value& s) {
    for (const auto& p : s.set().members)
      if (p.boolean()) return Value(true);
    return Value(false);
  });
  Value props = make_set({Value(false)});
  EXPECT_FALSE(run("FA", exclo, props, "S t -> t", "S t").boolean());
  Value lifted = run("MR(UR(FA))", exclo, props, "S t -> t", "S t");
  EXPECT_TRUE(values_equal(lifted, make_set({Value(false)})));
}

TEST_F(Denote, RandomDerivationsInhabitTheirTypes) {
  auto small = Evaluator::make(Model::synthetic(2, 1));
  Ops o(small);
  Engine eng;
  std::mt19937 rng(4242);
  int run_count = 0, tries = 0;
  while (run_count < 300 && tries < 20000) {
    ++tries;
    auto res = fixtures::soundness_trial(rng, o, eng);
    if (!res) continue;
    ++run_count;
    EXPECT_EQ(*res, "");
  }
  EXPECT_EQ(run_count, 300);
}

TEST(Schemas, DefiniteNeedsUniqueness) {
  Model one = Model::synthetic(3);
  one.pred1["planet"] = {1};
  Model two = Model::synthetic(3);
  two.pred1["planet"] = {1, 2};
  DenSpec def{"def", {std::string("planet")}};
  Ty me = ty::M(ty::e());
  EXPECT_TRUE(values_equal(instantiate_schema(Ops(Evaluator::make(one)), def, me), just(Ent{1})));
  EXPECT_TRUE(values_equal(instantiate_schema(Ops(Evaluator::make(two)), def, me), failure()));
}

TEST(Schemas, PushPairsAnEntityWithItself) {
  Ops o(Evaluator::make(Model::synthetic(3)));
  Value push = instantiate_schema(o, DenSpec{"push", {}}, parse_type("e -> W[e] e"));
  EXPECT_TRUE(values_equal(apply(push, Ent{2}), make_pair(Ent{2}, Ent{2})));
}

TEST(Schemas, NoQuantifierIsNegatedExistential) {
  Model m = Model::synthetic(4);
  m.pred1["planet"] = {0, 3};
  auto ev = Evaluator::make(m);
  Ops o(ev);
  Value no = instantiate_schema(o, DenSpec{"quant", {std::string("no"), std::string("planet")}}, parse_type("C[t] e"));
  for (const auto& p : ev->domain(parse_type("e -> t"))->elements()) {
    bool any = false;
    for (EntityId x : m.pred1["planet"]) any = any || apply(p, Ent{x}).boolean();
    EXPECT_EQ(apply(no, p).boolean(), !any);
  }
}

TEST(Schemas, PronounsReadTheirIndex) {
  Model m = Model::synthetic(3, 2);
  auto ev = Evaluator::make(m);
  Ops o(ev);
  Value pro1 = instantiate_schema(o, DenSpec{"pro", {std::size_t{1}}}, parse_type("R[g] e"));
  EXPECT_EQ(apply(pro1, AsgnV{{0, 2}}).ent(), 2u);
  EXPECT_THROW(instantiate_schema(o, DenSpec{"pro", {std::size_t{2}}}, parse_type("R[g] e")), validation_error);
}

TEST(Schemas, RejectsTypeClash) {
  Ops o(Evaluator::make(Model::synthetic(2)));
  EXPECT_THROW(instantiate_schema(o, DenSpec{"pred1", {std::string("x")}}, parse_type("S e")), validation_error);
}
