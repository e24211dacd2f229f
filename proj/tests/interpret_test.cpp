#include <gtest/gtest.h>

#include <set>
#include <string>

#include "effects/denote.hpp"
#include "effects/interpret.hpp"

using namespace effects;

namespace {

const std::string kDir = EFFECTS_FRAGMENTS_DIR;

Lexicon frag(const std::string& name) { return load_lexicon(kDir + "/" + name + ".lexicon.json"); }

std::set<std::string> modes_at_root(const Interpretation& in) {
  std::set<std::string> out;
  for (const auto& d : in.derivations) out.insert(print_mode(d->mode) + " : " + print_type(d->ty));
  return out;
}

bool any_island_node(const Sem& s, const std::function<bool(const Sem&)>& bad) {
  if (s->kind == SemNode::Kind::Lex) return false;
  if (s->island && bad(s)) return true;
  return any_island_node(s->left, bad) || any_island_node(s->right, bad);
}

}  // namespace

TEST(Interpret, ExtensionalSentenceHasOneDerivation) {
  Lexicon lex = frag("ch1-extensional");
  auto in = synsem(lex, parse_tree("[mars [followed [satellite mars]]]"), CombineConfig::preset("ch2"));
  ASSERT_EQ(in.derivations.size(), 1u);
  const Sem& d = in.derivations[0];
  EXPECT_EQ(print_type(d->ty), "t");
  EXPECT_EQ(print_mode(d->mode), "BA");
  EXPECT_EQ(print_mode(d->right->mode), "FA");
  EXPECT_EQ(print_mode(d->right->right->mode), "FA");
  EXPECT_FALSE(in.truncated);

  Ops ops(Evaluator::make(load_model(kDir + "/ch1-extensional.model.json")));
  EXPECT_TRUE(denote(ops, d, lex).boolean());  // mars followed phobos
}

TEST(Interpret, UnknownWordsYieldNothing) {
  Lexicon lex = frag("ch1-extensional");
  Syn s = parse_tree("[jupiter [followed zork]]");
  EXPECT_TRUE(synsem(lex, s).derivations.empty());
  EXPECT_EQ(unknown_words(lex, s), std::vector<std::string>{"zork"});
}

TEST(Interpret, EvaluatedTypes) {
  EXPECT_TRUE(evaluated(parse_type("t")));
  EXPECT_TRUE(evaluated(parse_type("S t")));
  EXPECT_TRUE(evaluated(parse_type("R[e] (W[e] t)")));
  EXPECT_TRUE(evaluated(parse_type("e -> S t")));
  EXPECT_FALSE(evaluated(parse_type("C[t] t")));
  EXPECT_FALSE(evaluated(parse_type("S (C[t] t)")));
  EXPECT_FALSE(evaluated(parse_type("e -> C[t] t")));
}

TEST(Interpret, IslandsFilterUnevaluatedTypes) {
  Lexicon lex = frag("ch4-monad");
  auto cfg = CombineConfig::preset("full");
  auto with_island = synsem(lex, parse_tree("[[if {everyone passed}] [nobody cheered]]"), cfg);
  auto plain = synsem(lex, parse_tree("[[if [everyone passed]] [nobody cheered]]"), cfg);
  ASSERT_FALSE(with_island.derivations.empty());
  EXPECT_LT(with_island.derivations.size(), plain.derivations.size());
  for (const auto& d : with_island.derivations)
    EXPECT_FALSE(any_island_node(d, [](const Sem& s) { return !evaluated(s->ty); }));
}

// Effects other than C pass through islands unchanged.
TEST(Interpret, IslandsAreTransparentToOtherEffects) {
  Lexicon lex = frag("ch5-adjunction");
  auto cfg = CombineConfig::preset("full");
  auto a = synsem(lex, parse_tree("[it {orbits jupiter}]"), cfg);
  auto b = synsem(lex, parse_tree("[it [orbits jupiter]]"), cfg);
  EXPECT_EQ(modes_at_root(a), modes_at_root(b));
  auto c = synsem(lex, parse_tree("{[a planet] [orbits it]}"), cfg);
  auto d = synsem(lex, parse_tree("[[a planet] [orbits it]]"), cfg);
  EXPECT_EQ(modes_at_root(c), modes_at_root(d));
}

TEST(Interpret, DerivationsAreLocallySound) {
  Lexicon lex = frag("ch4-monad");
  auto cfg = CombineConfig::preset("full");
  Engine eng;
  auto in = synsem(lex, parse_tree("[[if {everyone passed}] [nobody cheered]]"), cfg, eng);
  for (const auto& d : in.derivations) EXPECT_TRUE(locally_sound(d, cfg, eng)) << print_sem(d);
}

TEST(Interpret, AddingEntriesNeverRemovesDerivations) {
  Lexicon lex = frag("ch2-functor");
  Syn s = parse_tree("[it [orbits jupiter]]");
  auto before = synsem(lex, s, CombineConfig::preset("ch3"));
  lex.add("jupiter", Entry{parse_type("S e"), DenSpec{"wh", {std::string("planet")}}});
  auto after = synsem(lex, s, CombineConfig::preset("ch3"));
  EXPECT_GT(after.derivations.size(), before.derivations.size());
  auto sb = modes_at_root(before), sa = modes_at_root(after);
  for (const auto& x : sb) EXPECT_TRUE(sa.count(x)) << x;
}

TEST(Interpret, DerivationCapTruncates) {
  Lexicon lex = frag("ch4-monad");
  InterpretOptions opt;
  opt.max_derivations = 3;
  Engine eng;
  auto in = synsem(lex, parse_tree("[someone [admires everyone]]"), CombineConfig::preset("full"), eng, opt);
  EXPECT_TRUE(in.truncated);
  EXPECT_LE(in.derivations.size(), 3u);
}

TEST(Interpret, SemanticDedupGroupsEquivalentDerivations) {
  Lexicon lex = frag("ch3-applicative");
  Ops ops(Evaluator::make(load_model(kDir + "/ch3-applicative.model.json")));
  auto in = synsem(lex, parse_tree("[[a cat] [saw [a dog]]]"), CombineConfig::preset("ch3"));
  auto groups = dedup_semantic(ops, in.derivations, lex);
  std::size_t total = 0;
  for (const auto& [rep, n] : groups) total += n;
  EXPECT_EQ(total, in.derivations.size());
  EXPECT_LT(groups.size(), in.derivations.size());
}
