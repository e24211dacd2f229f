#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "effects/denote.hpp"
#include "effects/lexicon.hpp"
#include "effects/model.hpp"

using namespace effects;
using nlohmann::json;

namespace {

const std::string kDir = EFFECTS_FRAGMENTS_DIR;
const char* kFragments[] = {"ch1-extensional", "ch2-functor", "ch3-applicative", "ch4-monad", "ch5-adjunction"};

}  // namespace

TEST(Lexicon, ParsesEntries) {
  json j = json::parse(R"({"cat":[{"type":"e -> t","den":{"schema":"pred1","args":["cat"]}}],
                            "a":[{"type":"(e -> t) -> S e","den":{"schema":"indef"}}]})");
  Lexicon lex = lexicon_from_json(j);
  ASSERT_NE(lex.find("cat"), nullptr);
  EXPECT_EQ((*lex.find("cat"))[0].ty, parse_type("e -> t"));
  EXPECT_EQ((*lex.find("a"))[0].den.schema, "indef");
  EXPECT_EQ(lex.find("dog"), nullptr);
  EXPECT_EQ(lexicon_from_json(lexicon_to_json(lex)).words.size(), lex.words.size());
}

TEST(Lexicon, RejectsBadEntries) {
  auto bad = [](const char* text) { return lexicon_from_json(json::parse(text)); };
  EXPECT_THROW(bad(R"({"cat":[{"type":"S e","den":{"schema":"pred1","args":["cat"]}}]})"), validation_error);
  EXPECT_THROW(bad(R"({"cat":[{"type":"e -> t","den":{"schema":"nope","args":[]}}]})"), validation_error);
  EXPECT_THROW(bad(R"({"cat":[{"type":"e -> t","den":{"schema":"pred1","args":[]}}]})"), validation_error);
  EXPECT_THROW(bad(R"({"cat":[{"type":"e ->","den":{"schema":"pred1","args":["cat"]}}]})"), validation_error);
  EXPECT_THROW(bad(R"({"cat":[{"type":"e -> t","den":{"schema":"pred1","args":["cat"]},"x":1}]})"), validation_error);
  EXPECT_THROW(bad(R"({"q":[{"type":"C[t] e","den":{"schema":"quant","args":["most"]}}]})"), validation_error);
  EXPECT_THROW(bad(R"({"it":[{"type":"R[g] e","den":{"schema":"pro","args":["x"]}}]})"), validation_error);
}

TEST(Lexicon, NestedRestrictorSpec) {
  json j = json::parse(R"({"which":[{"type":"S e","den":{"schema":"wh","args":[{"schema":"pred1","args":["cat"]}]}}]})");
  Lexicon lex = lexicon_from_json(j);
  Model m = Model::synthetic(3);
  m.pred1["cat"] = {1};
  Ops ops(Evaluator::make(m));
  const auto& e = (*lex.find("which"))[0];
  EXPECT_TRUE(values_equal(instantiate_schema(ops, e.den, e.ty), make_set({Ent{1}})));
}

TEST(Model, Validation) {
  EXPECT_EQ(model_from_json(json::parse(R"({"entities":["a","b","c"]})")).size(), 3u);
  EXPECT_THROW(model_from_json(json::parse(R"({"entities":["a"],"pred1":{"p":["x"]}})")), validation_error);
  EXPECT_THROW(model_from_json(json::parse(R"({"entities":["a","a"]})")), validation_error);
  EXPECT_THROW(model_from_json(json::parse(R"({"entities":["a"],"asgn_len":0})")), validation_error);
  EXPECT_THROW(model_from_json(json::parse(R"({"entities":[]})")), validation_error);
  EXPECT_THROW(model_from_json(json::parse(R"({"entities":["a"],"color":{}})")), validation_error);
  EXPECT_THROW(model_from_json(json::parse(R"({"entities":["a"],"pred2":{"r":[["a"]]}})")), validation_error);
  Model m = model_from_json(json::parse(R"({"entities":["a","b"],"pred2":{"r":[["a","b"]]},"constants":{"k":"b"}})"));
  EXPECT_EQ(model_from_json(model_to_json(m)).relation("r"), m.relation("r"));
  EXPECT_EQ(m.resolve("k"), 1u);
}

// Every entry of every shipped fragment instantiates to a value of its type.
TEST(Fragments, AllEntriesInstantiateAndInhabit) {
  for (const char* name : kFragments) {
    Lexicon lex = load_lexicon(kDir + "/" + name + ".lexicon.json");
    Model m = load_model(kDir + "/" + name + ".model.json");
    auto ev = Evaluator::make(m);
    Ops ops(ev);
    EXPECT_FALSE(lex.words.empty()) << name;
    for (const auto& [w, es] : lex.words)
      for (const auto& e : es) {
        Value v = instantiate_schema(ops, e.den, e.ty);
        EXPECT_TRUE(inhabits(*ev, v, e.ty)) << name << " " << w;
      }
  }
}

TEST(Fragments, FunctorFragmentHasVariableFreePronoun) {
  Lexicon lex = load_lexicon(kDir + "/ch2-functor.lexicon.json");
  ASSERT_NE(lex.find("it"), nullptr);
  EXPECT_EQ((*lex.find("it"))[0].ty, parse_type("R[e] e"));
  EXPECT_EQ((*lex.find("it"))[0].den.schema, "pro_vf");
}

TEST(Fragments, MissingFileIsAnError) {
  EXPECT_THROW(load_lexicon(kDir + "/no-such.lexicon.json"), error);
}
