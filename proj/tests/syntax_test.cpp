#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "effects/syntax.hpp"

using namespace effects;

namespace {

std::uint64_t catalan(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<std::string> words(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

}  // namespace

TEST(Syntax, ParsesNestedBrackets) {
  Syn s = parse_tree("[jupiter [followed [the moon]]]");
  ASSERT_FALSE(s.is_leaf());
  EXPECT_EQ(s.left().word(), "jupiter");
  EXPECT_EQ(s.right().right().right().word(), "moon");
  EXPECT_EQ(s.leaves(), 4u);
}

TEST(Syntax, BareWordIsALeaf) {
  Syn s = parse_tree("  jupiter ");
  EXPECT_TRUE(s.is_leaf());
  EXPECT_EQ(s.word(), "jupiter");
}

TEST(Syntax, BracesMarkIslands) {
  Syn s = parse_tree("[[if {everyone passed}] [nobody cheered]]");
  EXPECT_EQ(s.kind(), Syn::Kind::Branch);
  EXPECT_EQ(s.left().right().kind(), Syn::Kind::Island);
  EXPECT_EQ(s.right().kind(), Syn::Kind::Branch);
}

TEST(Syntax, PrintRoundTrips) {
  for (const char* t : {"[a b]", "[[a b] c]", "[a {b [c d]}]", "{[x y] z}", "leaf"}) {
    Syn s = parse_tree(t);
    EXPECT_EQ(print_tree(s), t);
    EXPECT_EQ(parse_tree(print_tree(s)), s);
  }
}

TEST(Syntax, ErrorsCarryPositions) {
  struct Case {
    const char* text;
    std::size_t pos;
  };
  for (auto c : {Case{"[a b", 4}, Case{"[a b c]", 0}, Case{"[a]", 0}, Case{"[]", 0}, Case{"[a b}", 4},
                 Case{"[a b] c", 6}}) {
    try {
      parse_tree(c.text);
      ADD_FAILURE() << "no error for " << c.text;
    } catch (const parse_error& e) {
      EXPECT_EQ(e.position, c.pos) << c.text << ": " << e.what();
    }
  }
  EXPECT_THROW(parse_tree(""), parse_error);
}

TEST(Syntax, EnumerationCountsAreCatalan) {
  EXPECT_EQ(enumerate_trees(words(1)).size(), 1u);
  EXPECT_EQ(enumerate_trees(words(3)).size(), 2u);
  EXPECT_EQ(enumerate_trees(words(5)).size(), 14u);
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(enumerate_trees(words(n)).size(), catalan(n - 1)) << n;
}

TEST(Syntax, EnumerationIsLeftmostSplitFirstAndPreservesOrder) {
  auto ts = enumerate_trees({"a", "b", "c"});
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(print_tree(ts[0]), "[a [b c]]");
  EXPECT_EQ(print_tree(ts[1]), "[[a b] c]");
  for (const auto& t : enumerate_trees(words(6))) {
    std::vector<std::string> ls;
    auto collect = [&](auto& self, const Syn& s) -> void {
      if (s.is_leaf()) ls.push_back(s.word());
      else {
        self(self, s.left());
        self(self, s.right());
      }
    };
    collect(collect, t);
    EXPECT_EQ(ls, words(6));
  }
}

TEST(Syntax, EnumerationLimits) {
  EXPECT_THROW(enumerate_trees({}), validation_error);
  EXPECT_THROW(enumerate_trees(words(9)), validation_error);
  EXPECT_EQ(tokenize("a  b\tc"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_THROW(tokenize("a [b"), parse_error);
}
