#include <gtest/gtest.h>

#include <vector>

#include "effects/mode.hpp"

using namespace effects;

namespace {

std::vector<Mode> modes_up_to_depth(std::size_t depth) {
  std::vector<Mode> out;
  for (auto op : kBasicOps) out.push_back(Mode::basic(op));
  std::vector<Mode> frontier = out;
  for (std::size_t d = 2; d <= depth; ++d) {
    std::vector<Mode> next;
    for (const auto& m : frontier)
      for (auto op : kMetaOps) next.push_back(Mode::wrap(op, m));
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Mode, PrintsCanonicalForm) {
  Mode m = Mode::wrap(ModeOp::MR, Mode::wrap(ModeOp::ML, Mode::basic(ModeOp::BA)));
  EXPECT_EQ(print_mode(m), "MR(ML(BA))");
  EXPECT_EQ(print_mode(Mode::basic(ModeOp::FA)), "FA");
  EXPECT_EQ(display_mode(m), "↗ ↖ <");
}

TEST(Mode, RoundTripExhaustiveUpToDepth6) {
  auto all = modes_up_to_depth(6);
  EXPECT_EQ(all.size(), 5u + 50u + 500u + 5000u + 50000u + 500000u);
  for (const auto& m : all) {
    ASSERT_EQ(parse_mode(print_mode(m)), m) << print_mode(m);
    ASSERT_EQ(print_mode(parse_mode(print_mode(m))), print_mode(m));
  }
}

TEST(Mode, RejectsMalformed) {
  EXPECT_THROW(parse_mode("MR"), parse_error);
  EXPECT_THROW(parse_mode("FA(BA)"), parse_error);
  EXPECT_THROW(parse_mode("XX"), parse_error);
  EXPECT_THROW(parse_mode("MR(BA"), parse_error);
  EXPECT_THROW(parse_mode("MR(BA))"), parse_error);
  EXPECT_THROW(Mode::basic(ModeOp::MR), validation_error);
}
