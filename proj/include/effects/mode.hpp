#pragma once

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "effects/error.hpp"

namespace effects {

enum class ModeOp { FA, BA, PM, FC, RR, MR, ML, AP, UR, UL, JN, CU, ER, EL, DN };

inline constexpr std::array<ModeOp, 5> kBasicOps = {ModeOp::FA, ModeOp::BA, ModeOp::PM,
                                                     ModeOp::FC, ModeOp::RR};
inline constexpr std::array<ModeOp, 10> kMetaOps = {ModeOp::MR, ModeOp::ML, ModeOp::AP,
                                                    ModeOp::UR, ModeOp::UL, ModeOp::JN,
                                                    ModeOp::CU, ModeOp::ER, ModeOp::EL,
                                                    ModeOp::DN};

inline bool is_basic(ModeOp op) { return static_cast<int>(op) <= static_cast<int>(ModeOp::RR); }

inline std::string_view op_name(ModeOp op) {
  static constexpr std::string_view names[] = {"FA", "BA", "PM", "FC", "RR", "MR", "ML", "AP",
                                               "UR", "UL", "JN", "CU", "ER", "EL", "DN"};
  return names[static_cast<int>(op)];
}

inline std::optional<ModeOp> op_from_name(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(ModeOp::DN); ++i)
    if (op_name(static_cast<ModeOp>(i)) == s) return static_cast<ModeOp>(i);
  return std::nullopt;
}

// A basic mode, or a meta mode wrapping exactly one inner mode.
class Mode {
 public:
  Mode() = default;
  static Mode basic(ModeOp op) {
    if (!is_basic(op)) throw validation_error("meta mode needs an inner mode");
    return Mode(op, nullptr);
  }
  static Mode wrap(ModeOp op, Mode inner) {
    if (is_basic(op)) throw validation_error("basic mode takes no inner mode");
    return Mode(op, std::make_shared<const Mode>(std::move(inner)));
  }

  ModeOp op() const { return op_; }
  bool basic() const { return inner_ == nullptr; }
  const Mode& inner() const { return *inner_; }

  std::size_t depth() const { return basic() ? 1 : 1 + inner_->depth(); }

  friend bool operator==(const Mode& a, const Mode& b) {
    if (a.op_ != b.op_ || a.basic() != b.basic()) return false;
    return a.basic() || *a.inner_ == *b.inner_;
  }
  friend std::strong_ordering operator<=>(const Mode& a, const Mode& b) {
    if (auto c = a.op_ <=> b.op_; c != 0) return c;
    if (a.basic() || b.basic()) return !a.basic() <=> !b.basic();
    return *a.inner_ <=> *b.inner_;
  }

 private:
  Mode(ModeOp op, std::shared_ptr<const Mode> inner) : op_(op), inner_(std::move(inner)) {}
  ModeOp op_ = ModeOp::FA;
  std::shared_ptr<const Mode> inner_;
};

inline std::string print_mode(const Mode& m) {
  std::string s(op_name(m.op()));
  if (!m.basic()) s += "(" + print_mode(m.inner()) + ")";
  return s;
}

inline std::string_view op_glyph(ModeOp op) {
  static constexpr std::string_view glyphs[] = {">", "<", "&", ".", "R",  "↗", "↖", "⊛",
                                                "η→", "η←", "μ", "ε", "Υ→", "Υ←", "⇓"};
  return glyphs[static_cast<int>(op)];
}

// Unicode display form, e.g. "↗ ↖ <".
inline std::string display_mode(const Mode& m) {
  std::string s(op_glyph(m.op()));
  if (!m.basic()) s += " " + display_mode(m.inner());
  return s;
}

inline Mode parse_mode(std::string_view s) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  };
  auto rec = [&](auto& self) -> Mode {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= 'A' && s[pos] <= 'Z') ++pos;
    auto op = op_from_name(s.substr(start, pos - start));
    if (!op) throw parse_error("unknown mode '" + std::string(s.substr(start, pos - start)) + "'", start);
    skip();
    if (is_basic(*op)) return Mode::basic(*op);
    if (pos >= s.size() || s[pos] != '(') throw parse_error("expected '('", pos);
    ++pos;
    Mode inner = self(self);
    skip();
    if (pos >= s.size() || s[pos] != ')') throw parse_error("expected ')'", pos);
    ++pos;
    return Mode::wrap(*op, std::move(inner));
  };
  Mode m = rec(rec);
  skip();
  if (pos != s.size()) throw parse_error("trailing input", pos);
  return m;
}

}  // namespace effects
