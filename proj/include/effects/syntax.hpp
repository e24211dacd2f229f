#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "effects/error.hpp"

namespace effects {

class Syn {
 public:
  enum class Kind { Leaf, Branch, Island };

  static Syn leaf(std::string word) { return Syn(Kind::Leaf, std::move(word), nullptr, nullptr); }
  static Syn branch(Syn l, Syn r) { return node(Kind::Branch, std::move(l), std::move(r)); }
  static Syn island(Syn l, Syn r) { return node(Kind::Island, std::move(l), std::move(r)); }

  Kind kind() const { return kind_; }
  bool is_leaf() const { return kind_ == Kind::Leaf; }
  const std::string& word() const { return word_; }
  const Syn& left() const { return *left_; }
  const Syn& right() const { return *right_; }

  std::size_t leaves() const { return is_leaf() ? 1 : left_->leaves() + right_->leaves(); }

  friend bool operator==(const Syn& a, const Syn& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.is_leaf()) return a.word_ == b.word_;
    return *a.left_ == *b.left_ && *a.right_ == *b.right_;
  }

 private:
  Syn(Kind k, std::string w, std::shared_ptr<const Syn> l, std::shared_ptr<const Syn> r)
      : kind_(k), word_(std::move(w)), left_(std::move(l)), right_(std::move(r)) {}
  static Syn node(Kind k, Syn l, Syn r) {
    return Syn(k, {}, std::make_shared<const Syn>(std::move(l)),
               std::make_shared<const Syn>(std::move(r)));
  }

  Kind kind_;
  std::string word_;
  std::shared_ptr<const Syn> left_, right_;
};

inline std::string print_tree(const Syn& s) {
  switch (s.kind()) {
    case Syn::Kind::Leaf: return s.word();
    case Syn::Kind::Branch: return "[" + print_tree(s.left()) + " " + print_tree(s.right()) + "]";
    case Syn::Kind::Island: return "{" + print_tree(s.left()) + " " + print_tree(s.right()) + "}";
  }
  return {};
}

namespace detail {

inline bool is_token_char(char c) {
  return c != '[' && c != ']' && c != '{' && c != '}' && c != ' ' && c != '\t' && c != '\n' &&
         c != '\r';
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view s) : s_(s) {}

  Syn parse_all() {
    skip();
    if (pos_ >= s_.size()) throw parse_error("empty tree", pos_);
    Syn t = parse();
    skip();
    if (pos_ != s_.size()) throw parse_error("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && !is_token_char(s_[pos_]) && s_[pos_] != '[' && s_[pos_] != ']' &&
           s_[pos_] != '{' && s_[pos_] != '}')
      ++pos_;
  }

  Syn parse() {
    skip();
    if (pos_ >= s_.size()) throw parse_error("unbalanced brackets: input ended", pos_);
    char c = s_[pos_];
    if (c == '[' || c == '{') {
      char close = c == '[' ? ']' : '}';
      std::size_t open = pos_++;
      skip();
      if (pos_ < s_.size() && s_[pos_] == close) throw parse_error("empty group", open);
      Syn l = parse();
      skip();
      if (pos_ < s_.size() && s_[pos_] == close)
        throw parse_error("group must have exactly two daughters", open);
      Syn r = parse();
      skip();
      if (pos_ >= s_.size()) throw parse_error("unbalanced brackets: missing '" + std::string(1, close) + "'", pos_);
      if (s_[pos_] != close) {
        if (s_[pos_] == ']' || s_[pos_] == '}')
          throw parse_error("mismatched bracket", pos_);
        throw parse_error("group must have exactly two daughters", open);
      }
      ++pos_;
      return c == '[' ? Syn::branch(std::move(l), std::move(r))
                      : Syn::island(std::move(l), std::move(r));
    }
    if (c == ']' || c == '}') throw parse_error("unbalanced brackets", pos_);
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_token_char(s_[pos_])) ++pos_;
    return Syn::leaf(std::string(s_.substr(start, pos_ - start)));
  }
};

}  // namespace detail

inline Syn parse_tree(std::string_view text) { return detail::TreeParser(text).parse_all(); }

inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
    std::size_t start = i;
    while (i < text.size() && detail::is_token_char(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
    else if (i < text.size()) throw parse_error("brackets not allowed in a token list", i);
  }
  return out;
}

// All binary bracketings, leftmost split first.
inline std::vector<Syn> enumerate_trees(const std::vector<std::string>& tokens,
                                        std::size_t max_len = 8) {
  if (tokens.empty()) throw validation_error("empty token list");
  if (tokens.size() > max_len)
    throw validation_error("token list too long (" + std::to_string(tokens.size()) + " > " +
                           std::to_string(max_len) + ")");
  auto rec = [&](auto& self, std::size_t i, std::size_t j) -> std::vector<Syn> {
    if (j - i == 1) return {Syn::leaf(tokens[i])};
    std::vector<Syn> out;
    for (std::size_t k = i + 1; k < j; ++k) {
      auto ls = self(self, i, k);
      auto rs = self(self, k, j);
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(Syn::branch(l, r));
    }
    return out;
  };
  return rec(rec, 0, tokens.size());
}

}  // namespace effects
