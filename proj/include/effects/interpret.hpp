#pragma once

#include <memory>
#include <string>
#include <vector>

#include "effects/combine.hpp"
#include "effects/lexicon.hpp"
#include "effects/syntax.hpp"

namespace effects {

struct SemNode;
using Sem = std::shared_ptr<const SemNode>;

struct SemNode {
  enum class Kind { Lex, Comb };
  Kind kind = Kind::Lex;
  Ty ty;
  // Lex
  std::string word;
  std::size_t entry = 0;
  // Comb
  Mode mode;
  Sem left, right;
  bool island = false;

  static Sem lex(Ty ty, std::string word, std::size_t entry) {
    auto n = std::make_shared<SemNode>();
    n->kind = Kind::Lex;
    n->ty = std::move(ty);
    n->word = std::move(word);
    n->entry = entry;
    return n;
  }
  static Sem comb(Ty ty, Mode mode, Sem l, Sem r, bool island) {
    auto n = std::make_shared<SemNode>();
    n->kind = Kind::Comb;
    n->ty = std::move(ty);
    n->mode = std::move(mode);
    n->left = std::move(l);
    n->right = std::move(r);
    n->island = island;
    return n;
  }
};

inline const Ty& get_type(const Sem& s) { return s->ty; }

// Island policy: a type is evaluated unless a C effect is still pending.
inline bool evaluated(const Ty& t) {
  switch (t.kind()) {
    case Ty::Kind::Base: return true;
    case Ty::Kind::Arrow: return evaluated(t.cod());
    case Ty::Kind::Comp:
      if (t.eff().kind == EffKind::C) return false;
      return evaluated(t.under());
  }
  return true;
}

struct InterpretOptions {
  std::size_t max_derivations = 10000;
};

struct Interpretation {
  std::vector<Sem> derivations;
  bool truncated = false;
};

namespace detail {

inline std::vector<Sem> synsem_rec(const Lexicon& lex, const Syn& syn, const CombineConfig& cfg,
                                   Engine& eng, const InterpretOptions& opt, bool& truncated) {
  std::vector<Sem> out;
  if (syn.is_leaf()) {
    if (const auto* es = lex.find(syn.word()))
      for (std::size_t i = 0; i < es->size(); ++i)
        out.push_back(SemNode::lex((*es)[i].ty, syn.word(), i));
    return out;
  }
  bool island = syn.kind() == Syn::Kind::Island;
  auto ls = synsem_rec(lex, syn.left(), cfg, eng, opt, truncated);
  if (ls.empty()) return out;
  auto rs = synsem_rec(lex, syn.right(), cfg, eng, opt, truncated);
  for (const auto& l : ls)
    for (const auto& r : rs)
      for (const auto& c : eng.combine(l->ty, r->ty, cfg)) {
        if (island && !evaluated(c.result)) continue;
        if (out.size() >= opt.max_derivations) {
          truncated = true;
          return out;
        }
        out.push_back(SemNode::comb(c.result, c.mode, l, r, island));
      }
  return out;
}

}  // namespace detail

inline Interpretation synsem(const Lexicon& lex, const Syn& syn, const CombineConfig& cfg,
                             Engine& eng, const InterpretOptions& opt = {}) {
  Interpretation res;
  res.derivations = detail::synsem_rec(lex, syn, cfg, eng, opt, res.truncated);
  return res;
}

inline Interpretation synsem(const Lexicon& lex, const Syn& syn, const CombineConfig& cfg = {}) {
  Engine eng;
  return synsem(lex, syn, cfg, eng);
}

// Re-derives every Comb node from its daughters.
inline bool locally_sound(const Sem& s, const CombineConfig& cfg, Engine& eng) {
  if (s->kind == SemNode::Kind::Lex) return true;
  bool found = false;
  for (const auto& c : eng.combine(s->left->ty, s->right->ty, cfg))
    if (c.mode == s->mode && c.result == s->ty) found = true;
  if (s->island && !evaluated(s->ty)) return false;
  return found && locally_sound(s->left, cfg, eng) && locally_sound(s->right, cfg, eng);
}

// Words in the tree with no lexical entry.
inline std::vector<std::string> unknown_words(const Lexicon& lex, const Syn& syn) {
  if (syn.is_leaf()) {
    if (lex.find(syn.word())) return {};
    return {syn.word()};
  }
  auto a = unknown_words(lex, syn.left());
  auto b = unknown_words(lex, syn.right());
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::string print_sem(const Sem& s) {
  if (s->kind == SemNode::Kind::Lex) return s->word + ":" + print_type(s->ty);
  return "(" + print_mode(s->mode) + " " + print_sem(s->left) + " " + print_sem(s->right) + " : " +
         print_type(s->ty) + ")";
}

}  // namespace effects
