#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "effects/error.hpp"

namespace effects {

enum class Base { E, T, V, G };
enum class EffKind { S, F, M, R, W, C, T, D };

struct TyNode;
struct Eff;

// Immutable, structurally compared type term.
class Ty {
 public:
  enum class Kind { Base, Arrow, Comp };

  Ty() = default;

  static Ty base(Base b);
  static Ty arrow(Ty dom, Ty cod);
  static Ty comp(const Eff& f, Ty under);

  Kind kind() const;
  bool is_base() const { return kind() == Kind::Base; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_comp() const { return kind() == Kind::Comp; }
  bool is_base(Base b) const;

  Base base_kind() const;
  const Ty& dom() const;
  const Ty& cod() const;
  const Eff& eff() const;
  const Ty& under() const;

  std::size_t hash() const;
  bool valid() const { return static_cast<bool>(n_); }

  friend bool operator==(const Ty& a, const Ty& b);
  friend std::strong_ordering operator<=>(const Ty& a, const Ty& b);

 private:
  explicit Ty(std::shared_ptr<const TyNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const TyNode> n_;
};

struct Eff {
  EffKind kind = EffKind::S;
  std::optional<Ty> param;

  static bool parameterized(EffKind k) {
    return k == EffKind::R || k == EffKind::W || k == EffKind::C || k == EffKind::T ||
           k == EffKind::D;
  }
  friend bool operator==(const Eff& a, const Eff& b) {
    return a.kind == b.kind && a.param == b.param;
  }
  friend std::strong_ordering operator<=>(const Eff& a, const Eff& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (a.param.has_value() != b.param.has_value())
      return a.param.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
    if (!a.param) return std::strong_ordering::equal;
    return *a.param <=> *b.param;
  }
};

struct TyNode {
  Ty::Kind kind = Ty::Kind::Base;
  Base b = Base::E;
  Ty left;   // dom, or under for Comp
  Ty right;  // cod
  Eff eff;
  std::size_t hash = 0;
};

namespace detail {
inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace detail

inline Ty Ty::base(Base b) {
  auto n = std::make_shared<TyNode>();
  n->kind = Kind::Base;
  n->b = b;
  n->hash = detail::mix(1, static_cast<std::size_t>(b));
  return Ty(std::move(n));
}

inline Ty Ty::arrow(Ty dom, Ty cod) {
  auto n = std::make_shared<TyNode>();
  n->kind = Kind::Arrow;
  n->hash = detail::mix(detail::mix(2, dom.hash()), cod.hash());
  n->left = std::move(dom);
  n->right = std::move(cod);
  return Ty(std::move(n));
}

inline Ty Ty::comp(const Eff& f, Ty under) {
  if (Eff::parameterized(f.kind) != f.param.has_value())
    throw type_error("effect parameter mismatch");
  auto n = std::make_shared<TyNode>();
  n->kind = Kind::Comp;
  std::size_t h = detail::mix(3, static_cast<std::size_t>(f.kind));
  if (f.param) h = detail::mix(h, f.param->hash());
  n->hash = detail::mix(h, under.hash());
  n->eff = f;
  n->left = std::move(under);
  return Ty(std::move(n));
}

inline Ty::Kind Ty::kind() const { return n_->kind; }
inline bool Ty::is_base(Base b) const { return n_->kind == Kind::Base && n_->b == b; }
inline Base Ty::base_kind() const { return n_->b; }
inline const Ty& Ty::dom() const { return n_->left; }
inline const Ty& Ty::cod() const { return n_->right; }
inline const Eff& Ty::eff() const { return n_->eff; }
inline const Ty& Ty::under() const { return n_->left; }
inline std::size_t Ty::hash() const { return n_ ? n_->hash : 0; }

inline bool operator==(const Ty& a, const Ty& b) {
  if (a.n_ == b.n_) return true;
  if (!a.n_ || !b.n_) return false;
  if (a.n_->hash != b.n_->hash || a.n_->kind != b.n_->kind) return false;
  switch (a.n_->kind) {
    case Ty::Kind::Base: return a.n_->b == b.n_->b;
    case Ty::Kind::Arrow: return a.n_->left == b.n_->left && a.n_->right == b.n_->right;
    case Ty::Kind::Comp: return a.n_->eff == b.n_->eff && a.n_->left == b.n_->left;
  }
  return false;
}

inline std::strong_ordering operator<=>(const Ty& a, const Ty& b) {
  if (a.n_ == b.n_) return std::strong_ordering::equal;
  if (!a.n_) return std::strong_ordering::less;
  if (!b.n_) return std::strong_ordering::greater;
  if (auto c = a.n_->kind <=> b.n_->kind; c != 0) return c;
  switch (a.n_->kind) {
    case Ty::Kind::Base: return a.n_->b <=> b.n_->b;
    case Ty::Kind::Arrow:
      if (auto c = a.n_->left <=> b.n_->left; c != 0) return c;
      return a.n_->right <=> b.n_->right;
    case Ty::Kind::Comp:
      if (auto c = a.n_->eff <=> b.n_->eff; c != 0) return c;
      return a.n_->left <=> b.n_->left;
  }
  return std::strong_ordering::equal;
}

struct TyHash {
  std::size_t operator()(const Ty& t) const { return t.hash(); }
};

// Constructors.
namespace ty {
inline Ty e() { return Ty::base(Base::E); }
inline Ty t() { return Ty::base(Base::T); }
inline Ty v() { return Ty::base(Base::V); }
inline Ty g() { return Ty::base(Base::G); }
inline Ty fn(Ty a, Ty b) { return Ty::arrow(std::move(a), std::move(b)); }
inline Eff eff(EffKind k) { return Eff{k, std::nullopt}; }
inline Eff eff(EffKind k, Ty p) { return Eff{k, std::move(p)}; }
inline Ty S(Ty a) { return Ty::comp(eff(EffKind::S), std::move(a)); }
inline Ty F(Ty a) { return Ty::comp(eff(EffKind::F), std::move(a)); }
inline Ty M(Ty a) { return Ty::comp(eff(EffKind::M), std::move(a)); }
inline Ty R(Ty i, Ty a) { return Ty::comp(eff(EffKind::R, std::move(i)), std::move(a)); }
inline Ty W(Ty o, Ty a) { return Ty::comp(eff(EffKind::W, std::move(o)), std::move(a)); }
inline Ty C(Ty r, Ty a) { return Ty::comp(eff(EffKind::C, std::move(r)), std::move(a)); }
inline Ty T(Ty s, Ty a) { return Ty::comp(eff(EffKind::T, std::move(s)), std::move(a)); }
inline Ty D(Ty s, Ty a) { return Ty::comp(eff(EffKind::D, std::move(s)), std::move(a)); }
}  // namespace ty

// Typeclass membership.

inline bool is_monoid(const Ty& t) { return t.is_base(Base::T); }

inline bool is_functor(const Eff&) { return true; }

inline bool is_applicative(const Eff& f) {
  if (f.kind == EffKind::W) return is_monoid(*f.param);
  return true;
}

inline bool is_monad(const Eff& f) { return is_applicative(f); }

inline std::vector<Eff> left_adjoints(const Eff& f) {
  if (f.kind == EffKind::R) return {ty::eff(EffKind::W, *f.param)};
  return {};
}

inline bool adjoint(const Eff& left, const Eff& right) {
  for (const auto& l : left_adjoints(right))
    if (l == left) return true;
  return false;
}

inline std::size_t type_size(const Ty& t) {
  switch (t.kind()) {
    case Ty::Kind::Base: return 1;
    case Ty::Kind::Arrow: return 1 + type_size(t.dom()) + type_size(t.cod());
    case Ty::Kind::Comp:
      return 1 + (t.eff().param ? type_size(*t.eff().param) : 0) + type_size(t.under());
  }
  return 0;
}

// Printing.

inline char effect_letter(EffKind k) {
  static constexpr char names[] = {'S', 'F', 'M', 'R', 'W', 'C', 'T', 'D'};
  return names[static_cast<int>(k)];
}

inline char base_letter(Base b) {
  static constexpr char names[] = {'e', 't', 'v', 'g'};
  return names[static_cast<int>(b)];
}

inline std::string print_type(const Ty& t);

inline std::string print_eff(const Eff& f) {
  std::string s(1, effect_letter(f.kind));
  if (f.param) s += "[" + print_type(*f.param) + "]";
  return s;
}

namespace detail {
inline void print_app(const Ty& t, std::string& out);

inline void print_ty(const Ty& t, std::string& out) {
  if (t.is_arrow()) {
    print_app(t.dom(), out);
    out += " -> ";
    print_ty(t.cod(), out);
  } else {
    print_app(t, out);
  }
}

inline void print_app(const Ty& t, std::string& out) {
  switch (t.kind()) {
    case Ty::Kind::Base: out += base_letter(t.base_kind()); break;
    case Ty::Kind::Arrow:
      out += '(';
      print_ty(t, out);
      out += ')';
      break;
    case Ty::Kind::Comp:
      out += print_eff(t.eff());
      out += ' ';
      print_app(t.under(), out);
      break;
  }
}
}  // namespace detail

inline std::string print_type(const Ty& t) {
  std::string out;
  detail::print_ty(t, out);
  return out;
}

// Parsing.

namespace detail {
class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  Ty parse_all() {
    Ty t = parse_ty();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n'))
      ++pos_;
  }

  int peek() {
    skip();
    return pos_ < s_.size() ? static_cast<unsigned char>(s_[pos_]) : -1;
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  static std::optional<EffKind> eff_of(int c) {
    switch (c) {
      case 'S': return EffKind::S;
      case 'F': return EffKind::F;
      case 'M': return EffKind::M;
      case 'R': return EffKind::R;
      case 'W': return EffKind::W;
      case 'C': return EffKind::C;
      case 'T': return EffKind::T;
      case 'D': return EffKind::D;
      default: return std::nullopt;
    }
  }

  Ty parse_ty() {
    Ty a = parse_app();
    if (peek() == '-') {
      if (pos_ + 1 >= s_.size() || s_[pos_ + 1] != '>') fail("expected '->'");
      pos_ += 2;
      return Ty::arrow(a, parse_ty());
    }
    return a;
  }

  Ty parse_app() {
    int c = peek();
    if (auto k = eff_of(c)) {
      ++pos_;
      Eff f{*k, std::nullopt};
      if (Eff::parameterized(*k)) {
        expect('[');
        f.param = parse_ty();
        expect(']');
      } else if (peek() == '[') {
        fail(std::string("effect ") + effect_letter(*k) + " takes no parameter");
      }
      return Ty::comp(f, parse_app());
    }
    return parse_atom();
  }

  Ty parse_atom() {
    int c = peek();
    switch (c) {
      case 'e': ++pos_; return ty::e();
      case 't': ++pos_; return ty::t();
      case 'v': ++pos_; return ty::v();
      case 'g': ++pos_; return ty::g();
      case '(': {
        ++pos_;
        Ty t = parse_ty();
        expect(')');
        return t;
      }
      case -1: fail("unexpected end of input");
      default: fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
    }
  }
};
}  // namespace detail

inline Ty parse_type(std::string_view s) { return detail::TypeParser(s).parse_all(); }

inline std::optional<EffKind> parse_effect_kind(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  switch (s[0]) {
    case 'S': return EffKind::S;
    case 'F': return EffKind::F;
    case 'M': return EffKind::M;
    case 'R': return EffKind::R;
    case 'W': return EffKind::W;
    case 'C': return EffKind::C;
    case 'T': return EffKind::T;
    case 'D': return EffKind::D;
    default: return std::nullopt;
  }
}

// Parses "S", "R[e]", etc.
inline Eff parse_eff(std::string_view s) {
  Ty probe = parse_type(std::string(s) + " t");
  if (!probe.is_comp() || !(probe.under() == ty::t())) throw parse_error("not an effect", 0);
  return probe.eff();
}

}  // namespace effects

template <>
struct std::hash<effects::Ty> {
  std::size_t operator()(const effects::Ty& t) const noexcept { return t.hash(); }
};
