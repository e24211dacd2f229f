#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

#include "effects/error.hpp"
#include "effects/model.hpp"
#include "effects/types.hpp"

namespace effects {

struct Ent {
  EntityId id;
};

struct AsgnV {
  std::vector<EntityId> slots;
};

class Value;
struct FuncRep;
struct SetRep;
struct PairRep;
struct MaybeRep;

class Value {
 public:
  using Var = std::variant<Ent, bool, AsgnV, std::shared_ptr<const FuncRep>,
                           std::shared_ptr<const SetRep>, std::shared_ptr<const PairRep>,
                           std::shared_ptr<const MaybeRep>>;
  enum class Kind { Ent, Bool, Asgn, Func, Set, Pair, Maybe };

  Value() : v_(false) {}
  Value(Ent e) : v_(e) {}
  Value(bool b) : v_(b) {}
  Value(AsgnV a) : v_(std::move(a)) {}
  Value(std::shared_ptr<const FuncRep> f) : v_(std::move(f)) {}
  Value(std::shared_ptr<const SetRep> s) : v_(std::move(s)) {}
  Value(std::shared_ptr<const PairRep> p) : v_(std::move(p)) {}
  Value(std::shared_ptr<const MaybeRep> m) : v_(std::move(m)) {}

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  const Var& var() const { return v_; }

  EntityId ent() const { return get<Ent>("entity").id; }
  bool boolean() const { return get<bool>("truth value"); }
  const AsgnV& asgn() const { return get<AsgnV>("assignment"); }
  const FuncRep& func() const { return *get<std::shared_ptr<const FuncRep>>("function"); }
  const SetRep& set() const { return *get<std::shared_ptr<const SetRep>>("set"); }
  const PairRep& pair() const { return *get<std::shared_ptr<const PairRep>>("pair"); }
  const MaybeRep& maybe() const { return *get<std::shared_ptr<const MaybeRep>>("maybe"); }

 private:
  template <class T>
  const T& get(const char* what) const {
    if (auto* p = std::get_if<T>(&v_)) return *p;
    throw type_error(std::string("expected a ") + what);
  }
  Var v_;
};

enum class RepKind { Ent, Bool, Asgn, Fun, Set, Pair, Maybe };

class Domain;
using DomainPtr = std::shared_ptr<const Domain>;

struct FuncRep {
  DomainPtr fun;  // a Fun domain
  std::function<Value(const Value&)> fn;
  std::vector<Value> table;  // used when fn is empty
};

struct SetRep {
  std::vector<Value> members;  // sorted, unique
};

struct PairRep {
  Value first, second;
};

struct MaybeRep {
  std::optional<Value> just;
};

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

namespace detail {
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}
inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == kSaturated) break;
  }
  return r;
}
}  // namespace detail

Value apply(const Value& f, const Value& x);
int compare(const Value& a, const Value& b);

// The finite carrier of a representation type. Immutable apart from a lazily
// filled element cache.
class Domain : public std::enable_shared_from_this<Domain> {
 public:
  Domain(RepKind kind, DomainPtr a, DomainPtr b, std::size_t n_ent, std::size_t asgn_len,
         std::uint64_t cap)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)), n_ent_(n_ent), asgn_len_(asgn_len),
        cap_(cap) {
    switch (kind_) {
      case RepKind::Ent: size_ = n_ent_; key_ = "e"; break;
      case RepKind::Bool: size_ = 2; key_ = "t"; break;
      case RepKind::Asgn: size_ = detail::sat_pow(n_ent_, asgn_len_); key_ = "g"; break;
      case RepKind::Fun:
        size_ = a_->size_ == kSaturated ? kSaturated : detail::sat_pow(b_->size_, a_->size_);
        key_ = "(" + a_->key_ + ">" + b_->key_ + ")";
        break;
      case RepKind::Set:
        size_ = a_->size_ >= 64 ? kSaturated : (std::uint64_t{1} << a_->size_);
        key_ = "{" + a_->key_ + "}";
        break;
      case RepKind::Pair:
        size_ = detail::sat_mul(a_->size_, b_->size_);
        key_ = "<" + a_->key_ + "," + b_->key_ + ">";
        break;
      case RepKind::Maybe:
        size_ = detail::sat_add(a_->size_, 1);
        key_ = "?" + a_->key_;
        break;
    }
  }

  RepKind kind() const { return kind_; }
  const DomainPtr& a() const { return a_; }
  const DomainPtr& b() const { return b_; }
  const std::string& key() const { return key_; }
  std::uint64_t size() const { return size_; }
  bool enumerable() const { return size_ != kSaturated && size_ <= cap_; }

  const std::vector<Value>& elements() const {
    require_enumerable();
    std::call_once(once_, [&] {
      elems_.reserve(size_);
      for (std::uint64_t i = 0; i < size_; ++i) elems_.push_back(at(i));
    });
    return elems_;
  }

  Value at(std::uint64_t i) const {
    switch (kind_) {
      case RepKind::Ent: return Ent{static_cast<EntityId>(i)};
      case RepKind::Bool: return i != 0;
      case RepKind::Asgn: {
        AsgnV g;
        g.slots.resize(asgn_len_);
        for (std::size_t k = asgn_len_; k-- > 0;) {
          g.slots[k] = static_cast<EntityId>(i % n_ent_);
          i /= n_ent_;
        }
        return g;
      }
      case RepKind::Fun: {
        const auto& dom = a_->elements();
        auto rep = std::make_shared<FuncRep>();
        rep->fun = shared_from_this();
        rep->table.resize(dom.size());
        for (std::size_t k = dom.size(); k-- > 0;) {
          rep->table[k] = b_->at(i % b_->size_);
          i /= b_->size_;
        }
        return std::shared_ptr<const FuncRep>(std::move(rep));
      }
      case RepKind::Set: {
        const auto& elems = a_->elements();
        std::vector<Value> ms;
        for (std::size_t k = 0; k < elems.size(); ++k)
          if (i & (std::uint64_t{1} << k)) ms.push_back(elems[k]);
        std::sort(ms.begin(), ms.end(), [](const Value& x, const Value& y) { return compare(x, y) < 0; });
        auto rep = std::make_shared<SetRep>();
        rep->members = std::move(ms);
        return std::shared_ptr<const SetRep>(std::move(rep));
      }
      case RepKind::Pair: {
        auto rep = std::make_shared<PairRep>();
        rep->first = a_->at(i / b_->size_);
        rep->second = b_->at(i % b_->size_);
        return std::shared_ptr<const PairRep>(std::move(rep));
      }
      case RepKind::Maybe: {
        auto rep = std::make_shared<MaybeRep>();
        if (i > 0) rep->just = a_->at(i - 1);
        return std::shared_ptr<const MaybeRep>(std::move(rep));
      }
    }
    throw type_error("bad domain");
  }

  std::uint64_t index_of(const Value& v) const {
    switch (kind_) {
      case RepKind::Ent: return v.ent();
      case RepKind::Bool: return v.boolean() ? 1 : 0;
      case RepKind::Asgn: {
        std::uint64_t i = 0;
        for (auto s : v.asgn().slots) i = i * n_ent_ + s;
        return i;
      }
      case RepKind::Fun: {
        require_enumerable();
        std::uint64_t i = 0;
        for (const auto& x : a_->elements()) i = i * b_->size_ + b_->index_of(apply(v, x));
        return i;
      }
      case RepKind::Set: {
        require_enumerable();
        std::uint64_t i = 0;
        for (const auto& m : v.set().members) i |= std::uint64_t{1} << a_->index_of(m);
        return i;
      }
      case RepKind::Pair:
        return a_->index_of(v.pair().first) * b_->size_ + b_->index_of(v.pair().second);
      case RepKind::Maybe: return v.maybe().just ? 1 + a_->index_of(*v.maybe().just) : 0;
    }
    throw type_error("bad domain");
  }

  void require_enumerable() const {
    if (!enumerable())
      throw domain_too_large("domain " + key_ + " is too large to enumerate (" +
                             (size_ == kSaturated ? std::string("overflow") : std::to_string(size_)) +
                             " > cap " + std::to_string(cap_) + ")");
  }

  // Membership check used by the soundness property.
  bool contains(const Value& v) const {
    switch (kind_) {
      case RepKind::Ent: return v.kind() == Value::Kind::Ent && v.ent() < n_ent_;
      case RepKind::Bool: return v.kind() == Value::Kind::Bool;
      case RepKind::Asgn: {
        if (v.kind() != Value::Kind::Asgn || v.asgn().slots.size() != asgn_len_) return false;
        for (auto s : v.asgn().slots)
          if (s >= n_ent_) return false;
        return true;
      }
      case RepKind::Fun: {
        if (v.kind() != Value::Kind::Func || v.func().fun->key() != key_) return false;
        // Too many arguments to probe: the type tag is all we can check.
        if (!a_->enumerable()) return true;
        for (const auto& x : a_->elements())
          if (!b_->contains(apply(v, x))) return false;
        return true;
      }
      case RepKind::Set: {
        if (v.kind() != Value::Kind::Set) return false;
        const auto& ms = v.set().members;
        for (std::size_t k = 0; k < ms.size(); ++k) {
          if (!a_->contains(ms[k])) return false;
          if (k > 0 && compare(ms[k - 1], ms[k]) >= 0) return false;
        }
        return true;
      }
      case RepKind::Pair:
        return v.kind() == Value::Kind::Pair && a_->contains(v.pair().first) &&
               b_->contains(v.pair().second);
      case RepKind::Maybe:
        return v.kind() == Value::Kind::Maybe && (!v.maybe().just || a_->contains(*v.maybe().just));
    }
    return false;
  }

 private:
  RepKind kind_;
  DomainPtr a_, b_;
  std::size_t n_ent_, asgn_len_;
  std::uint64_t cap_;
  std::uint64_t size_ = 0;
  std::string key_;
  mutable std::once_flag once_;
  mutable std::vector<Value> elems_;
};

inline Value apply(const Value& f, const Value& x) {
  const FuncRep& r = f.func();
  if (r.fn) return r.fn(x);
  return r.table[r.fun->a()->index_of(x)];
}

inline int compare(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Value::Kind::Ent: return a.ent() == b.ent() ? 0 : (a.ent() < b.ent() ? -1 : 1);
    case Value::Kind::Bool: return a.boolean() == b.boolean() ? 0 : (a.boolean() ? 1 : -1);
    case Value::Kind::Asgn: {
      const auto& x = a.asgn().slots;
      const auto& y = b.asgn().slots;
      if (x == y) return 0;
      return x < y ? -1 : 1;
    }
    case Value::Kind::Func: {
      const FuncRep& fa = a.func();
      const FuncRep& fb = b.func();
      if (&fa == &fb) return 0;
      if (fa.fun != fb.fun && fa.fun->key() != fb.fun->key()) return fa.fun->key() < fb.fun->key() ? -1 : 1;
      if (!fa.fn && !fb.fn) {
        for (std::size_t i = 0; i < fa.table.size(); ++i)
          if (int c = compare(fa.table[i], fb.table[i])) return c;
        return 0;
      }
      for (const auto& x : fa.fun->a()->elements())
        if (int c = compare(apply(a, x), apply(b, x))) return c;
      return 0;
    }
    case Value::Kind::Set: {
      const auto& x = a.set().members;
      const auto& y = b.set().members;
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (int c = compare(x[i], y[i])) return c;
      return x.size() == y.size() ? 0 : (x.size() < y.size() ? -1 : 1);
    }
    case Value::Kind::Pair: {
      if (int c = compare(a.pair().first, b.pair().first)) return c;
      return compare(a.pair().second, b.pair().second);
    }
    case Value::Kind::Maybe: {
      const auto& x = a.maybe().just;
      const auto& y = b.maybe().just;
      if (!x || !y) return x.has_value() == y.has_value() ? 0 : (x ? 1 : -1);
      return compare(*x, *y);
    }
  }
  return 0;
}

inline bool values_equal(const Value& a, const Value& b) { return compare(a, b) == 0; }

struct ValueLess {
  bool operator()(const Value& a, const Value& b) const { return compare(a, b) < 0; }
};

inline Value make_set(std::vector<Value> ms) {
  std::sort(ms.begin(), ms.end(), ValueLess{});
  ms.erase(std::unique(ms.begin(), ms.end(), [](const Value& x, const Value& y) { return compare(x, y) == 0; }),
           ms.end());
  auto rep = std::make_shared<SetRep>();
  rep->members = std::move(ms);
  return std::shared_ptr<const SetRep>(std::move(rep));
}

inline Value make_pair(Value a, Value b) {
  auto rep = std::make_shared<PairRep>();
  rep->first = std::move(a);
  rep->second = std::move(b);
  return std::shared_ptr<const PairRep>(std::move(rep));
}

inline Value failure() { return std::shared_ptr<const MaybeRep>(std::make_shared<MaybeRep>()); }

inline Value just(Value v) {
  auto rep = std::make_shared<MaybeRep>();
  rep->just = std::move(v);
  return std::shared_ptr<const MaybeRep>(std::move(rep));
}

// Model-bound factory for domains and function values.
class Evaluator : public std::enable_shared_from_this<Evaluator> {
 public:
  static constexpr std::uint64_t kDefaultCap = 1000000;
  // Domains up to this size get their closures tabulated on construction.
  static constexpr std::uint64_t kTabulateBelow = 64;

  static std::shared_ptr<const Evaluator> make(Model m, std::uint64_t cap = kDefaultCap) {
    return std::shared_ptr<const Evaluator>(new Evaluator(std::move(m), cap));
  }

  const Model& model() const { return model_; }
  std::uint64_t cap() const { return cap_; }

  DomainPtr domain(const Ty& t) const {
    {
      std::lock_guard lk(mu_);
      if (auto it = by_type_.find(t); it != by_type_.end()) return it->second;
    }
    DomainPtr d = build_domain(t);
    std::lock_guard lk(mu_);
    by_type_.emplace(t, d);
    return d;
  }

  DomainPtr rep(RepKind k, DomainPtr a = nullptr, DomainPtr b = nullptr) const {
    // Domains are interned, so their addresses identify them structurally.
    std::tuple<RepKind, const Domain*, const Domain*> id{k, a.get(), b.get()};
    std::lock_guard lk(mu_);
    if (auto it = by_parts_.find(id); it != by_parts_.end()) return it->second;
    auto d = std::make_shared<const Domain>(k, std::move(a), std::move(b), model_.size(),
                                            model_.asgn_len, cap_);
    by_parts_.emplace(id, d);
    return d;
  }

 private:
  DomainPtr build_domain(const Ty& t) const {
    switch (t.kind()) {
      case Ty::Kind::Base:
        switch (t.base_kind()) {
          case Base::E: return rep(RepKind::Ent);
          case Base::T: return rep(RepKind::Bool);
          case Base::G: return rep(RepKind::Asgn);
          case Base::V: throw domain_too_large("type v is not enumerable");
        }
        break;
      case Ty::Kind::Arrow: return rep(RepKind::Fun, domain(t.dom()), domain(t.cod()));
      case Ty::Kind::Comp: {
        const Eff& f = t.eff();
        DomainPtr a = domain(t.under());
        switch (f.kind) {
          case EffKind::S: return rep(RepKind::Set, a);
          case EffKind::M: return rep(RepKind::Maybe, a);
          case EffKind::F: return rep(RepKind::Pair, a, rep(RepKind::Set, a));
          case EffKind::W: return rep(RepKind::Pair, a, domain(*f.param));
          case EffKind::R: return rep(RepKind::Fun, domain(*f.param), a);
          case EffKind::T: {
            DomainPtr s = domain(*f.param);
            return rep(RepKind::Fun, s, rep(RepKind::Pair, a, s));
          }
          case EffKind::D: {
            DomainPtr s = domain(*f.param);
            return rep(RepKind::Fun, s, rep(RepKind::Set, rep(RepKind::Pair, a, s)));
          }
          case EffKind::C: {
            DomainPtr r = domain(*f.param);
            return rep(RepKind::Fun, rep(RepKind::Fun, a, r), r);
          }
        }
      }
    }
    throw type_error("unsupported type " + print_type(t));
  }

 public:
  // A function value over the domain of `dom` into `cod`.
  Value fun(const Ty& dom, const Ty& cod, std::function<Value(const Value&)> fn) const {
    return fun(rep(RepKind::Fun, domain(dom), domain(cod)), std::move(fn));
  }

  // A function value of arrow type `arrow`.
  Value fun(const Ty& arrow, std::function<Value(const Value&)> fn) const {
    if (!arrow.is_arrow()) throw type_error("expected a function type, got " + print_type(arrow));
    return fun(arrow.dom(), arrow.cod(), std::move(fn));
  }

  Value fun(DomainPtr fun_dom, std::function<Value(const Value&)> fn) const {
    auto rep = std::make_shared<FuncRep>();
    rep->fun = std::move(fun_dom);
    const auto& a = rep->fun->a();
    if (a->size() <= kTabulateBelow && a->enumerable() && rep->fun->b()->size() != 0) {
      for (const auto& x : a->elements()) rep->table.push_back(fn(x));
    } else {
      rep->fn = std::move(fn);
    }
    return std::shared_ptr<const FuncRep>(std::move(rep));
  }

  Value entity(EntityId id) const { return Ent{id}; }

 private:
  Evaluator(Model m, std::uint64_t cap) : model_(std::move(m)), cap_(cap) {
    if (model_.entities.empty()) throw validation_error("model has no entities");
    if (model_.asgn_len < 1) throw validation_error("asgn_len must be >= 1");
  }

  Model model_;
  std::uint64_t cap_;
  struct PartsHash {
    std::size_t operator()(const std::tuple<RepKind, const Domain*, const Domain*>& p) const {
      auto h = std::hash<const void*>{};
      return h(std::get<1>(p)) * 31 + h(std::get<2>(p)) * 7 + static_cast<std::size_t>(std::get<0>(p));
    }
  };
  mutable std::mutex mu_;
  mutable std::unordered_map<Ty, DomainPtr> by_type_;
  mutable std::unordered_map<std::tuple<RepKind, const Domain*, const Domain*>, DomainPtr, PartsHash> by_parts_;
};

using EvalPtr = std::shared_ptr<const Evaluator>;

inline bool inhabits(const Evaluator& ev, const Value& v, const Ty& t) {
  return ev.domain(t)->contains(v);
}

// Human-readable rendering; functions over small domains are shown as tables.
inline std::string render(const Value& v, const Model& m, std::size_t max_table = 16) {
  switch (v.kind()) {
    case Value::Kind::Ent: return v.ent() < m.entities.size() ? m.entities[v.ent()] : "?";
    case Value::Kind::Bool: return v.boolean() ? "true" : "false";
    case Value::Kind::Asgn: {
      std::string s = "(";
      for (std::size_t i = 0; i < v.asgn().slots.size(); ++i)
        s += (i ? "," : "") + m.entities[v.asgn().slots[i]];
      return s + ")";
    }
    case Value::Kind::Func: {
      const auto& dom = v.func().fun->a();
      if (!dom->enumerable() || dom->size() > max_table)
        return "<function on " + std::to_string(dom->size()) + " arguments>";
      std::string s = "[";
      bool first = true;
      for (const auto& x : dom->elements()) {
        s += (first ? "" : ", ") + render(x, m, max_table) + " -> " + render(apply(v, x), m, max_table);
        first = false;
      }
      return s + "]";
    }
    case Value::Kind::Set: {
      std::string s = "{";
      bool first = true;
      for (const auto& x : v.set().members) {
        s += (first ? "" : ", ") + render(x, m, max_table);
        first = false;
      }
      return s + "}";
    }
    case Value::Kind::Pair:
      return "<" + render(v.pair().first, m, max_table) + ", " + render(v.pair().second, m, max_table) + ">";
    case Value::Kind::Maybe:
      return v.maybe().just ? "Just " + render(*v.maybe().just, m, max_table) : "#";
  }
  return "?";
}

}  // namespace effects
