#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "effects/mode.hpp"
#include "effects/types.hpp"

namespace effects {

struct CombineConfig {
  bool FA = true;
  bool BA = true;
  bool PM = true;
  bool FC = false;
  bool RR = false;
  bool MAP = true;
  bool AP = true;
  bool UNIT = true;
  bool JN = true;
  bool CU = true;
  bool EJECT = true;
  bool DN = true;
  std::size_t max_result_type_size = 24;
  bool memoize = true;
  // Feed unary results back through the unary phase (JN then DN, etc.).
  bool chain_unary = false;

  static constexpr std::string_view kFlagNames[] = {
      "FA", "BA", "PM", "FC", "RR", "MAP", "AP", "UNIT", "JN", "CU", "EJECT", "DN", "CHAIN_UNARY"};

  bool* flag(std::string_view name) {
    if (name == "FA") return &FA;
    if (name == "BA") return &BA;
    if (name == "PM") return &PM;
    if (name == "FC") return &FC;
    if (name == "RR") return &RR;
    if (name == "MAP") return &MAP;
    if (name == "AP") return &AP;
    if (name == "UNIT") return &UNIT;
    if (name == "JN") return &JN;
    if (name == "CU") return &CU;
    if (name == "EJECT") return &EJECT;
    if (name == "DN") return &DN;
    if (name == "CHAIN_UNARY") return &chain_unary;
    return nullptr;
  }
  const bool* flag(std::string_view name) const {
    return const_cast<CombineConfig*>(this)->flag(name);
  }

  void set(std::string_view name, bool on) {
    bool* f = flag(name);
    if (!f) throw validation_error("unknown rule flag '" + std::string(name) + "'");
    *f = on;
  }

  std::uint32_t bits() const {
    std::uint32_t b = 0;
    int i = 0;
    for (auto n : kFlagNames) b |= (*flag(n) ? 1u : 0u) << i++;
    return b;
  }

  static CombineConfig none() {
    CombineConfig c;
    for (auto n : kFlagNames) c.set(n, false);
    return c;
  }

  // "default", "ch2", "ch3", "ch4", "full".
  static CombineConfig preset(std::string_view name) {
    if (name == "default") return CombineConfig{};
    CombineConfig c = none();
    c.FA = c.BA = c.PM = true;
    c.MAP = true;
    if (name == "ch2") return c;
    c.AP = c.UNIT = true;
    if (name == "ch3") return c;
    c.JN = true;
    if (name == "ch4") return c;
    c.CU = c.EJECT = c.DN = true;
    if (name == "full") return c;
    throw validation_error("unknown preset '" + std::string(name) + "'");
  }

  friend bool operator==(const CombineConfig& a, const CombineConfig& b) {
    return a.bits() == b.bits() && a.max_result_type_size == b.max_result_type_size &&
           a.memoize == b.memoize;
  }
};

struct CombineResult {
  Mode mode;
  Ty result;
  friend bool operator==(const CombineResult& a, const CombineResult& b) {
    return a.mode == b.mode && a.result == b.result;
  }
};

using Results = std::vector<CombineResult>;

// Type of the result of `mode` on daughters of type l and r, if licensed.
inline std::optional<Ty> mode_type(const Mode& m, const Ty& l, const Ty& r) {
  switch (m.op()) {
    case ModeOp::FA:
      if (l.is_arrow() && l.dom() == r) return l.cod();
      return std::nullopt;
    case ModeOp::BA:
      if (r.is_arrow() && r.dom() == l) return r.cod();
      return std::nullopt;
    case ModeOp::PM:
      if (l.is_arrow() && r.is_arrow() && l.cod().is_base(Base::T) && l == r) return l;
      return std::nullopt;
    case ModeOp::FC:
      if (l.is_arrow() && r.is_arrow() && r.cod() == l.dom()) return ty::fn(r.dom(), l.cod());
      return std::nullopt;
    case ModeOp::RR:
      if (l.is_arrow() && l.cod().is_arrow() && l.cod().cod().is_base(Base::T) &&
          r == l.cod())
        return l;
      return std::nullopt;
    case ModeOp::MR:
      if (!r.is_comp()) return std::nullopt;
      if (auto u = mode_type(m.inner(), l, r.under())) return Ty::comp(r.eff(), *u);
      return std::nullopt;
    case ModeOp::ML:
      if (!l.is_comp()) return std::nullopt;
      if (auto u = mode_type(m.inner(), l.under(), r)) return Ty::comp(l.eff(), *u);
      return std::nullopt;
    case ModeOp::AP:
      if (!l.is_comp() || !r.is_comp() || !(l.eff() == r.eff()) || !is_applicative(l.eff()))
        return std::nullopt;
      if (auto u = mode_type(m.inner(), l.under(), r.under())) return Ty::comp(l.eff(), *u);
      return std::nullopt;
    case ModeOp::UR:
      if (!l.is_arrow() || !l.dom().is_comp() || !is_applicative(l.dom().eff()))
        return std::nullopt;
      return mode_type(m.inner(), ty::fn(l.dom().under(), l.cod()), r);
    case ModeOp::UL:
      if (!r.is_arrow() || !r.dom().is_comp() || !is_applicative(r.dom().eff()))
        return std::nullopt;
      return mode_type(m.inner(), l, ty::fn(r.dom().under(), r.cod()));
    case ModeOp::JN: {
      auto u = mode_type(m.inner(), l, r);
      if (u && u->is_comp() && u->under().is_comp() && u->eff() == u->under().eff() &&
          is_monad(u->eff()))
        return Ty::comp(u->eff(), u->under().under());
      return std::nullopt;
    }
    case ModeOp::CU:
      if (!l.is_comp() || !r.is_comp() || !adjoint(l.eff(), r.eff())) return std::nullopt;
      return mode_type(m.inner(), l.under(), r.under());
    case ModeOp::ER:
      if (!r.is_arrow() || !r.cod().is_comp() || left_adjoints(r.cod().eff()).empty())
        return std::nullopt;
      return mode_type(m.inner(), l,
                       Ty::comp(r.cod().eff(), ty::fn(r.dom(), r.cod().under())));
    case ModeOp::EL:
      if (!l.is_arrow() || !l.cod().is_comp() || left_adjoints(l.cod().eff()).empty())
        return std::nullopt;
      return mode_type(m.inner(), Ty::comp(l.cod().eff(), ty::fn(l.dom(), l.cod().under())),
                       r);
    case ModeOp::DN: {
      auto u = mode_type(m.inner(), l, r);
      if (u && u->is_comp() && u->eff().kind == EffKind::C && *u->eff().param == u->under())
        return u->under();
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// The recursive rule system. Thread-safe; the memo table is shared across
// queries and only ever holds results computed without a cycle-guard hit.
class Engine {
 public:
  Results combine(const Ty& l, const Ty& r, const CombineConfig& cfg = {}) {
    Query q{cfg, {}};
    return run(q, l, r);
  }

  std::uint64_t cycle_hits() const { return cycle_hits_.load(); }
  std::uint64_t memo_hits() const { return memo_hits_.load(); }
  std::size_t memo_size() const {
    std::shared_lock lk(mu_);
    return memo_.size();
  }
  void clear() {
    std::unique_lock lk(mu_);
    memo_.clear();
  }

  // Individual rule families, in Appendix B order.
  static Results basic_modes(const Ty& l, const Ty& r, const CombineConfig& cfg) {
    Results out;
    auto emit = [&](bool on, ModeOp op) {
      if (!on) return;
      Mode m = Mode::basic(op);
      if (auto u = mode_type(m, l, r)) out.push_back({m, *u});
    };
    emit(cfg.FA, ModeOp::FA);
    emit(cfg.BA, ModeOp::BA);
    emit(cfg.PM, ModeOp::PM);
    emit(cfg.FC, ModeOp::FC);
    emit(cfg.RR, ModeOp::RR);
    return out;
  }

  Results map_rules(const Ty& l, const Ty& r, const CombineConfig& cfg) {
    Query q{cfg, {}};
    Results out;
    add_mr(q, l, r, out);
    add_ml(q, l, r, out);
    return out;
  }
  Results applicative_rules(const Ty& l, const Ty& r, const CombineConfig& cfg) {
    Query q{cfg, {}};
    Results out;
    add_ap(q, l, r, out);
    return out;
  }
  Results unit_rules(const Ty& l, const Ty& r, const CombineConfig& cfg) {
    Query q{cfg, {}};
    Results out;
    add_ur(q, l, r, out);
    add_ul(q, l, r, out);
    return out;
  }
  Results adjunction_rules(const Ty& l, const Ty& r, const CombineConfig& cfg) {
    Query q{cfg, {}};
    Results out;
    add_cu(q, l, r, out);
    return out;
  }
  Results eject_rules(const Ty& l, const Ty& r, const CombineConfig& cfg) {
    Query q{cfg, {}};
    Results out;
    add_er(q, l, r, out);
    add_el(q, l, r, out);
    return out;
  }

  static Results join_rule(const CombineResult& res, const CombineConfig& cfg) {
    if (!cfg.JN) return {};
    const Ty& u = res.result;
    if (u.is_comp() && u.under().is_comp() && u.eff() == u.under().eff() && is_monad(u.eff()))
      return {{Mode::wrap(ModeOp::JN, res.mode), Ty::comp(u.eff(), u.under().under())}};
    return {};
  }

  static Results lower_rule(const CombineResult& res, const CombineConfig& cfg) {
    if (!cfg.DN) return {};
    const Ty& u = res.result;
    if (u.is_comp() && u.eff().kind == EffKind::C && *u.eff().param == u.under())
      return {{Mode::wrap(ModeOp::DN, res.mode), u.under()}};
    return {};
  }

 private:
  struct Key {
    Ty l, r;
    std::uint32_t bits;
    std::size_t cap;
    friend bool operator==(const Key& a, const Key& b) {
      return a.bits == b.bits && a.cap == b.cap && a.l == b.l && a.r == b.r;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return detail::mix(detail::mix(detail::mix(k.l.hash(), k.r.hash()), k.bits), k.cap);
    }
  };
  struct Query {
    const CombineConfig& cfg;
    std::vector<std::pair<Ty, Ty>> stack;
    std::uint64_t guard_hits = 0;
  };

  mutable std::shared_mutex mu_;
  std::unordered_map<Key, Results, KeyHash> memo_;
  std::atomic<std::uint64_t> cycle_hits_{0};
  std::atomic<std::uint64_t> memo_hits_{0};

  Results run(Query& q, const Ty& l, const Ty& r) {
    for (const auto& [sl, sr] : q.stack) {
      if (sl == l && sr == r) {
        ++q.guard_hits;
        ++cycle_hits_;
        return {};
      }
    }
    Key key{l, r, q.cfg.bits(), q.cfg.max_result_type_size};
    if (q.cfg.memoize) {
      std::shared_lock lk(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++memo_hits_;
        return it->second;
      }
    }
    std::uint64_t hits_before = q.guard_hits;
    q.stack.emplace_back(l, r);
    Results binary = basic_modes(l, r, q.cfg);
    add_mr(q, l, r, binary);
    add_ml(q, l, r, binary);
    add_ap(q, l, r, binary);
    add_ur(q, l, r, binary);
    add_ul(q, l, r, binary);
    add_cu(q, l, r, binary);
    add_er(q, l, r, binary);
    add_el(q, l, r, binary);
    q.stack.pop_back();

    Results out;
    for (const auto& b : binary) unary(q.cfg, b, out);
    std::erase_if(out, [&](const CombineResult& c) {
      return type_size(c.result) > q.cfg.max_result_type_size;
    });

    if (q.cfg.memoize && q.guard_hits == hits_before) {
      std::unique_lock lk(mu_);
      memo_.try_emplace(key, out);
    }
    return out;
  }

  static void unary(const CombineConfig& cfg, const CombineResult& res, Results& out) {
    out.push_back(res);
    if (cfg.chain_unary) {
      if (type_size(res.result) > cfg.max_result_type_size) return;
      for (const auto& j : join_rule(res, cfg)) unary(cfg, j, out);
      for (const auto& d : lower_rule(res, cfg)) unary(cfg, d, out);
      return;
    }
    for (auto& j : join_rule(res, cfg)) out.push_back(std::move(j));
    for (auto& d : lower_rule(res, cfg)) out.push_back(std::move(d));
  }

  static void wrap_into(ModeOp op, const Results& inner, const std::optional<Eff>& f,
                        Results& out) {
    for (const auto& c : inner)
      out.push_back({Mode::wrap(op, c.mode), f ? Ty::comp(*f, c.result) : c.result});
  }

  void add_mr(Query& q, const Ty& l, const Ty& r, Results& out) {
    if (!q.cfg.MAP || !r.is_comp() || !is_functor(r.eff())) return;
    wrap_into(ModeOp::MR, run(q, l, r.under()), r.eff(), out);
  }
  void add_ml(Query& q, const Ty& l, const Ty& r, Results& out) {
    if (!q.cfg.MAP || !l.is_comp() || !is_functor(l.eff())) return;
    wrap_into(ModeOp::ML, run(q, l.under(), r), l.eff(), out);
  }
  void add_ap(Query& q, const Ty& l, const Ty& r, Results& out) {
    if (!q.cfg.AP || !l.is_comp() || !r.is_comp() || !(l.eff() == r.eff()) ||
        !is_applicative(l.eff()))
      return;
    wrap_into(ModeOp::AP, run(q, l.under(), r.under()), l.eff(), out);
  }
  void add_ur(Query& q, const Ty& l, const Ty& r, Results& out) {
    if (!q.cfg.UNIT || !l.is_arrow() || !l.dom().is_comp() || !is_applicative(l.dom().eff()))
      return;
    wrap_into(ModeOp::UR, run(q, ty::fn(l.dom().under(), l.cod()), r), std::nullopt, out);
  }
  void add_ul(Query& q, const Ty& l, const Ty& r, Results& out) {
    if (!q.cfg.UNIT || !r.is_arrow() || !r.dom().is_comp() || !is_applicative(r.dom().eff()))
      return;
    wrap_into(ModeOp::UL, run(q, l, ty::fn(r.dom().under(), r.cod())), std::nullopt, out);
  }
  void add_cu(Query& q, const Ty& l, const Ty& r, Results& out) {
    if (!q.cfg.CU || !l.is_comp() || !r.is_comp() || !adjoint(l.eff(), r.eff())) return;
    wrap_into(ModeOp::CU, run(q, l.under(), r.under()), std::nullopt, out);
  }
  void add_er(Query& q, const Ty& l, const Ty& r, Results& out) {
    if (!q.cfg.EJECT || !r.is_arrow() || !r.cod().is_comp() ||
        left_adjoints(r.cod().eff()).empty())
      return;
    Ty r2 = Ty::comp(r.cod().eff(), ty::fn(r.dom(), r.cod().under()));
    wrap_into(ModeOp::ER, run(q, l, r2), std::nullopt, out);
  }
  void add_el(Query& q, const Ty& l, const Ty& r, Results& out) {
    if (!q.cfg.EJECT || !l.is_arrow() || !l.cod().is_comp() ||
        left_adjoints(l.cod().eff()).empty())
      return;
    Ty l2 = Ty::comp(l.cod().eff(), ty::fn(l.dom(), l.cod().under()));
    wrap_into(ModeOp::EL, run(q, l2, r), std::nullopt, out);
  }
};

// One-shot query with a private memo table.
inline Results combine(const Ty& l, const Ty& r, const CombineConfig& cfg = {}) {
  Engine e;
  return e.combine(l, r, cfg);
}

}  // namespace effects
