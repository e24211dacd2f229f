#pragma once

#include <set>
#include <string>
#include <vector>

#include "effects/combine.hpp"
#include "effects/effect_ops.hpp"
#include "effects/interpret.hpp"
#include "effects/lexicon.hpp"
#include "effects/value.hpp"

namespace effects {

// Interprets a mode tree on daughter values of the given types.
inline Value apply_mode(const Ops& ops, const Mode& m, const Value& lv, const Value& rv,
                        const Ty& lty, const Ty& rty) {
  auto result = mode_type(m, lty, rty);
  if (!result)
    throw type_error("mode " + print_mode(m) + " is not licensed for " + print_type(lty) +
                     " and " + print_type(rty));
  const EvalPtr& ev = ops.evaluator();
  const Ty& u = *result;
  switch (m.op()) {
    case ModeOp::FA: return apply(lv, rv);
    case ModeOp::BA: return apply(rv, lv);
    case ModeOp::PM:
      return ev->fun(u, [lv, rv](const Value& x) {
        return Value(apply(lv, x).boolean() && apply(rv, x).boolean());
      });
    case ModeOp::FC:
      return ev->fun(u.dom(), u.cod(), [lv, rv](const Value& x) { return apply(lv, apply(rv, x)); });
    case ModeOp::RR: {
      Ty b = rty.dom();
      return ev->fun(u.dom(), u.cod(), [ev, lv, rv, b](const Value& x) {
        return ev->fun(b, ty::t(), [=](const Value& y) {
          return Value(apply(rv, y).boolean() && apply(apply(lv, x), y).boolean());
        });
      });
    }
    case ModeOp::MR: {
      const Ty& t = rty.under();
      const Ty& inner = u.under();
      Mode op = m.inner();
      Value k = ev->fun(t, inner, [ops, op, lv, lty, t](const Value& b) {
        return apply_mode(ops, op, lv, b, lty, t);
      });
      return ops.fmap(rty.eff(), t, inner, k, rv);
    }
    case ModeOp::ML: {
      const Ty& s = lty.under();
      const Ty& inner = u.under();
      Mode op = m.inner();
      Value k = ev->fun(s, inner, [ops, op, rv, rty, s](const Value& a) {
        return apply_mode(ops, op, a, rv, s, rty);
      });
      return ops.fmap(lty.eff(), s, inner, k, lv);
    }
    case ModeOp::AP: {
      const Ty& s = lty.under();
      const Ty& t = rty.under();
      const Ty& inner = u.under();
      Mode op = m.inner();
      Ty tu = ty::fn(t, inner);
      Value k = ev->fun(s, tu, [ops, ev, op, s, t, inner](const Value& a) {
        return ev->fun(t, inner, [=](const Value& b) { return apply_mode(ops, op, a, b, s, t); });
      });
      Value lifted = ops.fmap(lty.eff(), s, tu, k, lv);
      return ops.ap(lty.eff(), t, inner, lifted, rv);
    }
    case ModeOp::UR: {
      const Eff& f = lty.dom().eff();
      const Ty& s = lty.dom().under();
      Ty l2 = ty::fn(s, lty.cod());
      Value lv2 = ev->fun(l2.dom(), l2.cod(), [ops, f, s, lv](const Value& a) {
        return apply(lv, ops.pure(f, s, a));
      });
      return apply_mode(ops, m.inner(), lv2, rv, l2, rty);
    }
    case ModeOp::UL: {
      const Eff& f = rty.dom().eff();
      const Ty& t = rty.dom().under();
      Ty r2 = ty::fn(t, rty.cod());
      Value rv2 = ev->fun(r2.dom(), r2.cod(), [ops, f, t, rv](const Value& b) {
        return apply(rv, ops.pure(f, t, b));
      });
      return apply_mode(ops, m.inner(), lv, rv2, lty, r2);
    }
    case ModeOp::JN: {
      Value inner = apply_mode(ops, m.inner(), lv, rv, lty, rty);
      return ops.join(u.eff(), u.under(), inner);
    }
    case ModeOp::CU: {
      const Eff& w = lty.eff();
      const Eff& r = rty.eff();
      const Ty& s = lty.under();
      const Ty& t = rty.under();
      Mode op = m.inner();
      Ty ru = Ty::comp(r, u);
      Value k = ev->fun(s, ru, [ops, ev, op, r, rv, s, t, u](const Value& a) {
        Value kk = ev->fun(t, u, [=](const Value& b) { return apply_mode(ops, op, a, b, s, t); });
        return ops.fmap(r, t, u, kk, rv);
      });
      return ops.counit(ops.fmap(w, s, ru, k, lv));
    }
    case ModeOp::ER: {
      const Ty& i = *rty.cod().eff().param;
      Ty r2 = Ty::comp(rty.cod().eff(), ty::fn(rty.dom(), rty.cod().under()));
      Value rv2 = ops.eject(i, rty.dom(), rty.cod().under(), rv);
      return apply_mode(ops, m.inner(), lv, rv2, lty, r2);
    }
    case ModeOp::EL: {
      const Ty& i = *lty.cod().eff().param;
      Ty l2 = Ty::comp(lty.cod().eff(), ty::fn(lty.dom(), lty.cod().under()));
      Value lv2 = ops.eject(i, lty.dom(), lty.cod().under(), lv);
      return apply_mode(ops, m.inner(), lv2, rv, l2, rty);
    }
    case ModeOp::DN: {
      Value inner = apply_mode(ops, m.inner(), lv, rv, lty, rty);
      return apply(inner, ops.identity(u));
    }
  }
  throw type_error("unknown mode");
}

// Lexical schemas.

namespace detail {

inline std::set<EntityId> restrictor(const Model& m, const DenArg& a) {
  if (auto* s = std::get_if<std::string>(&a)) {
    if (*s == "*") {
      std::set<EntityId> all;
      for (EntityId i = 0; i < m.size(); ++i) all.insert(i);
      return all;
    }
    return m.predicate(*s);
  }
  const auto& spec = *std::get<std::shared_ptr<const DenSpec>>(a);
  return m.predicate(std::get<std::string>(spec.args.at(0)));
}

inline std::set<EntityId> all_entities(const Model& m) { return restrictor(m, DenArg(std::string("*"))); }

inline std::size_t index_arg(const Model& m, const DenArg& a) {
  std::size_t n = std::get<std::size_t>(a);
  if (n >= m.asgn_len)
    throw validation_error("index " + std::to_string(n) + " out of range for asgn_len " +
                           std::to_string(m.asgn_len));
  return n;
}

// x # s: prepend, then truncate to the assignment length.
inline Value push_onto(EntityId x, const AsgnV& s) {
  AsgnV out;
  out.slots.push_back(x);
  for (std::size_t k = 0; k + 1 < s.slots.size(); ++k) out.slots.push_back(s.slots[k]);
  return out;
}

inline Value entity_set(const std::set<EntityId>& xs) {
  std::vector<Value> v;
  for (auto x : xs) v.push_back(Ent{x});
  return make_set(std::move(v));
}

inline std::set<EntityId> extension(const Evaluator& ev, const Value& p) {
  std::set<EntityId> out;
  for (EntityId x = 0; x < ev.model().size(); ++x)
    if (apply(p, Ent{x}).boolean()) out.insert(x);
  return out;
}

inline Value quantifier(const Evaluator& ev, const std::string& det, std::set<EntityId> restr) {
  return ev.fun(ty::fn(ty::e(), ty::t()), ty::t(), [det, restr](const Value& q) {
    bool any = false, all = true;
    for (auto x : restr) {
      bool b = apply(q, Ent{x}).boolean();
      any = any || b;
      all = all && b;
    }
    if (det == "every") return Value(all);
    if (det == "some") return Value(any);
    return Value(!any);
  });
}

inline Value definite(std::set<EntityId> ext) {
  if (ext.size() == 1) return just(Ent{*ext.begin()});
  return failure();
}

}  // namespace detail

inline Value instantiate_schema(const Ops& ops, const DenSpec& den, const Ty& ty) {
  validate_entry("<instantiate>", Entry{ty, den});
  const EvalPtr& ev = ops.evaluator();
  const Model& m = ev->model();
  const auto& s = den.schema;
  const auto& args = den.args;
  auto name = [&](std::size_t i) { return std::get<std::string>(args.at(i)); };
  const Ty e = ty::e(), t = ty::t(), g = ty::g();

  if (s == "entity") return Ent{m.resolve(name(0))};
  if (s == "pred1") {
    auto ext = m.predicate(name(0));
    return ev->fun(e, t, [ext](const Value& x) { return Value(ext.count(x.ent()) > 0); });
  }
  if (s == "pred2") {
    auto rel = m.relation(name(0));
    return ev->fun(e, ty::fn(e, t), [ev, rel, e, t](const Value& y) {
      return ev->fun(e, t, [rel, y](const Value& x) { return Value(rel.count({x.ent(), y.ent()}) > 0); });
    });
  }
  if (s == "func") {
    const auto& rel = m.relation(name(0));
    std::vector<EntityId> image(m.size());
    for (EntityId x = 0; x < m.size(); ++x) {
      std::size_t n = 0;
      for (auto [a, b] : rel)
        if (a == x) {
          image[x] = b;
          ++n;
        }
      if (n != 1)
        throw validation_error("relation '" + name(0) + "' is not a function at '" + m.entities[x] + "'");
    }
    return ev->fun(e, e, [image](const Value& x) { return Value(Ent{image[x.ent()]}); });
  }
  if (s == "pro_vf") return ev->fun(e, e, [](const Value& x) { return x; });
  if (s == "pro") {
    auto n = detail::index_arg(m, args[0]);
    return ev->fun(g, e, [n](const Value& a) { return Value(Ent{a.asgn().slots[n]}); });
  }
  if (s == "wh") return detail::entity_set(detail::restrictor(m, args[0]));
  if (s == "indef" || s == "def") {
    bool indef = s == "indef";
    if (!args.empty()) {
      auto ext = detail::restrictor(m, args[0]);
      return indef ? detail::entity_set(ext) : detail::definite(ext);
    }
    Ty out = indef ? ty::S(e) : ty::M(e);
    return ev->fun(ty::fn(e, t), out, [ev, indef](const Value& p) {
      auto ext = detail::extension(*ev, p);
      return indef ? detail::entity_set(ext) : detail::definite(ext);
    });
  }
  if (s == "quant") {
    auto restr = args.size() > 1 ? detail::restrictor(m, args[1]) : detail::all_entities(m);
    return detail::quantifier(*ev, name(0), restr);
  }
  if (s == "focus") return make_pair(Ent{m.resolve(name(0))}, detail::entity_set(detail::all_entities(m)));
  if (s == "topic") {
    EntityId c = m.resolve(name(0));
    return ev->fun(ev->domain(ty::T(g, e)), [c](const Value& st) {
      return make_pair(Ent{c}, detail::push_onto(c, st.asgn()));
    });
  }
  if (s == "indef_dyn") {
    auto ext = detail::restrictor(m, args[0]);
    return ev->fun(ev->domain(ty::D(g, e)), [ext](const Value& st) {
      std::vector<Value> out;
      for (auto x : ext) out.push_back(make_pair(Ent{x}, st));
      return make_set(std::move(out));
    });
  }
  if (s == "pro_dyn") {
    auto n = detail::index_arg(m, args[0]);
    return ev->fun(ev->domain(ty::D(g, e)), [n](const Value& st) {
      return make_set({make_pair(Ent{st.asgn().slots[n]}, st)});
    });
  }
  if (s == "push") return ev->fun(e, ty::W(e, e), [](const Value& x) { return make_pair(x, x); });
  if (s == "push_dyn") {
    Ty de = ty::D(g, e);
    return ev->fun(e, de, [ev, de](const Value& x) {
      return ev->fun(ev->domain(de), [x](const Value& st) {
        return make_set({make_pair(x, detail::push_onto(x.ent(), st.asgn()))});
      });
    });
  }
  if (s == "exclo" || s == "mo") {
    bool any = s == "exclo";
    return ev->fun(ty::S(t), t, [any](const Value& ms) {
      for (const auto& p : ms.set().members)
        if (p.boolean() == any) return Value(any);
      return Value(!any);
    });
  }
  if (s == "only") {
    return ev->fun(ty::F(t), t, [](const Value& fp) {
      const Value& q = fp.pair().first;
      std::vector<Value> truths;
      for (const auto& p : fp.pair().second.set().members)
        if (p.boolean()) truths.push_back(p);
      return Value(truths.size() == 1 && values_equal(truths[0], q));
    });
  }
  if (s == "accom") {
    return ev->fun(ty::M(t), t, [](const Value& mp) {
      return mp.maybe().just ? *mp.maybe().just : Value(false);
    });
  }
  if (s == "lower") {
    return ev->fun(ty::C(t, t), t, [ops, t](const Value& c) { return apply(c, ops.identity(t)); });
  }
  if (s == "abs") {
    auto n = detail::index_arg(m, args[0]);
    Ty beta = ty.dom().under();
    Ty rb = ty.cod();
    return ev->fun(ty.dom(), rb, [ev, n, beta, g, e](const Value& b) {
      return ev->fun(g, ty::fn(e, beta), [=](const Value& asg) {
        return ev->fun(e, beta, [=](const Value& x) {
          AsgnV a2 = asg.asgn();
          a2.slots[n] = x.ent();
          return apply(b, a2);
        });
      });
    });
  }
  if (s == "and_dyn" || s == "if_dyn") {
    Ty dt = ty::D(g, t);
    bool conj = s == "and_dyn";
    return ev->fun(dt, ty::fn(dt, dt), [ev, dt, conj](const Value& first) {
      return ev->fun(dt, dt, [=](const Value& second) {
        return ev->fun(ev->domain(dt), [=](const Value& i) {
          if (conj) {
            // first = right conjunct, second = left conjunct
            std::vector<Value> out;
            for (const auto& pj : apply(second, i).set().members)
              for (const auto& qk : apply(first, pj.pair().second).set().members)
                out.push_back(make_pair(Value(pj.pair().first.boolean() && qk.pair().first.boolean()),
                                        qk.pair().second));
            return make_set(std::move(out));
          }
          bool r = true;
          for (const auto& pj : apply(first, i).set().members) {
            if (!pj.pair().first.boolean()) continue;
            bool ok = false;
            for (const auto& qk : apply(second, pj.pair().second).set().members)
              ok = ok || qk.pair().first.boolean();
            r = r && ok;
          }
          return make_set({make_pair(Value(r), i)});
        });
      });
    });
  }
  if (s == "another") {
    auto n = detail::index_arg(m, args[0]);
    auto ext = detail::restrictor(m, args[1]);
    return ev->fun(g, ty::S(e), [n, ext](const Value& asg) {
      std::set<EntityId> out;
      for (auto x : ext)
        if (x != asg.asgn().slots[n]) out.insert(x);
      return detail::entity_set(out);
    });
  }
  if (s == "conn") {
    std::string op = name(0);
    return ev->fun(t, ty::fn(t, t), [ev, op, t](const Value& p) {
      return ev->fun(t, t, [op, p](const Value& q) {
        bool a = p.boolean(), b = q.boolean();
        if (op == "and") return Value(a && b);
        if (op == "or") return Value(a || b);
        return Value(!a || b);
      });
    });
  }
  if (s == "neg") return ev->fun(t, t, [](const Value& p) { return Value(!p.boolean()); });
  throw validation_error("unknown schema '" + s + "'");
}

// Evaluates a derivation bottom-up.
inline Value denote(const Ops& ops, const Sem& sem, const Lexicon& lex) {
  if (sem->kind == SemNode::Kind::Lex) {
    const auto* es = lex.find(sem->word);
    if (!es || sem->entry >= es->size()) throw validation_error("no lexical entry for '" + sem->word + "'");
    return instantiate_schema(ops, (*es)[sem->entry].den, (*es)[sem->entry].ty);
  }
  Value l = denote(ops, sem->left, lex);
  Value r = denote(ops, sem->right, lex);
  return apply_mode(ops, sem->mode, l, r, sem->left->ty, sem->right->ty);
}

struct DenotedSem {
  Sem derivation;
  Value value;
};

// Groups derivations by type and extensional value; keeps the first of each group.
inline std::vector<std::pair<DenotedSem, std::size_t>> dedup_semantic(const Ops& ops,
                                                                     const std::vector<Sem>& ds,
                                                                     const Lexicon& lex) {
  std::vector<std::pair<DenotedSem, std::size_t>> groups;
  for (const auto& d : ds) {
    Value v = denote(ops, d, lex);
    bool merged = false;
    for (auto& [rep, count] : groups) {
      if (rep.derivation->ty == d->ty && values_equal(rep.value, v)) {
        ++count;
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back({DenotedSem{d, v}, 1});
  }
  return groups;
}

}  // namespace effects
