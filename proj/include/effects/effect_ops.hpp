#pragma once

#include <functional>
#include <string>
#include <vector>

#include "effects/value.hpp"

namespace effects {

// Functor, applicative and monad operations for every effect, plus the
// W[i] -| R[i] adjunction. Every operation is told the underlying types so
// that the function values it builds get the right domains.
class Ops {
 public:
  // Rewrites the result of a named operation. Only the law harness's mutation
  // fixtures install one.
  using Mutation = std::function<Value(const std::string& op, const Eff& f, const Value& v)>;

  explicit Ops(EvalPtr ev) : ev_(std::move(ev)) {}

  const EvalPtr& evaluator() const { return ev_; }

  Ops with_mutation(Mutation m) const {
    Ops o = *this;
    o.mutation_ = std::move(m);
    return o;
  }

  Value fmap(const Eff& f, const Ty& a, const Ty& b, const Value& k, const Value& m) const {
    return mutate("fmap", f, fmap_impl(f, a, b, k, m));
  }
  Value pure(const Eff& f, const Ty& a, const Value& x) const {
    return mutate("pure", f, pure_impl(f, a, x));
  }
  Value ap(const Eff& f, const Ty& a, const Ty& b, const Value& ff, const Value& xx) const {
    return mutate("ap", f, ap_impl(f, a, b, ff, xx));
  }
  Value bind(const Eff& f, const Ty& a, const Ty& b, const Value& m, const Value& k) const {
    return mutate("bind", f, bind_impl(f, a, b, m, k));
  }

  // k : a -> b, m : f a
 private:
  Value fmap_impl(const Eff& f, const Ty& a, const Ty& b, const Value& k, const Value& m) const {
    auto ev = ev_;
    switch (f.kind) {
      case EffKind::S: {
        std::vector<Value> out;
        for (const auto& x : m.set().members) out.push_back(apply(k, x));
        return make_set(std::move(out));
      }
      case EffKind::F: {
        std::vector<Value> alts;
        for (const auto& x : m.pair().second.set().members) alts.push_back(apply(k, x));
        return make_pair(apply(k, m.pair().first), make_set(std::move(alts)));
      }
      case EffKind::M:
        return m.maybe().just ? just(apply(k, *m.maybe().just)) : failure();
      case EffKind::W: return make_pair(apply(k, m.pair().first), m.pair().second);
      case EffKind::R:
        return ev->fun(ev->domain(Ty::comp(f, b)), [k, m](const Value& i) { return apply(k, apply(m, i)); });
      case EffKind::T:
        return ev->fun(ev->domain(Ty::comp(f, b)), [k, m](const Value& s) {
          Value p = apply(m, s);
          return make_pair(apply(k, p.pair().first), p.pair().second);
        });
      case EffKind::D:
        return ev->fun(ev->domain(Ty::comp(f, b)), [k, m](const Value& s) {
          std::vector<Value> out;
          for (const auto& p : apply(m, s).set().members)
            out.push_back(make_pair(apply(k, p.pair().first), p.pair().second));
          return make_set(std::move(out));
        });
      case EffKind::C: {
        Ty r = *f.param;
        Ty ar = ty::fn(a, r);
        return ev->fun(ev->domain(Ty::comp(f, b)), [ev, k, m, ar](const Value& c) {
          return apply(m, ev->fun(ar, [=](const Value& x) { return apply(c, apply(k, x)); }));
        });
      }
    }
    throw type_error("unknown effect");
  }

  Value pure_impl(const Eff& f, const Ty& a, const Value& x) const {
    require_applicative(f);
    auto ev = ev_;
    switch (f.kind) {
      case EffKind::S: return make_set({x});
      case EffKind::F: return make_pair(x, make_set({x}));
      case EffKind::M: return just(x);
      case EffKind::W: return make_pair(x, true);
      case EffKind::R: return ev->fun(ev->domain(Ty::comp(f, a)), [x](const Value&) { return x; });
      case EffKind::T:
        return ev->fun(ev->domain(Ty::comp(f, a)), [x](const Value& s) { return make_pair(x, s); });
      case EffKind::D:
        return ev->fun(ev->domain(Ty::comp(f, a)),
                       [x](const Value& s) { return make_set({make_pair(x, s)}); });
      case EffKind::C:
        return ev->fun(ev->domain(Ty::comp(f, a)), [x](const Value& c) { return apply(c, x); });
    }
    throw type_error("unknown effect");
  }

  // ff : f (a -> b), xx : f a
  Value ap_impl(const Eff& f, const Ty& a, const Ty& b, const Value& ff, const Value& xx) const {
    require_applicative(f);
    auto ev = ev_;
    switch (f.kind) {
      case EffKind::S: {
        std::vector<Value> out;
        for (const auto& g : ff.set().members)
          for (const auto& x : xx.set().members) out.push_back(apply(g, x));
        return make_set(std::move(out));
      }
      case EffKind::F: {
        std::vector<Value> alts;
        for (const auto& g : ff.pair().second.set().members)
          for (const auto& x : xx.pair().second.set().members) alts.push_back(apply(g, x));
        return make_pair(apply(ff.pair().first, xx.pair().first), make_set(std::move(alts)));
      }
      case EffKind::M:
        if (ff.maybe().just && xx.maybe().just) return just(apply(*ff.maybe().just, *xx.maybe().just));
        return failure();
      case EffKind::W:
        return make_pair(apply(ff.pair().first, xx.pair().first),
                         ff.pair().second.boolean() && xx.pair().second.boolean());
      case EffKind::R:
        return ev->fun(ev->domain(Ty::comp(f, b)),
                       [ff, xx](const Value& i) { return apply(apply(ff, i), apply(xx, i)); });
      case EffKind::T:
        return ev->fun(ev->domain(Ty::comp(f, b)), [ff, xx](const Value& s) {
          Value p = apply(ff, s);
          Value q = apply(xx, p.pair().second);
          return make_pair(apply(p.pair().first, q.pair().first), q.pair().second);
        });
      case EffKind::D:
        return ev->fun(ev->domain(Ty::comp(f, b)), [ff, xx](const Value& s) {
          std::vector<Value> out;
          for (const auto& p : apply(ff, s).set().members)
            for (const auto& q : apply(xx, p.pair().second).set().members)
              out.push_back(make_pair(apply(p.pair().first, q.pair().first), q.pair().second));
          return make_set(std::move(out));
        });
      case EffKind::C: {
        Ty r = *f.param;
        Ty fr = ty::fn(ty::fn(a, b), r);
        Ty xr = ty::fn(a, r);
        return ev->fun(ev->domain(Ty::comp(f, b)), [ev, ff, xx, fr, xr](const Value& c) {
          return apply(ff, ev->fun(fr, [=](const Value& g) {
            return apply(xx, ev->fun(xr, [=](const Value& x) { return apply(c, apply(g, x)); }));
          }));
        });
      }
    }
    throw type_error("unknown effect");
  }

  // m : f a, k : a -> f b
  Value bind_impl(const Eff& f, const Ty& a, const Ty& b, const Value& m, const Value& k) const {
    require_applicative(f);
    auto ev = ev_;
    (void)a;
    switch (f.kind) {
      case EffKind::S: {
        std::vector<Value> out;
        for (const auto& x : m.set().members)
          for (const auto& y : apply(k, x).set().members) out.push_back(y);
        return make_set(std::move(out));
      }
      case EffKind::F: {
        std::vector<Value> alts;
        for (const auto& x : m.pair().second.set().members)
          for (const auto& y : apply(k, x).pair().second.set().members) alts.push_back(y);
        return make_pair(apply(k, m.pair().first).pair().first, make_set(std::move(alts)));
      }
      case EffKind::M: return m.maybe().just ? apply(k, *m.maybe().just) : failure();
      case EffKind::W: {
        Value n = apply(k, m.pair().first);
        return make_pair(n.pair().first, m.pair().second.boolean() && n.pair().second.boolean());
      }
      case EffKind::R:
        return ev->fun(ev->domain(Ty::comp(f, b)),
                       [m, k](const Value& i) { return apply(apply(k, apply(m, i)), i); });
      case EffKind::T:
        return ev->fun(ev->domain(Ty::comp(f, b)), [m, k](const Value& s) {
          Value p = apply(m, s);
          return apply(apply(k, p.pair().first), p.pair().second);
        });
      case EffKind::D:
        return ev->fun(ev->domain(Ty::comp(f, b)), [m, k](const Value& s) {
          std::vector<Value> out;
          for (const auto& p : apply(m, s).set().members)
            for (const auto& q : apply(apply(k, p.pair().first), p.pair().second).set().members)
              out.push_back(q);
          return make_set(std::move(out));
        });
      case EffKind::C: {
        Ty ar = ty::fn(a, *f.param);
        return ev->fun(ev->domain(Ty::comp(f, b)), [ev, m, k, ar](const Value& c) {
          return apply(m, ev->fun(ar, [=](const Value& x) { return apply(apply(k, x), c); }));
        });
      }
    }
    throw type_error("unknown effect");
  }

 public:
  // mm : f (f a)
  Value join(const Eff& f, const Ty& a, const Value& mm) const {
    Ty fa = Ty::comp(f, a);
    return bind(f, fa, a, mm, identity(fa));
  }

  Value identity(const Ty& a) const {
    return ev_->fun(ty::fn(a, a), [](const Value& x) { return x; });
  }

  // Adjunction W[i] -| R[i].

  // c : W[i] a -> b  gives  a -> R[i] b
  Value phi(const Ty& i, const Ty& a, const Ty& b, const Value& c) const {
    return mutate("phi", ty::eff(EffKind::R, i), phi_impl(i, a, b, c));
  }
  Value phi_impl(const Ty& i, const Ty& a, const Ty& b, const Value& c) const {
    auto ev = ev_;
    Ty rb = ty::R(i, b);
    return ev->fun(ty::fn(a, rb), [ev, c, i, b](const Value& x) {
      return ev->fun(i, b, [=](const Value& y) { return apply(c, make_pair(x, y)); });
    });
  }

  // k : a -> R[i] b  gives  W[i] a -> b
  Value psi(const Ty& i, const Ty& a, const Ty& b, const Value& k) const {
    return mutate("psi", ty::eff(EffKind::R, i), psi_impl(i, a, b, k));
  }
  Value psi_impl(const Ty& i, const Ty& a, const Ty& b, const Value& k) const {
    return ev_->fun(ty::fn(ty::W(i, a), b),
                    [k](const Value& w) { return apply(apply(k, w.pair().first), w.pair().second); });
  }

  // a -> R[i] (W[i] a)
  Value unit(const Ty& i, const Ty& a) const {
    auto ev = ev_;
    Ty wa = ty::W(i, a);
    return ev->fun(ty::fn(a, ty::R(i, wa)), [ev, i, wa](const Value& x) {
      return ev->fun(i, wa, [=](const Value& y) { return make_pair(x, y); });
    });
  }

  // W[i] (R[i] a) -> a
  Value counit(const Value& w) const {
    return mutate("counit", ty::eff(EffKind::S), apply(w.pair().first, w.pair().second));
  }

  // k : s -> R[i] t  gives  R[i] (s -> t), as phi (\w a -> psi (\_ -> k a) w) applied to a
  // dummy truth value.
  Value eject(const Ty& i, const Ty& s, const Ty& t, const Value& k) const {
    auto self = *this;
    const Ty unit_ty = ty::t();
    Ty st = ty::fn(s, t);
    Value c = ev_->fun(ty::fn(ty::W(i, unit_ty), st), [self, i, s, t, k, unit_ty](const Value& w) {
      return self.ev_->fun(s, t, [=](const Value& a) {
        Value ka = self.ev_->fun(unit_ty, ty::R(i, t), [=](const Value&) { return apply(k, a); });
        return apply(self.psi(i, unit_ty, t, ka), w);
      });
    });
    return apply(phi(i, unit_ty, st, c), Value(false));
  }

  // m : R[i] (s -> t)  gives  s -> R[i] t
  Value eject_inverse(const Ty& i, const Ty& s, const Ty& t, const Value& m) const {
    auto self = *this;
    Eff r = ty::eff(EffKind::R, i);
    Ty st = ty::fn(s, t);
    return ev_->fun(ty::fn(s, ty::R(i, t)), [self, r, st, t, m](const Value& a) {
      Value at = self.ev_->fun(st, t, [=](const Value& g) { return apply(g, a); });
      return self.fmap(r, st, t, at, m);
    });
  }

 private:
  Value mutate(const char* op, const Eff& f, Value v) const {
    return mutation_ ? mutation_(op, f, v) : v;
  }

  static void require_applicative(const Eff& f) {
    if (!is_applicative(f)) throw type_error("effect " + print_eff(f) + " is not applicative");
  }

  EvalPtr ev_;
  Mutation mutation_;
};

}  // namespace effects
