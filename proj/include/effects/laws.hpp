#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "effects/denote.hpp"
#include "effects/effect_ops.hpp"
#include "effects/value.hpp"

namespace effects {

struct LawReport {
  std::string law;
  std::string effect;
  std::vector<std::string> params;  // one entry per instantiation of the type variables
  std::uint64_t cases = 0;
  std::vector<std::string> counterexamples;
  bool passed = false;
  bool applicable = true;
  bool exhaustive = true;
  std::string note;
};

struct LawOptions {
  std::vector<Ty> under{ty::e(), ty::t()};
  // Instantiations with more cases than this are sampled.
  std::uint64_t exhaustive_limit = 2'000'000;
  std::uint64_t samples = 50'000;
  std::uint64_t seed = 20240611;
  std::size_t max_counterexamples = 3;
  bool parallel = true;
};

inline nlohmann::json law_report_to_json(const LawReport& r) {
  return {{"law", r.law},          {"effect", r.effect},         {"params", r.params},
          {"cases", r.cases},      {"counterexamples", r.counterexamples},
          {"passed", r.passed},    {"applicable", r.applicable}, {"exhaustive", r.exhaustive},
          {"note", r.note}};
}

inline nlohmann::json law_reports_to_json(const std::vector<LawReport>& rs) {
  auto a = nlohmann::json::array();
  for (const auto& r : rs) a.push_back(law_report_to_json(r));
  return a;
}

inline std::string law_reports_table(const std::vector<LawReport>& rs) {
  std::size_t lw = 3, ew = 6;
  for (const auto& r : rs) {
    lw = std::max(lw, r.law.size());
    ew = std::max(ew, r.effect.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  std::string out = pad("law", lw) + "  " + pad("effect", ew) + "  " + pad("result", 6) + "  " +
                    pad("cases", 12) + "  coverage\n";
  for (const auto& r : rs) {
    std::string res = !r.applicable ? "n/a" : r.passed ? "pass" : "FAIL";
    std::string cov = !r.applicable ? r.note : r.exhaustive ? "exhaustive" : "sampled";
    out += pad(r.law, lw) + "  " + pad(r.effect, ew) + "  " + pad(res, 6) + "  " +
           pad(std::to_string(r.cases), 12) + "  " + cov + "\n";
    for (const auto& c : r.counterexamples) out += "    counterexample: " + c + "\n";
  }
  return out;
}

namespace detail {

// One instantiation of a law: named quantified variables over types, and the
// equation to check on a tuple of their values.
struct LawCase {
  std::string law;
  std::string effect;
  std::string params;
  std::vector<std::pair<std::string, Ty>> vars;
  std::function<bool(const std::vector<Value>&)> holds;
};

struct LawOutcome {
  std::uint64_t cases = 0;
  bool exhaustive = true;
  std::vector<std::string> counterexamples;
};

inline LawOutcome run_case(const Evaluator& ev, const LawCase& lc, const LawOptions& opt,
                           std::uint64_t seed) {
  LawOutcome out;
  std::vector<DomainPtr> doms;
  std::uint64_t total = 1;
  for (const auto& [_, t] : lc.vars) {
    doms.push_back(ev.domain(t));
    if (doms.back()->size() == kSaturated)
      throw domain_too_large("cannot quantify over " + print_type(t));
    total = detail::sat_mul(total, doms.back()->size());
  }
  std::vector<Value> xs(doms.size());
  auto check = [&] {
    ++out.cases;
    std::string raised;
    try {
      if (lc.holds(xs)) return;
    } catch (const std::exception& e) {
      raised = std::string(" (raised: ") + e.what() + ")";
    }
    if (out.counterexamples.size() >= opt.max_counterexamples) return;
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k)
      s += (k ? ", " : "") + lc.vars[k].first + " = " + render(xs[k], ev.model());
    out.counterexamples.push_back(lc.params + ": " + s + raised);
  };
  if (total <= opt.exhaustive_limit) {
    std::vector<std::uint64_t> idx(doms.size(), 0);
    for (std::uint64_t n = 0; n < total; ++n) {
      for (std::size_t k = 0; k < doms.size(); ++k) xs[k] = doms[k]->elements()[idx[k]];
      check();
      for (std::size_t k = doms.size(); k-- > 0;) {
        if (++idx[k] < doms[k]->size()) break;
        idx[k] = 0;
      }
    }
    return out;
  }
  out.exhaustive = false;
  std::mt19937_64 rng(seed);
  for (std::uint64_t n = 0; n < opt.samples; ++n) {
    for (std::size_t k = 0; k < doms.size(); ++k)
      xs[k] = doms[k]->at(std::uniform_int_distribution<std::uint64_t>(0, doms[k]->size() - 1)(rng));
    check();
  }
  return out;
}

// Runs every case and merges outcomes into one report per (law, effect), in
// first-appearance order.
inline std::vector<LawReport> run_cases(const Evaluator& ev, const std::vector<LawCase>& cases,
                                        const LawOptions& opt) {
  std::vector<LawOutcome> outcomes(cases.size());
  if (opt.parallel) {
    std::atomic<std::size_t> next{0};
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> workers;
    for (std::size_t w = 0; w < n; ++w)
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t k; (k = next++) < cases.size();) outcomes[k] = run_case(ev, cases[k], opt, opt.seed + k);
      }));
    for (auto& w : workers) w.get();
  } else {
    for (std::size_t k = 0; k < cases.size(); ++k) outcomes[k] = run_case(ev, cases[k], opt, opt.seed + k);
  }
  std::vector<LawReport> reports;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& lc = cases[k];
    auto it = std::find_if(reports.begin(), reports.end(), [&](const LawReport& r) {
      return r.law == lc.law && r.effect == lc.effect;
    });
    if (it == reports.end()) {
      reports.push_back(LawReport{lc.law, lc.effect, {}, 0, {}, false, true, true, ""});
      it = reports.end() - 1;
    }
    it->params.push_back(lc.params);
    it->cases += outcomes[k].cases;
    it->exhaustive = it->exhaustive && outcomes[k].exhaustive;
    for (auto& c : outcomes[k].counterexamples)
      if (it->counterexamples.size() < opt.max_counterexamples) it->counterexamples.push_back(c);
  }
  for (auto& r : reports) {
    r.passed = r.counterexamples.empty();
    if (!r.exhaustive) r.note = "sampled " + std::to_string(opt.samples) + " per instantiation over the limit";
  }
  return reports;
}

inline std::string type_params(std::initializer_list<Ty> ts) {
  std::string s;
  for (const auto& t : ts) s += (s.empty() ? "" : ", ") + print_type(t);
  return s;
}

inline LawReport not_applicable(const std::string& law, const Eff& f, const std::string& why) {
  LawReport r{law, print_eff(f), {}, 0, {}, false, false, true, why};
  return r;
}

inline std::string non_applicative_reason(const Eff& f) {
  return "not applicative: parameter " + print_type(*f.param) + " is not a monoid";
}

inline Value compose(const Evaluator& ev, const Value& g, const Value& h, const Ty& a, const Ty& c) {
  return ev.fun(a, c, [g, h](const Value& x) { return apply(g, apply(h, x)); });
}

inline std::vector<LawCase> functor_cases(const Ops& ops, const Eff& f, const LawOptions& opt) {
  std::vector<LawCase> cs;
  const EvalPtr& ev = ops.evaluator();
  std::string name = print_eff(f);
  for (const auto& a : opt.under) {
    Ty fa = Ty::comp(f, a);
    cs.push_back({"functor.identity", name, type_params({a}), {{"X", fa}},
                  [=](const std::vector<Value>& v) {
                    return values_equal(ops.fmap(f, a, a, ops.identity(a), v[0]), v[0]);
                  }});
  }
  for (const auto& a : opt.under)
    for (const auto& b : opt.under)
      for (const auto& c : opt.under) {
        cs.push_back({"functor.composition", name, type_params({a, b, c}),
                      {{"g", ty::fn(b, c)}, {"h", ty::fn(a, b)}, {"X", Ty::comp(f, a)}},
                      [=](const std::vector<Value>& v) {
                        Value lhs = ops.fmap(f, a, c, compose(*ev, v[0], v[1], a, c), v[2]);
                        Value rhs = ops.fmap(f, b, c, v[0], ops.fmap(f, a, b, v[1], v[2]));
                        return values_equal(lhs, rhs);
                      }});
      }
  return cs;
}

inline std::vector<LawCase> applicative_cases(const Ops& ops, const Eff& f, const LawOptions& opt) {
  std::vector<LawCase> cs;
  const EvalPtr& ev = ops.evaluator();
  std::string name = print_eff(f);
  for (const auto& a : opt.under)
    for (const auto& b : opt.under)
      cs.push_back({"applicative.homomorphism", name, type_params({a, b}),
                    {{"k", ty::fn(a, b)}, {"x", a}},
                    [=](const std::vector<Value>& v) {
                      Value lhs = ops.ap(f, a, b, ops.pure(f, ty::fn(a, b), v[0]), ops.pure(f, a, v[1]));
                      return values_equal(lhs, ops.pure(f, b, apply(v[0], v[1])));
                    }});
  for (const auto& a : opt.under)
    cs.push_back({"applicative.identity", name, type_params({a}), {{"X", Ty::comp(f, a)}},
                  [=](const std::vector<Value>& v) {
                    Value lhs = ops.ap(f, a, a, ops.pure(f, ty::fn(a, a), ops.identity(a)), v[0]);
                    return values_equal(lhs, v[0]);
                  }});
  for (const auto& a : opt.under)
    for (const auto& b : opt.under)
      cs.push_back({"applicative.interchange", name, type_params({a, b}),
                    {{"F", Ty::comp(f, ty::fn(a, b))}, {"x", a}},
                    [=](const std::vector<Value>& v) {
                      Ty ab = ty::fn(a, b);
                      Value x = v[1];
                      Value at_x = ev->fun(ab, b, [x](const Value& k) { return apply(k, x); });
                      Value lhs = ops.ap(f, ab, b, ops.pure(f, ty::fn(ab, b), at_x), v[0]);
                      Value rhs = ops.ap(f, a, b, v[0], ops.pure(f, a, x));
                      return values_equal(lhs, rhs);
                    }});
  for (const auto& a : opt.under)
    for (const auto& b : opt.under)
      for (const auto& c : opt.under)
        cs.push_back({"applicative.composition", name, type_params({a, b, c}),
                      {{"F", Ty::comp(f, ty::fn(b, c))}, {"G", Ty::comp(f, ty::fn(a, b))}, {"X", Ty::comp(f, a)}},
                      [=](const std::vector<Value>& v) {
                        Ty bc = ty::fn(b, c), ab = ty::fn(a, b), ac = ty::fn(a, c);
                        Value dot = ev->fun(bc, ty::fn(ab, ac), [ev, a, c, ab, ac](const Value& g) {
                          return ev->fun(ab, ac, [=](const Value& h) { return compose(*ev, g, h, a, c); });
                        });
                        Value p = ops.pure(f, ty::fn(bc, ty::fn(ab, ac)), dot);
                        Value pf = ops.ap(f, bc, ty::fn(ab, ac), p, v[0]);
                        Value pfg = ops.ap(f, ab, ac, pf, v[1]);
                        Value lhs = ops.ap(f, a, c, pfg, v[2]);
                        Value rhs = ops.ap(f, b, c, v[0], ops.ap(f, a, b, v[1], v[2]));
                        return values_equal(lhs, rhs);
                      }});
  return cs;
}

inline std::vector<LawCase> monad_cases(const Ops& ops, const Eff& f, const LawOptions& opt) {
  std::vector<LawCase> cs;
  const EvalPtr& ev = ops.evaluator();
  std::string name = print_eff(f);
  for (const auto& a : opt.under)
    cs.push_back({"monad.left_identity", name, type_params({a}), {{"m", Ty::comp(f, a)}},
                  [=](const std::vector<Value>& v) {
                    Value eta = ev->fun(a, Ty::comp(f, a), [ops, f, a](const Value& x) { return ops.pure(f, a, x); });
                    return values_equal(ops.bind(f, a, a, v[0], eta), v[0]);
                  }});
  for (const auto& a : opt.under)
    for (const auto& b : opt.under)
      cs.push_back({"monad.right_identity", name, type_params({a, b}),
                    {{"k", ty::fn(a, Ty::comp(f, b))}, {"x", a}},
                    [=](const std::vector<Value>& v) {
                      Value lhs = ops.bind(f, a, b, ops.pure(f, a, v[1]), v[0]);
                      return values_equal(lhs, apply(v[0], v[1]));
                    }});
  for (const auto& a : opt.under)
    for (const auto& b : opt.under)
      for (const auto& c : opt.under)
        cs.push_back({"monad.associativity", name, type_params({a, b, c}),
                      {{"k", ty::fn(b, Ty::comp(f, c))}, {"c", ty::fn(a, Ty::comp(f, b))}, {"m", Ty::comp(f, a)}},
                      [=](const std::vector<Value>& v) {
                        Value k = v[0], cc = v[1];
                        Value lhs = ops.bind(f, b, c, ops.bind(f, a, b, v[2], cc), k);
                        Value kc = ev->fun(a, Ty::comp(f, c), [ops, f, b, c, k, cc](const Value& x) {
                          return ops.bind(f, b, c, apply(cc, x), k);
                        });
                        return values_equal(lhs, ops.bind(f, a, c, v[2], kc));
                      }});
  return cs;
}

inline std::vector<LawCase> adjunction_cases(const Ops& ops, const Ty& i, const LawOptions& opt) {
  std::vector<LawCase> cs;
  const EvalPtr& ev = ops.evaluator();
  std::string name = "W[" + print_type(i) + "] -| R[" + print_type(i) + "]";
  Eff r = ty::eff(EffKind::R, i), w = ty::eff(EffKind::W, i);
  for (const auto& a : opt.under)
    for (const auto& b : opt.under) {
      cs.push_back({"adjunction.phi_psi", name, type_params({a, b}), {{"k", ty::fn(a, ty::R(i, b))}},
                    [=](const std::vector<Value>& v) {
                      return values_equal(ops.phi(i, a, b, ops.psi(i, a, b, v[0])), v[0]);
                    }});
      cs.push_back({"adjunction.psi_phi", name, type_params({a, b}), {{"c", ty::fn(ty::W(i, a), b)}},
                    [=](const std::vector<Value>& v) {
                      return values_equal(ops.psi(i, a, b, ops.phi(i, a, b, v[0])), v[0]);
                    }});
    }
  for (const auto& a : opt.under) {
    Ty wa = ty::W(i, a), ra = ty::R(i, a);
    cs.push_back({"adjunction.unit", name, type_params({a}), {{"x", a}},
                  [=](const std::vector<Value>& v) {
                    Value lhs = apply(ops.unit(i, a), v[0]);
                    return values_equal(lhs, apply(ops.phi(i, a, wa, ops.identity(wa)), v[0]));
                  }});
    cs.push_back({"adjunction.counit", name, type_params({a}), {{"w", ty::W(i, ra)}},
                  [=](const std::vector<Value>& v) {
                    return values_equal(ops.counit(v[0]), apply(ops.psi(i, ra, a, ops.identity(ra)), v[0]));
                  }});
    cs.push_back({"adjunction.triangle_left", name, type_params({a}), {{"w", wa}},
                  [=](const std::vector<Value>& v) {
                    Ty rwa = ty::R(i, wa);
                    return values_equal(ops.counit(ops.fmap(w, a, rwa, ops.unit(i, a), v[0])), v[0]);
                  }});
    cs.push_back({"adjunction.triangle_right", name, type_params({a}), {{"m", ra}},
                  [=](const std::vector<Value>& v) {
                    Ty wra = ty::W(i, ra);
                    Value eps = ev->fun(wra, a, [ops](const Value& x) { return ops.counit(x); });
                    Value lhs = ops.fmap(r, wra, a, eps, apply(ops.unit(i, ra), v[0]));
                    return values_equal(lhs, v[0]);
                  }});
  }
  for (const auto& s : opt.under)
    for (const auto& t : opt.under) {
      cs.push_back({"adjunction.eject_flip", name, type_params({s, t}), {{"k", ty::fn(s, ty::R(i, t))}},
                    [=](const std::vector<Value>& v) {
                      Value k = v[0];
                      Value flip = ev->fun(i, ty::fn(s, t), [ev, k, s, t](const Value& j) {
                        return ev->fun(s, t, [=](const Value& x) { return apply(apply(k, x), j); });
                      });
                      return values_equal(ops.eject(i, s, t, k), flip);
                    }});
      cs.push_back({"adjunction.eject_inverse", name, type_params({s, t}), {{"k", ty::fn(s, ty::R(i, t))}},
                    [=](const std::vector<Value>& v) {
                      return values_equal(ops.eject_inverse(i, s, t, ops.eject(i, s, t, v[0])), v[0]);
                    }});
      cs.push_back({"adjunction.inverse_eject", name, type_params({s, t}), {{"m", ty::R(i, ty::fn(s, t))}},
                    [=](const std::vector<Value>& v) {
                      return values_equal(ops.eject(i, s, t, ops.eject_inverse(i, s, t, v[0])), v[0]);
                    }});
    }
  return cs;
}

// Cross-class coherence for an applicative effect.
inline std::vector<LawCase> coherence_cases(const Ops& ops, const Eff& f, const LawOptions& opt) {
  std::vector<LawCase> cs;
  const EvalPtr& ev = ops.evaluator();
  std::string name = print_eff(f);
  for (const auto& a : opt.under)
    for (const auto& b : opt.under) {
      Ty fa = Ty::comp(f, a), fb = Ty::comp(f, b), ab = ty::fn(a, b);
      auto etak = [ev, ops, f, a, b](const Value& k) {
        return ev->fun(a, Ty::comp(f, b), [=](const Value& x) { return ops.pure(f, b, apply(k, x)); });
      };
      cs.push_back({"fmap_via_ap", name, type_params({a, b}), {{"k", ab}, {"m", fa}},
                    [=](const std::vector<Value>& v) {
                      return values_equal(ops.fmap(f, a, b, v[0], v[1]),
                                          ops.ap(f, a, b, ops.pure(f, ab, v[0]), v[1]));
                    }});
      cs.push_back({"bind_via_join", name, type_params({a, b}), {{"k", ty::fn(a, fb)}, {"m", fa}},
                    [=](const std::vector<Value>& v) {
                      return values_equal(ops.bind(f, a, b, v[1], v[0]),
                                          ops.join(f, b, ops.fmap(f, a, fb, v[0], v[1])));
                    }});
      cs.push_back({"ap_via_bind", name, type_params({a, b}), {{"F", Ty::comp(f, ab)}, {"X", fa}},
                    [=](const std::vector<Value>& v) {
                      Value xx = v[1];
                      Value k = ev->fun(ab, fb, [=](const Value& g) { return ops.bind(f, a, b, xx, etak(g)); });
                      return values_equal(ops.ap(f, a, b, v[0], v[1]), ops.bind(f, ab, b, v[0], k));
                    }});
      cs.push_back({"fmap_via_bind", name, type_params({a, b}), {{"k", ab}, {"m", fa}},
                    [=](const std::vector<Value>& v) {
                      return values_equal(ops.fmap(f, a, b, v[0], v[1]), ops.bind(f, a, b, v[1], etak(v[0])));
                    }});
    }
  return cs;
}

inline Value mode_value(const Ops& ops, const char* mode, const Value& l, const Value& r, const Ty& lt,
                        const Ty& rt) {
  return apply_mode(ops, parse_mode(mode), l, r, lt, rt);
}

// Equivalences between composite modes and hand-written binds.
inline std::vector<LawCase> derived_bind_cases(const Ops& ops, const LawOptions& opt) {
  std::vector<LawCase> cs;
  const EvalPtr& ev = ops.evaluator();
  const Ty e = ty::e(), t = ty::t(), g = ty::g();

  // Reader-wrapped bind for S.
  for (const auto& a : opt.under)
    for (const auto& b : opt.under) {
      Ty kt = ty::fn(a, ty::R(g, ty::S(b))), mt = ty::R(g, ty::S(a));
      cs.push_back({"reader_bind", "S", type_params({a, b}), {{"k", kt}, {"m", mt}},
                    [=](const std::vector<Value>& v) {
                      Value k = v[0], m = v[1];
                      Value lhs = mode_value(ops, "EL(AP(JN(MR(FA))))", k, m, kt, mt);
                      Value rhs = ev->fun(g, ty::S(b), [k, m](const Value& i) {
                        std::vector<Value> out;
                        for (const auto& x : apply(m, i).set().members)
                          for (const auto& y : apply(apply(k, x), i).set().members) out.push_back(y);
                        return make_set(std::move(out));
                      });
                      return values_equal(lhs, rhs);
                    }});
    }

  {
    Ty mt = ty::R(e, ty::W(e, e)), kt = ty::fn(e, ty::R(e, ty::W(e, t)));
    cs.push_back({"state_bind", "R[e] W[e]", type_params({mt, kt}), {{"m", mt}, {"k", kt}},
                  [=](const std::vector<Value>& v) {
                    Value m = v[0], k = v[1];
                    Value lhs = mode_value(ops, "ML(ER(CU(BA)))", m, k, mt, kt);
                    Value rhs = ev->fun(e, ty::W(e, t), [k, m](const Value& i) {
                      Value p = apply(m, i);
                      return apply(apply(k, p.pair().first), p.pair().second);
                    });
                    return values_equal(lhs, rhs);
                  }});
  }

  {
    Ty mt = ty::R(g, ty::S(ty::W(g, e))), kt = ty::fn(e, ty::R(g, ty::S(ty::W(g, t))));
    Ty out = ty::S(ty::W(g, t));
    cs.push_back({"dynamic_bind", "R[g] S W[g]", type_params({mt, kt}), {{"m", mt}, {"k", kt}},
                  [=](const std::vector<Value>& v) {
                    Value m = v[0], k = v[1];
                    Value lhs = mode_value(ops, "ML(JN(ML(ER(CU(BA)))))", m, k, mt, kt);
                    Value rhs = ev->fun(g, out, [k, m](const Value& i) {
                      std::vector<Value> acc;
                      for (const auto& p : apply(m, i).set().members)
                        for (const auto& y : apply(apply(k, p.pair().first), p.pair().second).set().members)
                          acc.push_back(y);
                      return make_set(std::move(acc));
                    });
                    return values_equal(lhs, rhs);
                  }});
  }

  // Inverse scope from an in-situ join, against the raised-object oracle
  // F >>= \p. A >>= \z. pure (p z).
  {
    Ty at = ty::S(e), ft = ty::S(ty::fn(e, t));
    auto oracle = [](const Value& a, const Value& f) {
      std::vector<Value> out;
      for (const auto& p : f.set().members)
        for (const auto& z : a.set().members) out.push_back(apply(p, z));
      return make_set(std::move(out));
    };
    for (const char* mode : {"JN(ML(MR(BA)))", "JN(MR(ML(BA)))"}) {
      cs.push_back({"in_situ_inverse_scope", "S", mode, {{"A", at}, {"F", ft}},
                    [=](const std::vector<Value>& v) {
                      return values_equal(mode_value(ops, mode, v[0], v[1], at, ft), oracle(v[0], v[1]));
                    }});
    }
  }
  return cs;
}

}  // namespace detail

inline const std::vector<Eff>& default_law_effects() {
  static const std::vector<Eff> effs = {
      ty::eff(EffKind::S),         ty::eff(EffKind::F),         ty::eff(EffKind::M),
      ty::eff(EffKind::R, ty::e()), ty::eff(EffKind::R, ty::g()), ty::eff(EffKind::W, ty::e()),
      ty::eff(EffKind::W, ty::t()), ty::eff(EffKind::C, ty::t()), ty::eff(EffKind::T, ty::g()),
      ty::eff(EffKind::D, ty::g())};
  return effs;
}

inline std::vector<LawReport> check_functor_laws(const Ops& ops, const Eff& f, const LawOptions& opt = {}) {
  return detail::run_cases(*ops.evaluator(), detail::functor_cases(ops, f, opt), opt);
}

inline std::vector<LawReport> check_applicative_laws(const Ops& ops, const Eff& f, const LawOptions& opt = {}) {
  if (!is_applicative(f)) return {detail::not_applicable("applicative", f, detail::non_applicative_reason(f))};
  return detail::run_cases(*ops.evaluator(), detail::applicative_cases(ops, f, opt), opt);
}

inline std::vector<LawReport> check_monad_laws(const Ops& ops, const Eff& f, const LawOptions& opt = {}) {
  if (!is_monad(f)) return {detail::not_applicable("monad", f, detail::non_applicative_reason(f))};
  return detail::run_cases(*ops.evaluator(), detail::monad_cases(ops, f, opt), opt);
}

inline std::vector<LawReport> check_adjunction_laws(const Ops& ops, const LawOptions& opt = {}) {
  std::vector<detail::LawCase> cs;
  for (const auto& i : {ty::e(), ty::g()}) {
    auto more = detail::adjunction_cases(ops, i, opt);
    cs.insert(cs.end(), more.begin(), more.end());
  }
  return detail::run_cases(*ops.evaluator(), cs, opt);
}

inline std::vector<LawReport> check_equivalences(const Ops& ops, const LawOptions& opt = {}) {
  std::vector<detail::LawCase> cs;
  for (const auto& f : default_law_effects()) {
    if (!is_applicative(f)) continue;
    auto more = detail::coherence_cases(ops, f, opt);
    cs.insert(cs.end(), more.begin(), more.end());
  }
  auto more = detail::derived_bind_cases(ops, opt);
  cs.insert(cs.end(), more.begin(), more.end());
  return detail::run_cases(*ops.evaluator(), cs, opt);
}

// The whole suite. Cases for all effects run together so the thread pool stays busy.
inline std::vector<LawReport> check_all_laws(const Ops& ops, const LawOptions& opt = {},
                                             const std::vector<Eff>& effs = default_law_effects()) {
  std::vector<detail::LawCase> cs;
  std::vector<LawReport> skipped;
  auto add = [&](std::vector<detail::LawCase> more) { cs.insert(cs.end(), more.begin(), more.end()); };
  for (const auto& f : effs) {
    add(detail::functor_cases(ops, f, opt));
    if (is_applicative(f)) {
      add(detail::applicative_cases(ops, f, opt));
      add(detail::monad_cases(ops, f, opt));
    } else {
      skipped.push_back(detail::not_applicable("applicative", f, detail::non_applicative_reason(f)));
      skipped.push_back(detail::not_applicable("monad", f, detail::non_applicative_reason(f)));
    }
  }
  auto reports = detail::run_cases(*ops.evaluator(), cs, opt);
  reports.insert(reports.end(), skipped.begin(), skipped.end());
  return reports;
}

}  // namespace effects
