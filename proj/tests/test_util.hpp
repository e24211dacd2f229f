#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "effects/combine.hpp"
#include "effects/denote.hpp"
#include "effects/types.hpp"

namespace effects::fixtures {

// Every type of exactly `size` nodes over bases {e,t} and effects {S, M, R[-], C[-]}.
inline std::vector<Ty> types_of_size(std::size_t size) {
  static std::vector<std::vector<Ty>> memo(1);
  while (memo.size() <= size) {
    std::size_t n = memo.size();
    std::vector<Ty> out;
    if (n == 1) {
      out = {ty::e(), ty::t()};
    } else {
      for (std::size_t a = 1; a + 1 < n; ++a)
        for (const auto& x : memo[a])
          for (const auto& y : memo[n - 1 - a]) out.push_back(ty::fn(x, y));
      for (const auto& u : memo[n - 1]) {
        out.push_back(ty::S(u));
        out.push_back(ty::M(u));
      }
      for (std::size_t p = 1; p + 1 < n; ++p)
        for (const auto& x : memo[p])
          for (const auto& u : memo[n - 1 - p]) {
            out.push_back(ty::R(x, u));
            out.push_back(ty::C(x, u));
          }
    }
    memo.push_back(std::move(out));
  }
  return memo[size];
}

// Random type over the whole grammar with at most `budget` nodes.
inline Ty random_type(std::mt19937& rng, std::size_t budget) {
  std::uniform_int_distribution<int> pick(0, 9);
  auto base = [&] {
    static const Ty bases[] = {ty::e(), ty::t(), ty::v(), ty::g()};
    return bases[rng() % 4];
  };
  if (budget <= 1) return base();
  int k = pick(rng);
  if (k < 3) return base();
  if (k < 5) {
    if (budget < 3) return base();
    std::size_t left = 1 + rng() % (budget - 2);
    return ty::fn(random_type(rng, left), random_type(rng, budget - 1 - left));
  }
  static const EffKind kinds[] = {EffKind::S, EffKind::F, EffKind::M, EffKind::R,
                                  EffKind::W, EffKind::C, EffKind::T, EffKind::D};
  EffKind f = kinds[rng() % 8];
  if (!Eff::parameterized(f)) return Ty::comp(ty::eff(f), random_type(rng, budget - 1));
  if (budget < 3) return ty::S(base());
  std::size_t p = 1 + rng() % (budget - 2);
  return Ty::comp(ty::eff(f, random_type(rng, p)), random_type(rng, budget - 1 - p));
}

// A pair that some basic mode combines, with each side wrapped in up to two
// random effects.
inline std::pair<Ty, Ty> random_combinable_pair(std::mt19937& rng) {
  static const std::vector<std::pair<Ty, Ty>> cores = {
      {ty::e(), ty::fn(ty::e(), ty::t())},
      {ty::fn(ty::e(), ty::t()), ty::e()},
      {ty::fn(ty::e(), ty::t()), ty::fn(ty::e(), ty::t())},
      {ty::fn(ty::e(), ty::fn(ty::e(), ty::t())), ty::e()},
      {ty::fn(ty::t(), ty::t()), ty::t()},
      {ty::fn(ty::e(), ty::e()), ty::fn(ty::e(), ty::e())},
  };
  static const std::vector<Eff> effs = {
      ty::eff(EffKind::S),          ty::eff(EffKind::M),          ty::eff(EffKind::F),
      ty::eff(EffKind::R, ty::e()), ty::eff(EffKind::R, ty::g()), ty::eff(EffKind::W, ty::e()),
      ty::eff(EffKind::W, ty::t()), ty::eff(EffKind::C, ty::t()), ty::eff(EffKind::T, ty::g()),
      ty::eff(EffKind::D, ty::g())};
  auto [l, r] = cores[rng() % cores.size()];
  auto wrap = [&](Ty x) {
    for (unsigned n = rng() % 3; n > 0; --n) x = Ty::comp(effs[rng() % effs.size()], x);
    return x;
  };
  return {wrap(l), wrap(r)};
}

// Applies a random licensed mode to random daughter values and checks the
// result inhabits the mode's type. Returns nullopt when the drawn types have
// no combination or a domain is too large to sample; otherwise an empty string
// on success or a description of the failure.
inline std::optional<std::string> soundness_trial(std::mt19937& rng, const Ops& ops, Engine& eng,
                                                  const CombineConfig& cfg = {}) {
  const auto& ev = ops.evaluator();
  auto [l, r] = random_combinable_pair(rng);
  auto rs = eng.combine(l, r, cfg);
  if (rs.empty()) return std::nullopt;
  const auto& pick = rs[rng() % rs.size()];
  try {
    auto ld = ev->domain(l), rd = ev->domain(r);
    if (!ld->enumerable() || !rd->enumerable()) return std::nullopt;
    Value lv = ld->at(rng() % ld->size());
    Value rv = rd->at(rng() % rd->size());
    auto rdom = ev->domain(pick.result);
    Value out = apply_mode(ops, pick.mode, lv, rv, l, r);
    if (rdom->contains(out)) return std::string();
    return print_mode(pick.mode) + " on " + print_type(l) + " and " + print_type(r) + " gave " +
           render(out, ev->model()) + ", not a " + print_type(pick.result);
  } catch (const domain_too_large&) {
    return std::nullopt;
  }
}

}  // namespace effects::fixtures
