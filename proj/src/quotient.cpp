#include "fim/quotient.hpp"

#include <deque>
#include <set>
#include <tuple>

namespace fim {

ChartMap nfa_earley(std::shared_ptr<const Grammar> g, const Nfa& r) {
  ChartMap m{g, detail::EarleyCore(g, /*record_methods=*/true, /*local_triggers=*/false), r.initial};
  detail::EarleyCore& core = m.core;
  core.ensure_charts(static_cast<std::size_t>(r.size()));
  if (r.size() == 0 || g->start() == kNoSym) return m;
  core.seed_start(static_cast<std::uint32_t>(r.initial));
  core.run([&](std::uint32_t c, std::uint32_t idx, SymId t) {
    EarleyItem adv = core.chart(c).items[idx];
    ++adv.dot;
    for (int k : r.step({static_cast<int>(c)}, t)) core.add(static_cast<std::uint32_t>(k), adv, Creation{Via::Scanned, {c, idx}, {}});
  });
  return m;
}

bool intersects(const ChartMap& charts, const Nfa& r) {
  const Grammar& g = *charts.grammar;
  for (int q = 0; q < r.size(); ++q) {
    if (!r.final[static_cast<std::size_t>(q)]) continue;
    const Chart& ch = charts.chart(q);
    for (std::uint32_t ri : g.rules_for(g.start())) {
      EarleyItem done{ri, static_cast<std::uint32_t>(g.rules()[ri].rhs.size()), static_cast<std::uint32_t>(r.initial)};
      if (ch.index.count(done)) return true;
    }
  }
  return false;
}

Grammar extract_left_quotient(const Grammar& g, const Nfa& r, const ChartMap& charts) {
  Grammar out = g.empty_copy();
  std::map<std::pair<SymId, std::uint32_t>, SymId> fresh;
  auto sub = [&](SymId e, std::uint32_t q) {
    auto [it, added] = fresh.try_emplace({e, q}, kNoSym);
    if (added) it->second = out.add_fresh_nonterminal(g.name(e) + "@" + std::to_string(q));
    return it->second;
  };
  const SymId start = out.add_fresh_nonterminal(g.name(g.start()));
  out.set_start(start);
  for (const Rule& rule : g.rules()) out.add_rule(rule.lhs, rule.rhs);

  std::deque<ItemRef> frontier;
  for (int q = 0; q < r.size(); ++q) {
    if (!r.final[static_cast<std::size_t>(q)]) continue;
    const Chart& ch = charts.chart(q);
    for (std::uint32_t k = 0; k < ch.items.size(); ++k) {
      const EarleyItem& it = ch.items[k];
      const Rule& rule = g.rules()[it.rule];
      SymbolString beta(rule.rhs.begin() + it.dot, rule.rhs.end());
      out.add_rule(sub(rule.lhs, it.origin), std::move(beta));
      frontier.push_back({static_cast<std::uint32_t>(q), k});
    }
  }

  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  while (!frontier.empty()) {
    ItemRef ref = frontier.front();
    frontier.pop_front();
    if (!seen.insert({ref.chart, ref.index}).second) continue;
    const Chart& ch = charts.chart(static_cast<int>(ref.chart));
    for (const Creation& how : ch.methods[ref.index]) {
      switch (how.via) {
        case Via::Scanned:
        case Via::Completed:
          frontier.push_back(how.from);
          break;
        case Via::Predicted: {
          const EarleyItem& parent = charts.chart(static_cast<int>(how.from.chart)).items[how.from.index];
          const Rule& prule = g.rules()[parent.rule];
          SymbolString rhs{sub(prule.rhs[parent.dot], ref.chart)};
          rhs.insert(rhs.end(), prule.rhs.begin() + parent.dot + 1, prule.rhs.end());
          out.add_rule(sub(prule.lhs, parent.origin), std::move(rhs));
          frontier.push_back(how.from);
          break;
        }
        case Via::Initialized:
          out.add_rule(start, {sub(g.start(), ref.chart)});
          break;
      }
    }
  }
  return out;
}

Grammar left_quotient(std::shared_ptr<const Grammar> g, const Nfa& r) {
  ChartMap charts = nfa_earley(g, r);
  return prune_grammar(extract_left_quotient(*g, r, charts));
}

Grammar right_quotient(const Grammar& g, const Nfa& r) {
  auto rg = std::make_shared<const Grammar>(reverse_grammar(g));
  return prune_grammar(reverse_grammar(left_quotient(rg, reverse_nfa(r))));
}

}  // namespace fim
