#pragma once

#include <map>
#include <memory>
#include <utility>

#include "fim/earley.hpp"
#include "fim/grammar.hpp"
#include "fim/nfa.hpp"

namespace fim {

// Earley charts indexed by NFA state; item origins are NFA states too.
struct ChartMap {
  std::shared_ptr<const Grammar> grammar;
  detail::EarleyCore core;
  int initial = 0;

  const Chart& chart(int state) const { return core.chart(static_cast<std::uint32_t>(state)); }
};

ChartMap nfa_earley(std::shared_ptr<const Grammar> g, const Nfa& r);

// Some final-state chart holds a complete start item with origin at the initial state.
bool intersects(const ChartMap& charts, const Nfa& r);

// { w : exists p in L(r), p.w in L(g) }. Fresh nonterminals are named "E@q".
Grammar extract_left_quotient(const Grammar& g, const Nfa& r, const ChartMap& charts);
Grammar left_quotient(std::shared_ptr<const Grammar> g, const Nfa& r);

// { w : exists s in L(r), w.s in L(g) }, by reversing both sides.
Grammar right_quotient(const Grammar& g, const Nfa& r);

}  // namespace fim
