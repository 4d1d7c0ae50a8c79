#include "fim/earley.hpp"

#include <algorithm>

namespace fim {
namespace detail {

EarleyCore::EarleyCore(std::shared_ptr<const Grammar> g, bool record_methods, bool local_triggers)
    : g_(std::move(g)), record_(record_methods), local_triggers_(local_triggers) {}

std::uint32_t EarleyCore::add_chart() {
  charts_.emplace_back();
  return static_cast<std::uint32_t>(charts_.size() - 1);
}

void EarleyCore::ensure_charts(std::size_t n) {
  if (charts_.size() < n) charts_.resize(n);
}

void EarleyCore::truncate(std::size_t n) {
  if (charts_.size() > n) charts_.resize(n);
}

bool EarleyCore::is_complete(const EarleyItem& it) const {
  return it.dot >= g_->rules()[it.rule].rhs.size();
}

SymId EarleyCore::next_symbol(const EarleyItem& it) const {
  const auto& rhs = g_->rules()[it.rule].rhs;
  return it.dot < rhs.size() ? rhs[it.dot] : kNoSym;
}

void EarleyCore::add(std::uint32_t c, const EarleyItem& it, const Creation& how) {
  Chart& ch = charts_[c];
  auto [pos, fresh] = ch.index.try_emplace(it, static_cast<std::uint32_t>(ch.items.size()));
  if (fresh) {
    ch.items.push_back(it);
    if (record_) ch.methods.push_back({how});
    work_.push_back({c, pos->second});
    return;
  }
  if (record_) {
    auto& ms = ch.methods[pos->second];
    if (std::find(ms.begin(), ms.end(), how) == ms.end()) ms.push_back(how);
  }
}

void EarleyCore::seed_start(std::uint32_t c) {
  for (std::uint32_t r : g_->rules_for(g_->start()))
    add(c, EarleyItem{r, 0, c}, Creation{Via::Initialized, {}, {}});
}

void EarleyCore::run(const ScanHook& hook) {
  std::size_t head = 0;
  while (head < work_.size()) {
    ItemRef ref = work_[head++];
    process(ref.chart, ref.index, hook);
  }
  work_.clear();
}

void EarleyCore::process(std::uint32_t c, std::uint32_t idx, const ScanHook& hook) {
  const EarleyItem it = charts_[c].items[idx];
  const Rule& rule = g_->rules()[it.rule];
  if (it.dot >= rule.rhs.size()) {
    const SymId a = rule.lhs;
    const std::uint32_t i = it.origin;
    if (!local_triggers_ || i == c) {
      auto& trig = charts_[i].done[a];
      bool have = std::any_of(trig.begin(), trig.end(), [&](const auto& p) { return p.first == c; });
      if (!have) trig.emplace_back(c, idx);
    }
    auto w = charts_[i].waiting.find(a);
    if (w == charts_[i].waiting.end()) return;
    const std::vector<std::uint32_t> completables = w->second;
    for (std::uint32_t k : completables) {
      EarleyItem adv = charts_[i].items[k];
      ++adv.dot;
      add(c, adv, Creation{Via::Completed, {i, k}, {c, idx}});
    }
    return;
  }
  const SymId x = rule.rhs[it.dot];
  Chart& ch = charts_[c];
  if (g_->is_terminal(x)) {
    ch.scan[x].push_back(idx);
    if (hook) hook(c, idx, x);
    return;
  }
  auto& wl = ch.waiting[x];
  const bool first_wait = wl.empty();
  wl.push_back(idx);
  if (first_wait || record_) {
    for (std::uint32_t r : g_->rules_for(x)) add(c, EarleyItem{r, 0, c}, Creation{Via::Predicted, {c, idx}, {}});
  }
  auto d = charts_[c].done.find(x);
  if (d == charts_[c].done.end()) return;
  const auto triggers = d->second;
  for (const auto& [k, comp] : triggers) {
    EarleyItem adv = it;
    ++adv.dot;
    add(k, adv, Creation{Via::Completed, {c, idx}, {k, comp}});
  }
}

}  // namespace detail

ChartCollection::ChartCollection(std::shared_ptr<const Grammar> g, bool record_methods)
    : core_(std::move(g), record_methods, /*local_triggers=*/true) {
  std::uint32_t c0 = core_.add_chart();
  core_.seed_start(c0);
  core_.run();
}

std::uint32_t ChartCollection::scan_into_new_chart(std::uint32_t from, SymId terminal) {
  std::uint32_t m = core_.add_chart();
  ++appends_;
  const Chart& src = core_.chart(from);
  auto it = src.scan.find(terminal);
  if (it != src.scan.end()) {
    const std::vector<std::uint32_t> sources = it->second;
    for (std::uint32_t k : sources) {
      EarleyItem adv = core_.chart(from).items[k];
      ++adv.dot;
      core_.add(m, adv, Creation{Via::Scanned, {from, k}, {}});
    }
    core_.run();
  }
  return m;
}

void ChartCollection::rollback(std::size_t mark) {
  if (mark < 1) mark = 1;
  core_.truncate(mark);
}

ParseState init_state(std::shared_ptr<const Grammar> g, bool record_methods) {
  return ParseState{std::make_shared<ChartCollection>(std::move(g), record_methods), 0};
}

ParseState accumulate(const ParseState& s, SymId terminal) {
  std::uint32_t m = s.collection->scan_into_new_chart(s.tip, terminal);
  return ParseState{s.collection, m};
}

bool is_incrementally_parsable(const ParseState& s) { return !s.collection->chart(s.tip).items.empty(); }

bool is_member(const ParseState& s) {
  const Grammar& g = s.collection->grammar();
  const Chart& ch = s.collection->chart(s.tip);
  for (std::uint32_t r : g.rules_for(g.start())) {
    EarleyItem done{r, static_cast<std::uint32_t>(g.rules()[r].rhs.size()), 0};
    if (ch.index.count(done)) return true;
  }
  return false;
}

bool can_scan(const ParseState& s, SymId terminal) {
  const auto& sc = s.collection->chart(s.tip).scan;
  return sc.find(terminal) != sc.end();
}

std::vector<SymId> scannable_terminals(const ParseState& s) {
  std::vector<SymId> out;
  for (const auto& [t, items] : s.collection->chart(s.tip).scan) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

bool recognizes(std::shared_ptr<const Grammar> g, const SymbolString& input) {
  ParseState s = init_state(std::move(g));
  for (SymId t : input) {
    if (!can_scan(s, t)) return false;
    s = accumulate(s, t);
  }
  return is_member(s);
}

}  // namespace fim
