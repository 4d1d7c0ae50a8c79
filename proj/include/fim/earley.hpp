#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fim/grammar.hpp"

namespace fim {

struct EarleyItem {
  std::uint32_t rule = 0;
  std::uint32_t dot = 0;
  std::uint32_t origin = 0;

  bool operator==(const EarleyItem&) const = default;
  auto operator<=>(const EarleyItem&) const = default;
};

struct EarleyItemHash {
  std::size_t operator()(const EarleyItem& it) const noexcept {
    std::uint64_t h = it.rule;
    h = h * 0x9e3779b97f4a7c15ULL + it.dot;
    h = h * 0x9e3779b97f4a7c15ULL + it.origin;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct ItemRef {
  std::uint32_t chart = 0;
  std::uint32_t index = 0;
  bool operator==(const ItemRef&) const = default;
};

enum class Via : std::uint8_t { Initialized, Scanned, Predicted, Completed };

// How an item came to exist. `from` is the scanned source, the predicting
// parent, or the completable item; `complete` is only set for Completed.
struct Creation {
  Via via = Via::Initialized;
  ItemRef from;
  ItemRef complete;
  bool operator==(const Creation&) const = default;
};

struct Chart {
  std::vector<EarleyItem> items;
  std::vector<std::vector<Creation>> methods;  // parallel to items when recording
  std::unordered_map<EarleyItem, std::uint32_t, EarleyItemHash> index;
  std::unordered_map<SymId, std::vector<std::uint32_t>> waiting;  // nonterminal -> completables
  std::unordered_map<SymId, std::vector<std::uint32_t>> scan;     // terminal -> items before it
  // Completion triggers: complete items [A -> a . (this chart)] landed in these charts.
  std::unordered_map<SymId, std::vector<std::pair<std::uint32_t, std::uint32_t>>> done;
};

namespace detail {

// Shared closure machinery for the incremental recognizer and the
// automaton-driven variant. Chart ids double as item origins.
class EarleyCore {
 public:
  using ScanHook = std::function<void(std::uint32_t chart, std::uint32_t index, SymId terminal)>;

  EarleyCore(std::shared_ptr<const Grammar> g, bool record_methods, bool local_triggers);

  const Grammar& grammar() const { return *g_; }
  std::shared_ptr<const Grammar> grammar_ptr() const { return g_; }

  std::uint32_t add_chart();
  void ensure_charts(std::size_t n);
  std::size_t chart_count() const { return charts_.size(); }
  const Chart& chart(std::uint32_t c) const { return charts_[c]; }

  void add(std::uint32_t chart, const EarleyItem& it, const Creation& how);
  void seed_start(std::uint32_t chart);
  void run(const ScanHook& hook = {});

  bool is_complete(const EarleyItem& it) const;
  SymId next_symbol(const EarleyItem& it) const;  // kNoSym when complete

  void truncate(std::size_t charts);

 private:
  void process(std::uint32_t chart, std::uint32_t index, const ScanHook& hook);

  std::shared_ptr<const Grammar> g_;
  bool record_;
  bool local_triggers_;
  std::vector<Chart> charts_;
  std::vector<ItemRef> work_;
};

}  // namespace detail

// Append-only sequence of Earley charts. States reference charts by index, so
// any number of lineages can share one collection.
class ChartCollection {
 public:
  explicit ChartCollection(std::shared_ptr<const Grammar> g, bool record_methods = false);

  const Grammar& grammar() const { return core_.grammar(); }
  std::size_t size() const { return core_.chart_count(); }
  const Chart& chart(std::uint32_t c) const { return core_.chart(c); }
  std::size_t appends() const { return appends_; }

  std::uint32_t scan_into_new_chart(std::uint32_t from, SymId terminal);

  // Discards charts at index >= mark. Only valid when no live state refers to them.
  void rollback(std::size_t mark);

 private:
  detail::EarleyCore core_;
  std::size_t appends_ = 0;
};

struct ParseState {
  std::shared_ptr<ChartCollection> collection;
  std::uint32_t tip = 0;
};

ParseState init_state(std::shared_ptr<const Grammar> g, bool record_methods = false);
ParseState accumulate(const ParseState& s, SymId terminal);
bool is_incrementally_parsable(const ParseState& s);
bool is_member(const ParseState& s);
bool can_scan(const ParseState& s, SymId terminal);
std::vector<SymId> scannable_terminals(const ParseState& s);

// Convenience: recognize a whole symbol string.
bool recognizes(std::shared_ptr<const Grammar> g, const SymbolString& input);

}  // namespace fim
