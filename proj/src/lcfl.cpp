#include "fim/lcfl.hpp"

#include <algorithm>

#include "fim/quotient.hpp"

namespace fim {

Language make_language(LexemeFile file, Grammar grammar) {
  Language lang;
  auto ls = std::make_shared<LexemeSet>(compile_lexemes(file.specs));
  lang.mode = file.mode;
  lang.terminal.assign(static_cast<std::size_t>(ls->size()), kNoSym);
  lang.lexeme_of.assign(grammar.symbol_count(), -1);
  for (LexemeId g = 0; g < ls->size(); ++g) {
    SymId t = grammar.find(ls->name(g));
    if (t == kNoSym) continue;
    if (!grammar.is_terminal(t)) throw GrammarError(0, "lexeme `" + ls->name(g) + "` is a nonterminal in the grammar");
    if (ls->ignored(g)) {
      // An ignored newline may still drive the layout.
      if (!(file.has_indent && ls->name(g) == file.newline))
        throw GrammarError(0, "ignored lexeme `" + ls->name(g) + "` appears in the grammar");
    }
    lang.terminal[static_cast<std::size_t>(g)] = t;
    lang.lexeme_of[static_cast<std::size_t>(t)] = g;
  }
  if (file.has_indent) {
    Layout lay;
    lay.newline = ls->find(file.newline);
    if (lay.newline < 0) throw GrammarError(0, "no lexeme for newline `" + file.newline + "`");
    auto need = [&](const std::string& name) {
      SymId s = grammar.find(name);
      if (s == kNoSym || !grammar.is_terminal(s)) throw GrammarError(0, "grammar lacks terminal `" + name + "`");
      return s;
    };
    lay.nl = need(file.newline);
    lay.indent = need(file.indent);
    lay.dedent = need(file.dedent);
    for (const auto& [open, close] : file.brackets) {
      LexemeId o = ls->find(open), c = ls->find(close);
      if (o < 0 || c < 0) throw GrammarError(0, "unknown bracket lexeme `" + (o < 0 ? open : close) + "`");
      lay.open.set(static_cast<std::size_t>(o));
      lay.close.set(static_cast<std::size_t>(c));
    }
    lang.layout = lay;
  }
  for (SymId t : grammar.terminals()) {
    if (lang.lexeme_of[static_cast<std::size_t>(t)] >= 0) continue;
    if (lang.layout && (t == lang.layout->indent || t == lang.layout->dedent)) continue;
    throw GrammarError(0, "terminal `" + grammar.name(t) + "` has no lexeme");
  }
  lang.lexemes = std::move(ls);
  lang.grammar = std::make_shared<const Grammar>(std::move(grammar));
  return lang;
}

namespace {

// Labels each state with the last suffix position where it meets `seed`
// (finals, or any live state). Sets are kept per end position and made
// disjoint so that each state keeps only its largest end.
std::vector<int> last_positions(const LexemeSet& ls, std::string_view suffix, const std::vector<StateSet>& states,
                                bool finals_only) {
  const int m = static_cast<int>(suffix.size());
  std::vector<std::pair<int, StateSet>> active;  // descending end
  for (int i = m; i >= 0; --i) {
    if (i < m) {
      StateSet covered = ls.empty_set();
      std::vector<std::pair<int, StateSet>> next;
      for (auto& [end, set] : active) {
        StateSet back = sets::intersect(ls.step_back(set, static_cast<unsigned char>(suffix[static_cast<std::size_t>(i)])),
                                        states[static_cast<std::size_t>(i)]);
        back = sets::minus(back, covered);
        if (!sets::any(back)) continue;
        covered = sets::unite(covered, back);
        next.emplace_back(end, std::move(back));
      }
      active = std::move(next);
    }
    StateSet seed = states[static_cast<std::size_t>(i)];
    if (finals_only) seed = sets::intersect(seed, ls.final_set());
    for (const auto& [end, set] : active) seed = sets::minus(seed, set);
    if (sets::any(seed)) active.emplace_back(i, std::move(seed));
  }
  std::vector<int> out(static_cast<std::size_t>(ls.total_states()), -1);
  for (const auto& [end, set] : active)
    for (int q : sets::members(set)) out[static_cast<std::size_t>(q)] = end;
  return out;
}

int max_over(const std::vector<int>& v, const StateSet& s) {
  int best = -1;
  for (int q : sets::members(s)) best = std::max(best, v[static_cast<std::size_t>(q)]);
  return best;
}

// Boundary index of a frontier and the states whose symbol ends there.
std::optional<std::pair<int, std::vector<int>>> frontier_end(const BoundaryTable& bt, const StateSet& frontier) {
  const std::vector<int> members = sets::members(frontier);
  int n = -1;
  for (int q : members)
    n = std::max(n, bt.mode == LexMode::LeftmostLongest ? bt.fin_end[static_cast<std::size_t>(q)]
                                                        : bt.alive_end[static_cast<std::size_t>(q)]);
  if (n < 0 || (bt.mode == LexMode::LeftmostLongest && n == 0)) return std::nullopt;
  std::vector<int> ending;
  for (int q : members)
    if (bt.fin_end[static_cast<std::size_t>(q)] == n) ending.push_back(q);
  if (ending.empty()) return std::nullopt;
  return std::make_pair(n, std::move(ending));
}

}  // namespace

std::vector<int> BoundaryTable::indices() const {
  std::vector<int> out{0};
  for (const auto& [n, e] : entries)
    if (n > 0) out.push_back(n);
  return out;
}

BoundaryTable calculate_boundary_points(const LexemeSet& ls, LexMode mode, std::string_view suffix) {
  const std::uint64_t before = ls.steps_taken();
  BoundaryTable bt;
  bt.mode = mode;
  bt.suffix = std::string(suffix);
  // States a symbol can be in after starting before the suffix and reading
  // a prefix of it.
  std::vector<StateSet> states{ls.successor_states()};
  for (char c : suffix) states.push_back(ls.step(states.back(), static_cast<unsigned char>(c)));
  bt.fin_end = last_positions(ls, suffix, states, true);
  if (mode == LexMode::PythonRule)
    bt.alive_end = last_positions(ls, suffix, states, false);
  bt.steps = ls.steps_taken() - before;

  std::map<int, std::map<LexemeId, StateSet>> found;
  auto add = [&](int n, int q) {
    auto& s = found[n].try_emplace(ls.owner(q), ls.empty_set()).first->second;
    sets::set(s, q);
  };
  const auto& joint = ls.joint_states();
  bt.exact = joint.complete;
  if (bt.exact) {
    for (const StateSet& j : joint.sets)
      if (auto e = frontier_end(bt, j))
        for (int q : e->second) add(e->first, q);
  } else {
    for (int q : sets::members(states[0])) {
      const int f = bt.fin_end[static_cast<std::size_t>(q)];
      if (mode == LexMode::LeftmostLongest ? f >= 1 : (f >= 0 && f == bt.alive_end[static_cast<std::size_t>(q)]))
        add(f, q);
    }
  }
  for (auto& [n, per] : found)
    for (auto& [g, s] : per) bt.entries[n].emplace_back(g, std::move(s));
  return bt;
}

std::optional<Boundary> boundary_of(const LexemeSet& ls, const BoundaryTable& bt, const StateSet& frontier) {
  auto e = frontier_end(bt, frontier);
  if (!e) return std::nullopt;
  LexemeMask m;
  for (int q : e->second) m.set(static_cast<std::size_t>(ls.owner(q)));
  return Boundary{e->first, ls.highest(m)};
}

bool guards_clear(const BoundaryTable& bt, const std::vector<Guard>& guards) {
  for (const Guard& g : guards)
    if (max_over(bt.fin_end, g.states) >= 1) return false;
  return true;
}

std::vector<Sublanguage> build_sublanguages(const Language& lang, const BoundaryTable& bt, std::string_view suffix) {
  const LexemeSet& ls = *lang.lexemes;
  std::vector<Sublanguage> out;
  for (int n : bt.indices()) {
    auto rem = batch_lex(ls, suffix.substr(static_cast<std::size_t>(n)), lang.mode);
    if (!rem.ok) continue;
    Sublanguage base;
    base.skip = n;
    base.remainder = non_ignored(ls, rem.symbols);
    SymbolString word;
    bool mapped = true;
    for (LexemeId g : base.remainder) {
      SymId t = lang.terminal[static_cast<std::size_t>(g)];
      if (t == kNoSym) mapped = false;
      word.push_back(t);
    }
    if (!mapped) continue;
    Grammar q = right_quotient(*lang.grammar, single_string_nfa(word));
    base.pattern = render(*lang.grammar, word);
    auto keep = [&](Sublanguage sub, Grammar g) {
      g = prune_grammar(g);
      if (g.rules_for(g.start()).empty()) return;
      sub.grammar = std::make_shared<const Grammar>(std::move(g));
      out.push_back(std::move(sub));
    };
    if (n == 0) {
      keep(base, std::move(q));
      continue;
    }
    auto it = bt.entries.find(n);
    if (it == bt.entries.end()) continue;
    base.boundary_states = it->second;
    std::set<SymId> ends;
    bool ignored = false;
    for (const auto& [g, s] : it->second) {
      if (ls.ignored(g))
        ignored = true;
      else if (lang.terminal[static_cast<std::size_t>(g)] != kNoSym)
        ends.insert(lang.terminal[static_cast<std::size_t>(g)]);
    }
    if (!ends.empty()) keep(base, constrain_last_symbol(q, ends));
    if (ignored) {
      base.ignored_final = true;
      keep(base, std::move(q));
    }
  }
  return out;
}

ParserFeed::ParserFeed(std::shared_ptr<const Language> lang, ParseState st)
    : lang_(std::move(lang)), state_(std::move(st)) {
  for (SymId t : scannable_terminals(state_)) {
    if (static_cast<std::size_t>(t) >= lang_->lexeme_of.size()) continue;
    LexemeId g = lang_->lexeme_of[static_cast<std::size_t>(t)];
    if (g >= 0) accepts_.set(static_cast<std::size_t>(g));
  }
}

FeedPtr ParserFeed::push(LexemeId g, std::string_view) const {
  if (lang_->lexemes->ignored(g)) return std::make_shared<ParserFeed>(*this);
  SymId t = lang_->terminal[static_cast<std::size_t>(g)];
  if (t == kNoSym || !can_scan(state_, t)) return nullptr;
  return std::make_shared<ParserFeed>(lang_, accumulate(state_, t));
}

std::shared_ptr<const LayoutContext> layout_context(const Language& lang) {
  if (!lang.layout) return nullptr;
  auto ctx = std::make_shared<LayoutContext>();
  ctx->lexemes = lang.lexemes;
  ctx->layout = *lang.layout;
  ctx->terminal = lang.terminal;
  ctx->lexeme_of = lang.lexeme_of;
  return ctx;
}

FeedPtr make_feed(const std::shared_ptr<const Language>& lang, const std::shared_ptr<const LayoutContext>& layout,
                  const Sublanguage& sub) {
  ParseState st = init_state(sub.grammar);
  if (layout) return std::make_shared<LayoutFeed>(layout, std::move(st), sub.layout);
  return std::make_shared<ParserFeed>(lang, std::move(st));
}

bool membership_in_sublanguage(const LexemeSet& ls, const BoundaryTable& bt, const Sublanguage& sub,
                               const LexerBranch& b) {
  if (bt.mode == LexMode::LeftmostLongest && !guards_clear(bt, b.guards)) return false;
  if (b.sip.empty()) return sub.skip == 0 && b.feed->complete();
  auto bd = boundary_of(ls, bt, b.active);
  if (!bd || bd->n != sub.skip) return false;
  if (sub.skip > 0 && ls.ignored(bd->lexeme) != sub.ignored_final) return false;
  if (!emit_gate(ls, b.feed->accepts(), bd->lexeme)) return false;
  FeedPtr nf = b.feed->push(bd->lexeme, b.sip + bt.suffix.substr(0, static_cast<std::size_t>(bd->n)));
  return nf && nf->complete();
}

}  // namespace fim
