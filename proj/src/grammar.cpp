#include "fim/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

namespace fim {

GrammarError::GrammarError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::size_t Grammar::RuleHash::operator()(const Rule& r) const noexcept {
  std::size_t h = std::hash<SymId>{}(r.lhs) * 0x9e3779b97f4a7c15ULL;
  for (SymId s : r.rhs) h = (h ^ static_cast<std::size_t>(s + 1)) * 0x100000001b3ULL;
  return h;
}

SymId Grammar::add_symbol(std::string_view name, bool terminal) {
  auto it = by_name_.find(std::string(name));
  if (it != by_name_.end()) return it->second;
  SymId id = static_cast<SymId>(names_.size());
  names_.emplace_back(name);
  terminal_.push_back(terminal ? 1 : 0);
  by_name_.emplace(std::string(name), id);
  return id;
}

SymId Grammar::add_fresh_nonterminal(std::string_view base) {
  std::string n(base);
  while (by_name_.count(n)) n += '\'';
  return add_symbol(n, false);
}

SymId Grammar::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? kNoSym : it->second;
}

bool Grammar::add_rule(SymId lhs, SymbolString rhs) {
  Rule r{lhs, std::move(rhs)};
  if (rule_set_.count(r)) return false;
  if (by_lhs_.size() <= static_cast<std::size_t>(lhs)) by_lhs_.resize(static_cast<std::size_t>(lhs) + 1);
  by_lhs_[static_cast<std::size_t>(lhs)].push_back(static_cast<std::uint32_t>(rules_.size()));
  rule_set_.insert(r);
  rules_.push_back(std::move(r));
  return true;
}

const std::vector<std::uint32_t>& Grammar::rules_for(SymId lhs) const {
  static const std::vector<std::uint32_t> kNone;
  if (lhs < 0 || static_cast<std::size_t>(lhs) >= by_lhs_.size()) return kNone;
  return by_lhs_[static_cast<std::size_t>(lhs)];
}

std::vector<SymId> Grammar::nonterminals() const {
  std::vector<SymId> out;
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!terminal_[i]) out.push_back(static_cast<SymId>(i));
  return out;
}

std::vector<SymId> Grammar::terminals() const {
  std::vector<SymId> out;
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (terminal_[i]) out.push_back(static_cast<SymId>(i));
  return out;
}

Grammar Grammar::empty_copy() const {
  Grammar g;
  g.names_ = names_;
  g.terminal_ = terminal_;
  g.by_name_ = by_name_;
  g.start_ = start_;
  return g;
}

namespace {

struct Tok {
  std::string text;
  int line;
};

bool is_punct(char c) { return c == ':' || c == ';' || c == '|'; }

std::vector<Tok> tokenize(std::string_view text) {
  std::vector<Tok> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
      ++i;
    } else if (is_punct(c)) {
      out.push_back({std::string(1, c), line});
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !is_punct(text[j]) && text[j] != '#' &&
             !std::isspace(static_cast<unsigned char>(text[j])))
        ++j;
      out.push_back({std::string(text.substr(i, j - i)), line});
      i = j;
    }
  }
  return out;
}

}  // namespace

Grammar load_grammar(std::string_view text, const std::set<std::string>* known_terminals) {
  struct RawRule {
    std::string lhs;
    std::vector<std::string> rhs;
    int line;
  };
  std::vector<Tok> toks = tokenize(text);
  std::vector<RawRule> raw;
  std::string start_name;
  int start_line = 0;
  std::size_t i = 0;
  auto punct = [](const Tok& t) { return t.text.size() == 1 && is_punct(t.text[0]); };
  while (i < toks.size()) {
    const Tok& head = toks[i];
    if (head.text == "%start") {
      if (!start_name.empty()) throw GrammarError(head.line, "duplicate start declaration");
      if (i + 2 >= toks.size() || punct(toks[i + 1]) || toks[i + 2].text != ";")
        throw GrammarError(head.line, "expected `%start NAME ;`");
      start_name = toks[i + 1].text;
      start_line = head.line;
      i += 3;
      continue;
    }
    if (punct(head)) throw GrammarError(head.line, "expected rule name, found `" + head.text + "`");
    if (i + 1 >= toks.size() || toks[i + 1].text != ":")
      throw GrammarError(head.line, "expected `:` after `" + head.text + "`");
    i += 2;
    std::vector<std::string> alt;
    bool closed = false;
    while (i < toks.size()) {
      const Tok& t = toks[i++];
      if (t.text == ";") {
        raw.push_back({head.text, alt, head.line});
        closed = true;
        break;
      }
      if (t.text == "|") {
        raw.push_back({head.text, alt, head.line});
        alt.clear();
      } else if (t.text == ":") {
        throw GrammarError(t.line, "unexpected `:` (missing `;`?)");
      } else {
        alt.push_back(t.text);
      }
    }
    if (!closed) throw GrammarError(head.line, "rule `" + head.text + "` not terminated by `;`");
  }
  if (raw.empty()) throw GrammarError(1, "grammar has no rules");

  std::set<std::string> lhs_names;
  for (const auto& r : raw) lhs_names.insert(r.lhs);
  if (!start_name.empty() && !lhs_names.count(start_name))
    throw GrammarError(start_line, "start symbol `" + start_name + "` has no rules");

  Grammar g;
  // Deterministic ids: lhs symbols in order of first appearance, then terminals.
  for (const auto& r : raw) g.add_symbol(r.lhs, false);
  for (const auto& r : raw) {
    for (const auto& s : r.rhs) {
      if (lhs_names.count(s)) continue;
      if (known_terminals && !known_terminals->count(s))
        throw GrammarError(r.line, "undefined symbol `" + s + "`");
      g.add_symbol(s, true);
    }
  }
  for (const auto& r : raw) {
    SymbolString rhs;
    for (const auto& s : r.rhs) rhs.push_back(g.find(s));
    g.add_rule(g.find(r.lhs), std::move(rhs));
  }
  g.set_start(g.find(start_name.empty() ? raw.front().lhs : start_name));
  return g;
}

namespace {

std::vector<char> inhabited_flags(const Grammar& g) {
  std::vector<char> ok(g.symbol_count(), 0);
  for (std::size_t s = 0; s < ok.size(); ++s) ok[s] = g.is_terminal(static_cast<SymId>(s));
  // Worklist fixpoint: count unresolved rhs symbols per rule.
  const auto& rules = g.rules();
  std::vector<std::size_t> missing(rules.size(), 0);
  std::vector<std::vector<std::uint32_t>> uses(g.symbol_count());
  std::deque<SymId> work;
  for (std::uint32_t r = 0; r < rules.size(); ++r) {
    for (SymId s : rules[r].rhs) {
      if (!ok[static_cast<std::size_t>(s)]) {
        ++missing[r];
        uses[static_cast<std::size_t>(s)].push_back(r);
      }
    }
    if (missing[r] == 0 && !ok[static_cast<std::size_t>(rules[r].lhs)]) {
      ok[static_cast<std::size_t>(rules[r].lhs)] = 1;
      work.push_back(rules[r].lhs);
    }
  }
  while (!work.empty()) {
    SymId s = work.front();
    work.pop_front();
    for (std::uint32_t r : uses[static_cast<std::size_t>(s)]) {
      if (--missing[r] == 0 && !ok[static_cast<std::size_t>(rules[r].lhs)]) {
        ok[static_cast<std::size_t>(rules[r].lhs)] = 1;
        work.push_back(rules[r].lhs);
      }
    }
  }
  return ok;
}

}  // namespace

std::set<SymId> check_inhabited(const Grammar& g) {
  std::vector<char> ok = inhabited_flags(g);
  std::set<SymId> bad;
  for (std::size_t s = 0; s < ok.size(); ++s)
    if (!ok[s]) bad.insert(static_cast<SymId>(s));
  return bad;
}

std::vector<char> nullable_set(const Grammar& g) {
  std::vector<char> null(g.symbol_count(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules()) {
      if (null[static_cast<std::size_t>(r.lhs)]) continue;
      bool all = std::all_of(r.rhs.begin(), r.rhs.end(),
                             [&](SymId s) { return null[static_cast<std::size_t>(s)] != 0; });
      if (all) {
        null[static_cast<std::size_t>(r.lhs)] = 1;
        changed = true;
      }
    }
  }
  return null;
}

Grammar reverse_grammar(const Grammar& g) {
  Grammar out = g.empty_copy();
  for (const Rule& r : g.rules()) out.add_rule(r.lhs, SymbolString(r.rhs.rbegin(), r.rhs.rend()));
  return out;
}

Grammar constrain_last_symbol(const Grammar& g, const std::set<SymId>& sigma_end) {
  Grammar out = g.empty_copy();
  std::vector<SymId> star(g.symbol_count(), kNoSym);
  for (SymId v : g.nonterminals()) star[static_cast<std::size_t>(v)] = out.add_fresh_nonterminal(g.name(v) + "*");
  for (const Rule& r : g.rules()) out.add_rule(r.lhs, r.rhs);
  // A symbol can end the string whenever everything after it is nullable; the
  // nullable tail is then dropped from the starred rule.
  const std::vector<char> nullable = nullable_set(g);
  for (const Rule& r : g.rules()) {
    for (std::size_t k = r.rhs.size(); k-- > 0;) {
      SymId last = r.rhs[k];
      SymbolString rhs(r.rhs.begin(), r.rhs.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      if (g.is_terminal(last)) {
        if (sigma_end.count(last)) out.add_rule(star[static_cast<std::size_t>(r.lhs)], std::move(rhs));
        break;
      }
      rhs.back() = star[static_cast<std::size_t>(last)];
      out.add_rule(star[static_cast<std::size_t>(r.lhs)], std::move(rhs));
      if (!nullable[static_cast<std::size_t>(last)]) break;
    }
  }
  out.set_start(star[static_cast<std::size_t>(g.start())]);
  return out;
}

Grammar prune_grammar(const Grammar& g) {
  std::vector<char> ok = inhabited_flags(g);
  std::vector<char> reach(g.symbol_count(), 0);
  std::vector<SymId> stack{g.start()};
  reach[static_cast<std::size_t>(g.start())] = 1;
  std::vector<char> keep(g.rules().size(), 0);
  while (!stack.empty()) {
    SymId s = stack.back();
    stack.pop_back();
    for (std::uint32_t ri : g.rules_for(s)) {
      const Rule& r = g.rules()[ri];
      bool good = std::all_of(r.rhs.begin(), r.rhs.end(),
                              [&](SymId x) { return ok[static_cast<std::size_t>(x)] != 0; });
      if (!good) continue;
      keep[ri] = 1;
      for (SymId x : r.rhs) {
        if (!reach[static_cast<std::size_t>(x)]) {
          reach[static_cast<std::size_t>(x)] = 1;
          stack.push_back(x);
        }
      }
    }
  }
  Grammar out = g.empty_copy();
  for (std::size_t i = 0; i < g.rules().size(); ++i)
    if (keep[i]) out.add_rule(g.rules()[i].lhs, g.rules()[i].rhs);
  return out;
}

std::string render(const Grammar& g, const SymbolString& s) {
  std::string out;
  for (SymId x : s) {
    if (!out.empty()) out += ' ';
    out += g.name(x);
  }
  return out;
}

std::string dump_grammar(const Grammar& g) {
  // Start symbol first, then lhs symbols in order of first rule.
  std::vector<SymId> order;
  std::vector<char> seen(g.symbol_count(), 0);
  if (g.start() != kNoSym) {
    order.push_back(g.start());
    seen[static_cast<std::size_t>(g.start())] = 1;
  }
  for (const Rule& r : g.rules()) {
    if (!seen[static_cast<std::size_t>(r.lhs)]) {
      seen[static_cast<std::size_t>(r.lhs)] = 1;
      order.push_back(r.lhs);
    }
  }
  std::ostringstream os;
  for (SymId lhs : order) {
    const auto& rs = g.rules_for(lhs);
    if (rs.empty()) continue;
    os << g.name(lhs) << " :";
    bool first = true;
    for (std::uint32_t ri : rs) {
      const Rule& r = g.rules()[ri];
      if (!first) os << "\n    |";
      first = false;
      if (r.rhs.empty()) os << "  # empty";
      else os << ' ' << render(g, r.rhs);
    }
    os << "\n    ;\n";
  }
  return os.str();
}

}  // namespace fim
