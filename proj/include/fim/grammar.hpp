#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fim {

using SymId = std::int32_t;
inline constexpr SymId kNoSym = -1;

using SymbolString = std::vector<SymId>;

struct Rule {
  SymId lhs = kNoSym;
  SymbolString rhs;

  bool operator==(const Rule&) const = default;
  auto operator<=>(const Rule&) const = default;
};

class GrammarError : public std::runtime_error {
 public:
  GrammarError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Context-free grammar with a dense symbol table shared by terminals and
// nonterminals. Rules are kept as a set: adding a duplicate is a no-op.
class Grammar {
 public:
  SymId add_symbol(std::string_view name, bool terminal);
  // Appends primes until the name is unused.
  SymId add_fresh_nonterminal(std::string_view base);
  SymId find(std::string_view name) const;

  const std::string& name(SymId s) const { return names_[static_cast<std::size_t>(s)]; }
  bool is_terminal(SymId s) const { return terminal_[static_cast<std::size_t>(s)] != 0; }
  std::size_t symbol_count() const { return names_.size(); }

  // Returns false when the rule was already present.
  bool add_rule(SymId lhs, SymbolString rhs);
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<std::uint32_t>& rules_for(SymId lhs) const;

  SymId start() const { return start_; }
  void set_start(SymId s) { start_ = s; }

  std::vector<SymId> nonterminals() const;
  std::vector<SymId> terminals() const;

  // Same symbol table, no rules.
  Grammar empty_copy() const;

 private:
  struct RuleHash {
    std::size_t operator()(const Rule& r) const noexcept;
  };

  std::vector<std::string> names_;
  std::vector<char> terminal_;
  std::unordered_map<std::string, SymId> by_name_;
  std::vector<Rule> rules_;
  std::unordered_set<Rule, RuleHash> rule_set_;
  std::vector<std::vector<std::uint32_t>> by_lhs_;
  SymId start_ = kNoSym;
};

// Text format: `LHS: sym sym ... ;`, `|` separates alternatives, `#` starts a
// comment, the first lhs is the start symbol unless `%start NAME ;` is given.
// Symbols never used as an lhs are terminals. When `known_terminals` is given,
// any non-lhs symbol outside it is an undefined-symbol error.
Grammar load_grammar(std::string_view text,
                     const std::set<std::string>* known_terminals = nullptr);

std::set<SymId> check_inhabited(const Grammar& g);
std::vector<char> nullable_set(const Grammar& g);

Grammar reverse_grammar(const Grammar& g);
Grammar constrain_last_symbol(const Grammar& g, const std::set<SymId>& sigma_end);

// Drops rules that mention uninhabited symbols or are unreachable from start.
Grammar prune_grammar(const Grammar& g);

std::string dump_grammar(const Grammar& g);
std::string render(const Grammar& g, const SymbolString& s);

}  // namespace fim
