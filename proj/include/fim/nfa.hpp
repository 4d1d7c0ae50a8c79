#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fim {

// Regular expression tree over integer symbols (bytes for lexemes, grammar
// symbol ids for right-context languages).
struct Regex {
  enum class Kind { Epsilon, Set, Concat, Alt, Repeat };
  Kind kind = Kind::Epsilon;
  std::vector<int> set;  // Set: accepted symbols
  std::vector<Regex> kids;
  int lo = 0;
  int hi = 0;  // Repeat upper bound, -1 = unbounded

  static Regex eps() { return {}; }
  static Regex sym(int s);
  static Regex any_of(std::vector<int> syms);
  static Regex cat(std::vector<Regex> parts);
  static Regex alt(std::vector<Regex> parts);
  static Regex repeat(Regex r, int lo, int hi);
  static Regex star(Regex r) { return repeat(std::move(r), 0, -1); }
  static Regex plus(Regex r) { return repeat(std::move(r), 1, -1); }
  static Regex opt(Regex r) { return repeat(std::move(r), 0, 1); }
};

class RegexError : public std::runtime_error {
 public:
  RegexError(std::size_t pos, const std::string& what);
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

// Literals, escapes (\n \t \f \r \d \w \s \D \W \S and escaped punctuation),
// `.` (any byte but newline), classes, groups, `|`, `?`, `*`, `+`, `{m}`,
// `{m,}`, `{m,n}`. Anchors, backreferences and lookaround are rejected.
Regex parse_regex(std::string_view pattern);

struct Nfa {
  int initial = 0;
  std::vector<std::vector<std::pair<int, int>>> out;  // state -> sorted (symbol, target)
  std::vector<char> final;

  int size() const { return static_cast<int>(out.size()); }
  int add_state();
  void add_edge(int from, int sym, int to);
  void finish();  // sort and dedupe edges

  std::vector<int> step(const std::vector<int>& states, int sym) const;
  bool accepts(const std::vector<int>& word) const;
  std::set<int> alphabet() const;
  std::size_t edge_count() const;
};

// Thompson construction, epsilon elimination (moves land on the epsilon
// closure of their target), then pruning of unreachable and dead states.
Nfa regex_to_nfa(const Regex& r);
Nfa regex_to_nfa(std::string_view pattern);

Nfa single_string_nfa(const std::vector<int>& word);
Nfa reverse_nfa(const Nfa& a);
Nfa prune_nfa(const Nfa& a);

// Brute-force word enumeration up to a length bound (test and debug aid).
std::set<std::vector<int>> nfa_words(const Nfa& a, const std::vector<int>& alphabet, int max_len);

}  // namespace fim
