#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fim/earley.hpp"
#include "fim/grammar.hpp"
#include "fim/lexer.hpp"
#include "fim/nfa.hpp"

namespace fim {

class IndentationError : public std::runtime_error {
 public:
  IndentationError(std::size_t position, const std::string& what);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Left-context indentation: the current line's level and the enclosing levels
// below it. The stack is empty exactly when the level is 0.
struct IndentState {
  int current = 0;
  std::vector<int> stack;
  bool operator==(const IndentState&) const = default;
};

// Moves to `level`. Returns the number of INDENTs (1) or DEDENTs (negative),
// or nullopt when the level matches nothing on the stack.
std::optional<int> shift_level(IndentState& st, int level);

// A lexed symbol; newlines carry the column of the following line.
struct LayoutSymbol {
  SymId sym = kNoSym;
  int spaces_after = -1;  // >= 0 only for newlines
};

// INDENT/DEDENT insertion over a newline-annotated stream.
SymbolString ind_lex(const std::vector<LayoutSymbol>& in, SymId indent, SymId dedent);

// One element of a symbol-level right-context pattern.
struct PatternItem {
  enum class Kind { Sym, Repeat, IndentOrDedents };
  Kind kind = Kind::Sym;
  SymId sym = kNoSym;  // Sym and Repeat
  int lo = 0, hi = 0;  // Repeat bounds, hi = -1 unbounded
};

enum class IndentVariant { Full, IndentOnly, DedentOnly };

struct IndentAbstraction {
  std::vector<PatternItem> pattern;
  std::set<int> expected_prev_levels;
  IndentVariant variant = IndentVariant::Full;
  int first_level = -1;  // level after the first newline; -1 when there is none
};

// Builds the pattern for a right-context stream. `initial_level` is the
// level of the first line when the caller knows it.
IndentAbstraction right_context_to_regular_lang(const std::vector<LayoutSymbol>& in, SymId indent, SymId dedent,
                                                std::optional<int> initial_level = std::nullopt);

// Two variants when the pattern holds `(INDENT | DEDENT*)`, else the input.
std::vector<IndentAbstraction> split_id(const IndentAbstraction& abs, SymId indent, SymId dedent);

bool check_indent_constraints(const IndentAbstraction& abs, const IndentState& ind);

Regex pattern_regex(const std::vector<PatternItem>& pattern, SymId indent, SymId dedent);
std::string pattern_string(const std::vector<PatternItem>& pattern, const Grammar& names, SymId indent, SymId dedent);

// Lexemes and symbols that drive indentation.
struct Layout {
  LexemeId newline = -1;
  SymId nl = kNoSym, indent = kNoSym, dedent = kNoSym;
  LexemeMask open, close;  // bracket lexemes
};

// Width of leading whitespace text; a tab counts 8.
int indent_width(std::string_view text);

struct LayoutStream {
  std::vector<LayoutSymbol> symbols;
  int depth_at_end = 0;
  // Filled when the stream starts at a line start: column of the first
  // content symbol relative to the start of the text, or the level fixed
  // by a newline before it.
  bool content = false;
  bool level_known = false;
  int level = 0;
};

// Turns a lexed stream into layout symbols. Newlines count only at bracket
// depth 0 and only after a line with content; the final newline gets level
// 0. `depth` is the bracket depth before the text. Returns nullopt when the
// depth drops below zero.
std::optional<LayoutStream> to_layout_symbols(const LexemeSet& ls, const Layout& layout, const std::vector<SymId>& terminal,
                                              const std::vector<Lexed>& lexed, std::string_view text, int depth,
                                              bool line_has_content);

// How the left context must end for a right-context pattern to apply.
struct LayoutRequirement {
  enum class Entry { MidLine, LineStart };
  Entry entry = Entry::MidLine;
  int depth = 0;  // left bracket depth
  // LineStart: level of the first right-context line, either fixed or the
  // left's column plus `lead`; `content` is false when no line follows.
  bool content = true;
  bool level_known = false;
  int level = 0;
  int lead = 0;
  IndentAbstraction abs;
};

struct LayoutContext {
  std::shared_ptr<const LexemeSet> lexemes;
  Layout layout;
  std::vector<SymId> terminal;    // per lexeme, kNoSym when not a grammar symbol
  std::vector<LexemeId> lexeme_of;  // per grammar symbol, -1 when none
};

// Parser consumer that inserts NL/INDENT/DEDENT. Newlines after content are
// passed on at once; the indentation of a line is settled by its first
// content symbol. Without a requirement, completion means end of file.
class LayoutFeed : public Feed {
 public:
  LayoutFeed(std::shared_ptr<const LayoutContext> ctx, ParseState parser,
             std::shared_ptr<const LayoutRequirement> req = nullptr);

  const LexemeMask& accepts() const override { return accepts_; }
  FeedPtr push(LexemeId g, std::string_view text) const override;
  bool complete() const override;

  const IndentState& indentation() const { return ind_; }
  int depth() const { return depth_; }
  bool at_line_start() const { return !content_; }
  int column() const { return col_; }
  const ParseState& parser() const { return parser_; }

 private:
  void refresh();
  // Parser and indentation after settling the current line at `level`.
  std::optional<std::pair<ParseState, IndentState>> settle(int level) const;

  std::shared_ptr<const LayoutContext> ctx_;
  std::shared_ptr<const LayoutRequirement> req_;
  ParseState parser_;
  IndentState ind_;
  int depth_ = 0;
  bool content_ = false;
  int col_ = 0;
  std::optional<ParseState> settled_;  // line start at depth 0
  IndentState settled_ind_;
  LexemeMask accepts_;
};

}  // namespace fim
