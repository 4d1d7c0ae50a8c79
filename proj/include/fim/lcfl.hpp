#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fim/earley.hpp"
#include "fim/grammar.hpp"
#include "fim/indentation.hpp"
#include "fim/lexer.hpp"

namespace fim {

// A context-free grammar over lexeme symbols plus the lexer that feeds it.
struct Language {
  std::shared_ptr<const LexemeSet> lexemes;
  LexMode mode = LexMode::LeftmostLongest;
  std::shared_ptr<const Grammar> grammar;
  std::vector<SymId> terminal;      // per lexeme, kNoSym for ignored or unused lexemes
  std::vector<LexemeId> lexeme_of;  // per grammar symbol, -1 when none
  std::optional<Layout> layout;
};

// Matches lexeme names to grammar terminals. Grammar terminals without a
// lexeme are allowed only for the layout symbols.
Language make_language(LexemeFile lexemes, Grammar grammar);

struct BoundaryTable {
  LexMode mode = LexMode::LeftmostLongest;
  std::string suffix;
  // Per global NFA state: last suffix position where it reaches a final
  // state, and last position where it is still alive; -1 when never.
  std::vector<int> fin_end;
  std::vector<int> alive_end;
  // Boundary index -> (lexeme, states) whose symbol ends there.
  std::map<int, std::vector<std::pair<LexemeId, StateSet>>> entries;
  bool exact = true;  // entries filtered by reachable frontiers
  std::uint64_t steps = 0;

  // All usable boundary indices; 0 is always present.
  std::vector<int> indices() const;
};

BoundaryTable calculate_boundary_points(const LexemeSet& ls, LexMode mode, std::string_view suffix);

struct Boundary {
  int n = 0;
  LexemeId lexeme = -1;
};

// Where the symbol in progress ends inside the suffix, if it can.
std::optional<Boundary> boundary_of(const LexemeSet& ls, const BoundaryTable& bt, const StateSet& frontier);

// No pending longer match extends into the suffix.
bool guards_clear(const BoundaryTable& bt, const std::vector<Guard>& guards);

struct Sublanguage {
  int skip = 0;
  std::vector<std::pair<LexemeId, StateSet>> boundary_states;
  bool ignored_final = false;  // the symbol crossing the boundary is ignored
  std::shared_ptr<const Grammar> grammar;
  std::vector<LexemeId> remainder;
  std::string pattern;  // right-context symbol language, for display
  std::shared_ptr<const LayoutRequirement> layout;
};

// Sublanguages without indentation handling.
std::vector<Sublanguage> build_sublanguages(const Language& lang, const BoundaryTable& bt, std::string_view suffix);

// Parser consumer over lexeme ids. Ignored lexemes pass through.
class ParserFeed : public Feed {
 public:
  ParserFeed(std::shared_ptr<const Language> lang, ParseState st);
  const LexemeMask& accepts() const override { return accepts_; }
  FeedPtr push(LexemeId g, std::string_view text) const override;
  bool complete() const override { return is_member(state_); }
  const ParseState& state() const { return state_; }

 private:
  std::shared_ptr<const Language> lang_;
  ParseState state_;
  LexemeMask accepts_;
};

// Fresh feed for a sublanguage.
FeedPtr make_feed(const std::shared_ptr<const Language>& lang, const std::shared_ptr<const LayoutContext>& layout,
                  const Sublanguage& sub);
std::shared_ptr<const LayoutContext> layout_context(const Language& lang);

bool membership_in_sublanguage(const LexemeSet& ls, const BoundaryTable& bt, const Sublanguage& sub,
                               const LexerBranch& branch);

}  // namespace fim
