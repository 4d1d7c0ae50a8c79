#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fim/lcfl.hpp"

namespace fim {

// Lexemes and symbol grammar for Python 3 with layout handling.
struct PythonBundle {
  std::shared_ptr<const Language> lang;
  LexemeId continuation = -1;  // backslash-newline, ignored
  LexemeId comment = -1;
};

// Loads `python3.lexemes` and `python3.bnf` from `dir`.
PythonBundle load_python_bundle(const std::string& dir);
PythonBundle make_python_bundle(std::string_view lexemes, std::string_view grammar);
// Directory holding the bundled data files.
std::string default_data_dir();

// Hypothesis about the left context's bracket depth while reading the right
// context. Unnested branches know the depth exactly; nested ones only know
// it is at least `initial_level` and keep the current depth >= 1.
struct ParenBranch {
  enum class Kind { Nested, Unnested };
  Kind kind = Kind::Unnested;
  int initial_level = 0;
  int offset = 0;                 // opens minus closes so far
  std::vector<bool> significant;  // per newline lexeme seen
  int current() const { return initial_level + offset; }
};

// A surviving branch: the left depth it needs and which newlines count.
struct ParenOutcome {
  int initial_level = 0;
  std::vector<bool> significant;
};

std::vector<ParenOutcome> analyze_right_context_parens(const LexemeSet& ls, const Layout& layout,
                                                       const std::vector<Lexed>& lexed);

inline bool membership_paren_check(const ParenOutcome& outcome, int left_depth) {
  return outcome.initial_level == left_depth;
}

// Sublanguages for a language with layout. Every remainder is treated as
// ending in a newline.
std::vector<Sublanguage> build_layout_sublanguages(const Language& lang, const BoundaryTable& bt,
                                                   std::string_view suffix);

// Boundary analysis plus sublanguages, dispatching on whether the language has layout.
std::vector<Sublanguage> build_quotient(const Language& lang, std::string_view suffix, BoundaryTable* table = nullptr);

std::vector<Sublanguage> build_python_quotient(const PythonBundle& bundle, std::string_view right);

}  // namespace fim
