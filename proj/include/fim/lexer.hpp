#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fim/nfa.hpp"

namespace fim {

using LexemeId = int;
inline constexpr int kMaxLexemes = 256;
using LexemeMask = std::bitset<kMaxLexemes>;

enum class LexMode { LeftmostLongest, PythonRule };

struct LexemeSpec {
  std::string name;
  int precedence = 0;  // higher wins ties
  std::string pattern;
  bool ignored = false;
  std::string follow;  // required follower lexeme, empty for none
};

// Parsed lexeme file: specs plus optional directives.
struct LexemeFile {
  std::vector<LexemeSpec> specs;
  LexMode mode = LexMode::LeftmostLongest;
  bool has_indent = false;
  std::string newline, indent, dedent;
  std::vector<std::pair<std::string, std::string>> brackets;  // open, close
};

class LexemeError : public std::runtime_error {
 public:
  LexemeError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// `NAME <precedence> /regex/ [ignore] [follow=NAME]`, `#` comments, and
// `%mode python|longest`, `%indent newline=A indent=B dedent=C`,
// `%brackets OPEN CLOSE ...` directives.
LexemeFile parse_lexeme_file(std::string_view text);

// Set of NFA states over all lexemes, numbered globally.
using StateSet = std::vector<std::uint64_t>;

class LexemeSet {
 public:
  int size() const { return static_cast<int>(specs_.size()); }
  const LexemeSpec& spec(LexemeId g) const { return specs_[static_cast<std::size_t>(g)]; }
  const std::string& name(LexemeId g) const { return specs_[static_cast<std::size_t>(g)].name; }
  bool ignored(LexemeId g) const { return specs_[static_cast<std::size_t>(g)].ignored; }
  LexemeId follow(LexemeId g) const { return follow_[static_cast<std::size_t>(g)]; }
  LexemeId find(std::string_view name) const;
  const Nfa& automaton(LexemeId g) const { return nfas_[static_cast<std::size_t>(g)]; }
  const LexemeMask& ignored_mask() const { return ignored_mask_; }
  const LexemeMask& all_mask() const { return all_mask_; }

  int total_states() const { return static_cast<int>(owner_.size()); }
  int offset(LexemeId g) const { return offset_[static_cast<std::size_t>(g)]; }
  LexemeId owner(int state) const { return owner_[static_cast<std::size_t>(state)]; }
  bool is_final(int state) const { return finals_[static_cast<std::size_t>(state)] != 0; }

  StateSet empty_set() const { return StateSet(words_, 0); }
  const StateSet& start_set() const { return start_; }
  StateSet step(const StateSet& s, unsigned char c) const;
  StateSet step_back(const StateSet& s, unsigned char c) const;
  // States with at least one incoming edge.
  const StateSet& successor_states() const { return successors_; }

  LexemeMask pos(const StateSet& s) const;
  LexemeMask fin(const StateSet& s) const;
  // Highest-precedence lexeme in the mask, -1 when empty.
  LexemeId highest(const LexemeMask& m) const;
  StateSet restrict(const StateSet& s, const LexemeMask& m) const;

  // States of one lexeme as local NFA ids.
  std::vector<int> local_states(const StateSet& s, LexemeId g) const;

  const StateSet& final_set() const { return final_set_; }

  std::uint64_t steps_taken() const { return steps_; }

  // Frontiers reachable from the start set by non-empty strings. `complete`
  // is false when the exploration hit its cap.
  struct JointStates {
    std::vector<StateSet> sets;
    bool complete = true;
  };
  const JointStates& joint_states() const;

 private:
  friend LexemeSet compile_lexemes(const std::vector<LexemeSpec>& specs);

  struct Edges {
    std::vector<std::array<std::uint32_t, 257>> index;  // per state, byte -> range start
    std::vector<int> target;
  };
  static Edges build_edges(int n, const std::vector<std::vector<std::pair<int, int>>>& out);
  StateSet step_uncounted(const StateSet& s, unsigned char c) const;

  struct JointCache {
    std::once_flag once;
    JointStates value;
  };

  std::vector<LexemeSpec> specs_;
  std::vector<LexemeId> follow_;
  std::vector<Nfa> nfas_;
  std::vector<int> offset_;
  std::vector<LexemeId> owner_;
  std::vector<char> finals_;
  std::vector<LexemeId> by_precedence_;  // descending
  Edges fwd_, back_;
  std::size_t words_ = 0;
  StateSet start_, successors_, final_set_;
  LexemeMask ignored_mask_, all_mask_;
  mutable std::uint64_t steps_ = 0;
  std::shared_ptr<JointCache> joint_ = std::make_shared<JointCache>();
};

// Errors: epsilon-accepting pattern, duplicate precedence, duplicate name,
// unknown follow lexeme, bad regex.
LexemeSet compile_lexemes(const std::vector<LexemeSpec>& specs);

namespace sets {
bool any(const StateSet& s);
bool test(const StateSet& s, int i);
void set(StateSet& s, int i);
StateSet intersect(const StateSet& a, const StateSet& b);
StateSet unite(const StateSet& a, const StateSet& b);
StateSet minus(const StateSet& a, const StateSet& b);
std::vector<int> members(const StateSet& s);
}  // namespace sets

struct Lexed {
  LexemeId lexeme;
  std::size_t start;
  std::size_t length;
  bool operator==(const Lexed&) const = default;
};

struct LexResult {
  bool ok = true;
  std::size_t error_at = 0;
  std::vector<Lexed> symbols;
};

// Whole-string lexing; ignored lexemes are included in the output.
LexResult batch_lex(const LexemeSet& ls, std::string_view text, LexMode mode);
std::vector<LexemeId> non_ignored(const LexemeSet& ls, const std::vector<Lexed>& syms);

// Consumer of lexed symbols. Nodes are immutable and shared between branches.
class Feed {
 public:
  virtual ~Feed() = default;
  // Non-ignored lexemes the consumer can take next.
  virtual const LexemeMask& accepts() const = 0;
  // nullptr when the symbol is rejected. Ignored lexemes are pushed too.
  virtual std::shared_ptr<const Feed> push(LexemeId g, std::string_view text) const = 0;
  // The input may end here.
  virtual bool complete() const = 0;
};
using FeedPtr = std::shared_ptr<const Feed>;

// Scannable set with ignored lexemes added when their follow requirement is met.
LexemeMask gate(const LexemeSet& ls, const LexemeMask& accepts);
bool emit_gate(const LexemeSet& ls, const LexemeMask& accepts, LexemeId g);

// Simulates a longer-match branch that would kill the current one.
struct Guard {
  StateSet states;
  LexemeMask t;
};

struct LexerBranch {
  StateSet active;  // frontier of the symbol in progress; meaningless when sip is empty
  std::string sip;
  FeedPtr feed;
  LexemeMask t;               // gated scannable lexemes of `feed`
  std::vector<Guard> guards;  // leftmost-longest only
};

LexerBranch start_branch(const LexemeSet& ls, FeedPtr feed);

// Leftmost-longest step: the continuing branch and possibly one emitting branch.
std::vector<LexerBranch> step_leftmost_longest(const LexemeSet& ls, const LexerBranch& b, unsigned char c);

// Python-rule step. `strict_prefix` fails as soon as Pos has no scannable
// lexeme; the default keeps the weaker union test.
std::optional<LexerBranch> step_python_rule(const LexemeSet& ls, const LexerBranch& b, unsigned char c,
                                            bool strict_prefix = false);

// End-of-input membership for a single branch.
bool branch_complete(const LexemeSet& ls, const LexerBranch& b, LexMode mode);

// Feed that accepts everything and records the emitted symbols.
class RecordingFeed : public Feed {
 public:
  explicit RecordingFeed(int lexemes);
  const LexemeMask& accepts() const override { return mask_; }
  FeedPtr push(LexemeId g, std::string_view text) const override;
  bool complete() const override { return true; }
  std::vector<LexemeId> symbols() const;

 private:
  LexemeMask mask_;
  std::shared_ptr<const RecordingFeed> parent_;
  LexemeId last_ = -1;
};

}  // namespace fim
