#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fim/lcfl.hpp"

namespace fim {

// Sublanguages for one right context, shared by every session opened on it.
struct Quotient {
  std::shared_ptr<const Language> lang;
  std::string right;
  BoundaryTable table;
  std::vector<Sublanguage> subs;
  std::shared_ptr<const LayoutContext> layout;
};

std::shared_ptr<const Quotient> make_quotient(std::shared_ptr<const Language> lang, std::string_view right);

// Token id -> text. One id may be reserved for end of sequence.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<std::string> tokens, int eos = -1);
  int size() const { return static_cast<int>(tokens_.size()); }
  int eos() const { return eos_; }
  const std::string& text(int id) const { return tokens_[static_cast<std::size_t>(id)]; }

  // Prefix tree over the token texts; node 0 is the root.
  struct Node {
    std::map<unsigned char, int> next;
    std::vector<int> ends;  // token ids spelled by the path to this node
  };
  const std::vector<Node>& trie() const { return trie_; }

 private:
  std::vector<std::string> tokens_;
  int eos_;
  std::vector<Node> trie_;
};

struct SessionOptions {
  std::size_t max_branches = 64;
  bool strict_prefix = true;  // Python rule: see step_python_rule
};

// Fill-in-the-middle state: live lexer branches over every sublanguage.
// Values are immutable; advancing returns a new session and copies share
// all parser charts.
class Session {
 public:
  static Session open(std::shared_ptr<const Quotient> q, std::string_view left, SessionOptions opts = {});
  static Session open(std::shared_ptr<const Language> lang, std::string_view left, std::string_view right,
                      SessionOptions opts = {});

  bool alive() const { return !branches_->empty(); }
  // Some branch was dropped because the cap was reached.
  bool saturated() const { return saturated_; }
  std::size_t branch_count() const { return branches_->size(); }
  const std::string& generation() const { return generation_; }
  const Quotient& quotient() const { return *q_; }

  Session advance(char c) const;
  Session advance(std::string_view text) const;
  // The middle may end here: left + generation + right is in the language.
  bool may_stop() const;
  // Tokens whose whole text keeps the session alive, plus EOS when it may stop.
  std::vector<int> token_mask(const Vocabulary& v) const;

 private:
  struct Branch {
    std::size_t sub;
    LexerBranch lexer;
  };
  Session() = default;
  void step_into(const Branch& b, unsigned char c, std::vector<Branch>& out) const;

  std::shared_ptr<const Quotient> q_;
  SessionOptions opts_;
  std::shared_ptr<const std::vector<Branch>> branches_;
  std::string generation_;
  bool saturated_ = false;
};

}  // namespace fim
