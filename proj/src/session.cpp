#include "fim/session.hpp"

#include <algorithm>

#include "fim/python3.hpp"

namespace fim {

std::shared_ptr<const Quotient> make_quotient(std::shared_ptr<const Language> lang, std::string_view right) {
  auto q = std::make_shared<Quotient>();
  q->right = std::string(right);
  q->subs = build_quotient(*lang, right, &q->table);
  q->layout = layout_context(*lang);
  q->lang = std::move(lang);
  return q;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, int eos) : tokens_(std::move(tokens)), eos_(eos) {
  trie_.emplace_back();
  for (int id = 0; id < size(); ++id) {
    if (id == eos_) continue;
    int at = 0;
    for (char ch : tokens_[static_cast<std::size_t>(id)]) {
      const auto c = static_cast<unsigned char>(ch);
      auto it = trie_[static_cast<std::size_t>(at)].next.find(c);
      if (it == trie_[static_cast<std::size_t>(at)].next.end()) {
        trie_.emplace_back();
        const int fresh = static_cast<int>(trie_.size()) - 1;
        trie_[static_cast<std::size_t>(at)].next.emplace(c, fresh);
        at = fresh;
      } else {
        at = it->second;
      }
    }
    // Empty non-EOS tokens never advance the session and stay masked out.
    if (at != 0) trie_[static_cast<std::size_t>(at)].ends.push_back(id);
  }
}

Session Session::open(std::shared_ptr<const Quotient> q, std::string_view left, SessionOptions opts) {
  Session s;
  s.opts_ = opts;
  auto branches = std::make_shared<std::vector<Branch>>();
  const LexemeSet& ls = *q->lang->lexemes;
  for (std::size_t i = 0; i < q->subs.size(); ++i)
    branches->push_back({i, start_branch(ls, make_feed(q->lang, q->layout, q->subs[i]))});
  if (branches->size() > opts.max_branches) {
    branches->resize(opts.max_branches);
    s.saturated_ = true;
  }
  s.branches_ = std::move(branches);
  s.q_ = std::move(q);
  Session out = s.advance(left);
  out.generation_.clear();
  return out;
}

Session Session::open(std::shared_ptr<const Language> lang, std::string_view left, std::string_view right,
                      SessionOptions opts) {
  return open(make_quotient(std::move(lang), right), left, opts);
}

void Session::step_into(const Branch& b, unsigned char c, std::vector<Branch>& out) const {
  const LexemeSet& ls = *q_->lang->lexemes;
  if (q_->lang->mode == LexMode::LeftmostLongest) {
    for (auto& x : step_leftmost_longest(ls, b.lexer, c)) out.push_back({b.sub, std::move(x)});
  } else if (auto x = step_python_rule(ls, b.lexer, c, opts_.strict_prefix)) {
    out.push_back({b.sub, std::move(*x)});
  }
}

Session Session::advance(char c) const {
  Session s = *this;
  auto next = std::make_shared<std::vector<Branch>>();
  for (const Branch& b : *branches_) step_into(b, static_cast<unsigned char>(c), *next);
  if (next->size() > opts_.max_branches) {
    next->resize(opts_.max_branches);
    s.saturated_ = true;
  }
  s.branches_ = std::move(next);
  s.generation_.push_back(c);
  return s;
}

Session Session::advance(std::string_view text) const {
  Session s = *this;
  for (char c : text) {
    if (!s.alive()) {
      s.generation_.append(text.substr(s.generation_.size() - generation_.size()));
      break;
    }
    s = s.advance(c);
  }
  return s;
}

bool Session::may_stop() const {
  const LexemeSet& ls = *q_->lang->lexemes;
  for (const Branch& b : *branches_)
    if (membership_in_sublanguage(ls, q_->table, q_->subs[b.sub], b.lexer)) return true;
  return false;
}

std::vector<int> Session::token_mask(const Vocabulary& v) const {
  std::vector<int> out;
  if (!alive()) return out;
  const auto& trie = v.trie();
  // Depth-first over the prefix tree; each node gets its own fork.
  std::vector<std::pair<int, Session>> todo{{0, *this}};
  while (!todo.empty()) {
    auto [node, s] = std::move(todo.back());
    todo.pop_back();
    const auto& n = trie[static_cast<std::size_t>(node)];
    out.insert(out.end(), n.ends.begin(), n.ends.end());
    for (const auto& [c, child] : n.next) {
      Session t = s.advance(static_cast<char>(c));
      if (t.alive()) todo.emplace_back(child, std::move(t));
    }
  }
  if (v.eos() >= 0 && may_stop()) out.push_back(v.eos());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fim
