#include "fim/nfa.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace fim {

RegexError::RegexError(std::size_t pos, const std::string& what)
    : std::runtime_error("regex offset " + std::to_string(pos) + ": " + what), pos_(pos) {}

Regex Regex::sym(int s) { return any_of({s}); }

Regex Regex::any_of(std::vector<int> syms) {
  Regex r;
  r.kind = Kind::Set;
  std::sort(syms.begin(), syms.end());
  syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
  r.set = std::move(syms);
  return r;
}

Regex Regex::cat(std::vector<Regex> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  Regex r;
  r.kind = Kind::Concat;
  r.kids = std::move(parts);
  return r;
}

Regex Regex::alt(std::vector<Regex> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  Regex r;
  r.kind = Kind::Alt;
  r.kids = std::move(parts);
  return r;
}

Regex Regex::repeat(Regex inner, int lo, int hi) {
  Regex r;
  r.kind = Kind::Repeat;
  r.kids.push_back(std::move(inner));
  r.lo = lo;
  r.hi = hi;
  return r;
}

namespace {

constexpr int kMaxRepeat = 1000;

class RegexParser {
 public:
  explicit RegexParser(std::string_view p) : p_(p) {}

  Regex parse() {
    Regex r = alternation();
    if (i_ < p_.size()) throw RegexError(i_, "unbalanced `)`");
    return r;
  }

 private:
  Regex alternation() {
    std::vector<Regex> alts{sequence()};
    while (i_ < p_.size() && p_[i_] == '|') {
      ++i_;
      alts.push_back(sequence());
    }
    return Regex::alt(std::move(alts));
  }

  Regex sequence() {
    std::vector<Regex> parts;
    while (i_ < p_.size() && p_[i_] != '|' && p_[i_] != ')') parts.push_back(postfix());
    if (parts.empty()) return Regex::eps();
    return Regex::cat(std::move(parts));
  }

  Regex postfix() {
    Regex r = atom();
    while (i_ < p_.size()) {
      char c = p_[i_];
      if (c == '*') {
        ++i_;
        r = Regex::star(std::move(r));
      } else if (c == '+') {
        ++i_;
        r = Regex::plus(std::move(r));
      } else if (c == '?') {
        ++i_;
        r = Regex::opt(std::move(r));
      } else if (c == '{') {
        std::size_t at = i_++;
        int lo = number(at);
        int hi = lo;
        if (i_ < p_.size() && p_[i_] == ',') {
          ++i_;
          hi = (i_ < p_.size() && p_[i_] == '}') ? -1 : number(at);
        }
        if (i_ >= p_.size() || p_[i_] != '}') throw RegexError(at, "malformed repetition");
        ++i_;
        if (hi != -1 && hi < lo) throw RegexError(at, "repetition bounds out of order");
        if (lo > kMaxRepeat || hi > kMaxRepeat) throw RegexError(at, "repetition bound too large");
        r = Regex::repeat(std::move(r), lo, hi);
      } else {
        break;
      }
    }
    return r;
  }

  int number(std::size_t at) {
    std::size_t start = i_;
    int v = 0;
    while (i_ < p_.size() && std::isdigit(static_cast<unsigned char>(p_[i_]))) {
      v = v * 10 + (p_[i_] - '0');
      if (v > 100000) throw RegexError(at, "repetition bound too large");
      ++i_;
    }
    if (i_ == start) throw RegexError(at, "malformed repetition");
    return v;
  }

  static std::vector<int> range(int a, int b) {
    std::vector<int> v;
    for (int c = a; c <= b; ++c) v.push_back(c);
    return v;
  }

  static std::vector<int> complement(const std::vector<int>& s) {
    std::vector<char> in(256, 0);
    for (int c : s) in[static_cast<std::size_t>(c)] = 1;
    std::vector<int> out;
    for (int c = 0; c < 256; ++c)
      if (!in[static_cast<std::size_t>(c)]) out.push_back(c);
    return out;
  }

  // Returns the class for a backslash escape; single-byte escapes yield one element.
  std::vector<int> escape() {
    if (i_ >= p_.size()) throw RegexError(i_, "trailing backslash");
    char c = p_[i_++];
    switch (c) {
      case 'n': return {'\n'};
      case 't': return {'\t'};
      case 'f': return {'\f'};
      case 'r': return {'\r'};
      case 'v': return {'\v'};
      case '0': return {0};
      case 'd': return range('0', '9');
      case 'D': return complement(range('0', '9'));
      case 's': return {' ', '\t', '\n', '\r', '\f', '\v'};
      case 'S': return complement({' ', '\t', '\n', '\r', '\f', '\v'});
      case 'w':
      case 'W': {
        std::vector<int> w = range('a', 'z');
        for (int x : range('A', 'Z')) w.push_back(x);
        for (int x : range('0', '9')) w.push_back(x);
        w.push_back('_');
        return c == 'w' ? w : complement(w);
      }
      default:
        if (std::isalnum(static_cast<unsigned char>(c)))
          throw RegexError(i_ - 1, std::string("unsupported escape \\") + c);
        return {static_cast<unsigned char>(c)};
    }
  }

  Regex char_class() {
    std::size_t at = i_ - 1;
    bool negate = false;
    if (i_ < p_.size() && p_[i_] == '^') {
      negate = true;
      ++i_;
    }
    std::vector<int> set;
    bool first = true;
    while (true) {
      if (i_ >= p_.size()) throw RegexError(at, "unterminated character class");
      char c = p_[i_];
      if (c == ']' && !first) {
        ++i_;
        break;
      }
      first = false;
      std::vector<int> lo_set;
      ++i_;
      if (c == '\\') lo_set = escape();
      else lo_set = {static_cast<unsigned char>(c)};
      if (lo_set.size() == 1 && i_ + 1 < p_.size() && p_[i_] == '-' && p_[i_ + 1] != ']') {
        ++i_;
        char d = p_[i_++];
        std::vector<int> hi_set;
        if (d == '\\') hi_set = escape();
        else hi_set = {static_cast<unsigned char>(d)};
        if (hi_set.size() != 1 || hi_set[0] < lo_set[0]) throw RegexError(at, "bad class range");
        for (int x : range(lo_set[0], hi_set[0])) set.push_back(x);
      } else {
        set.insert(set.end(), lo_set.begin(), lo_set.end());
      }
    }
    if (negate) {
      std::sort(set.begin(), set.end());
      set = complement(set);
    }
    return Regex::any_of(std::move(set));
  }

  Regex atom() {
    std::size_t at = i_;
    char c = p_[i_++];
    switch (c) {
      case '(': {
        if (i_ < p_.size() && p_[i_] == '?') {
          if (i_ + 1 < p_.size() && p_[i_ + 1] == ':') i_ += 2;
          else throw RegexError(at, "unsupported group construct");
        }
        Regex r = alternation();
        if (i_ >= p_.size() || p_[i_] != ')') throw RegexError(at, "unbalanced `(`");
        ++i_;
        return r;
      }
      case '[': return char_class();
      case '.': {
        std::vector<int> all;
        for (int x = 0; x < 256; ++x)
          if (x != '\n') all.push_back(x);
        return Regex::any_of(std::move(all));
      }
      case '\\': return Regex::any_of(escape());
      case '*':
      case '+':
      case '?':
      case '{': throw RegexError(at, "repetition without operand");
      case '^':
      case '$': throw RegexError(at, "anchors are not supported");
      default: return Regex::sym(static_cast<unsigned char>(c));
    }
  }

  std::string_view p_;
  std::size_t i_ = 0;
};

// Epsilon NFA used only during construction.
struct EpsNfa {
  std::vector<std::vector<std::pair<int, int>>> out;  // symbol -1 = epsilon
  int add() {
    out.emplace_back();
    return static_cast<int>(out.size() - 1);
  }
  void edge(int a, int sym, int b) { out[static_cast<std::size_t>(a)].emplace_back(sym, b); }
};

std::pair<int, int> build(EpsNfa& e, const Regex& r) {
  using K = Regex::Kind;
  switch (r.kind) {
    case K::Epsilon: {
      int a = e.add();
      int b = e.add();
      e.edge(a, -1, b);
      return {a, b};
    }
    case K::Set: {
      int a = e.add();
      int b = e.add();
      for (int s : r.set) e.edge(a, s, b);
      return {a, b};
    }
    case K::Concat: {
      auto [first_in, cur] = build(e, r.kids.front());
      for (std::size_t k = 1; k < r.kids.size(); ++k) {
        auto [in, out] = build(e, r.kids[k]);
        e.edge(cur, -1, in);
        cur = out;
      }
      return {first_in, cur};
    }
    case K::Alt: {
      int a = e.add();
      int b = e.add();
      for (const Regex& k : r.kids) {
        auto [in, out] = build(e, k);
        e.edge(a, -1, in);
        e.edge(out, -1, b);
      }
      return {a, b};
    }
    case K::Repeat: {
      const Regex& inner = r.kids.front();
      int a = e.add();
      int cur = a;
      for (int k = 0; k < r.lo; ++k) {
        auto [in, out] = build(e, inner);
        e.edge(cur, -1, in);
        cur = out;
      }
      if (r.hi == -1) {
        // Loop entry is a fresh state so the optional branch gets its own head.
        int head = e.add();
        int tail = e.add();
        e.edge(cur, -1, head);
        auto [in, out] = build(e, inner);
        e.edge(head, -1, in);
        e.edge(head, -1, tail);
        e.edge(out, -1, head);
        return {a, tail};
      }
      int end = e.add();
      for (int k = r.lo; k < r.hi; ++k) {
        int head = e.add();
        e.edge(cur, -1, head);
        auto [in, out] = build(e, inner);
        e.edge(head, -1, in);
        e.edge(head, -1, end);
        cur = out;
      }
      e.edge(cur, -1, end);
      return {a, end};
    }
  }
  return {0, 0};
}

std::vector<std::vector<int>> eps_closures(const EpsNfa& e) {
  const std::size_t n = e.out.size();
  std::vector<std::vector<int>> cl(n);
  std::vector<int> mark(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> stack{static_cast<int>(s)};
    mark[s] = static_cast<int>(s);
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      cl[s].push_back(q);
      for (auto [sym, t] : e.out[static_cast<std::size_t>(q)]) {
        if (sym == -1 && mark[static_cast<std::size_t>(t)] != static_cast<int>(s)) {
          mark[static_cast<std::size_t>(t)] = static_cast<int>(s);
          stack.push_back(t);
        }
      }
    }
  }
  return cl;
}

}  // namespace

Regex parse_regex(std::string_view pattern) { return RegexParser(pattern).parse(); }

int Nfa::add_state() {
  out.emplace_back();
  final.push_back(0);
  return size() - 1;
}

void Nfa::add_edge(int from, int sym, int to) { out[static_cast<std::size_t>(from)].emplace_back(sym, to); }

void Nfa::finish() {
  for (auto& es : out) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
  }
}

std::vector<int> Nfa::step(const std::vector<int>& states, int sym) const {
  std::vector<int> next;
  for (int s : states) {
    const auto& es = out[static_cast<std::size_t>(s)];
    auto it = std::lower_bound(es.begin(), es.end(), std::make_pair(sym, -1));
    for (; it != es.end() && it->first == sym; ++it) next.push_back(it->second);
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return next;
}

bool Nfa::accepts(const std::vector<int>& word) const {
  if (out.empty()) return false;
  std::vector<int> cur{initial};
  for (int c : word) {
    cur = step(cur, c);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](int s) { return final[static_cast<std::size_t>(s)] != 0; });
}

std::set<int> Nfa::alphabet() const {
  std::set<int> a;
  for (const auto& es : out)
    for (auto [sym, t] : es) a.insert(sym);
  return a;
}

std::size_t Nfa::edge_count() const {
  std::size_t n = 0;
  for (const auto& es : out) n += es.size();
  return n;
}

Nfa prune_nfa(const Nfa& a) {
  const int n = a.size();
  if (n == 0) return a;
  std::vector<char> fwd(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{a.initial};
  fwd[static_cast<std::size_t>(a.initial)] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (auto [sym, t] : a.out[static_cast<std::size_t>(s)]) {
      if (!fwd[static_cast<std::size_t>(t)]) {
        fwd[static_cast<std::size_t>(t)] = 1;
        stack.push_back(t);
      }
    }
  }
  std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    for (auto [sym, t] : a.out[static_cast<std::size_t>(s)]) rev[static_cast<std::size_t>(t)].push_back(s);
  std::vector<char> live(static_cast<std::size_t>(n), 0);
  for (int s = 0; s < n; ++s) {
    if (a.final[static_cast<std::size_t>(s)]) {
      live[static_cast<std::size_t>(s)] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int p : rev[static_cast<std::size_t>(s)]) {
      if (!live[static_cast<std::size_t>(p)]) {
        live[static_cast<std::size_t>(p)] = 1;
        stack.push_back(p);
      }
    }
  }
  // The initial state always survives so an empty language stays representable.
  std::vector<int> id(static_cast<std::size_t>(n), -1);
  Nfa r;
  id[static_cast<std::size_t>(a.initial)] = r.add_state();
  r.initial = 0;
  for (int s = 0; s < n; ++s) {
    if (s != a.initial && fwd[static_cast<std::size_t>(s)] && live[static_cast<std::size_t>(s)])
      id[static_cast<std::size_t>(s)] = r.add_state();
  }
  for (int s = 0; s < n; ++s) {
    int ns = id[static_cast<std::size_t>(s)];
    if (ns < 0) continue;
    r.final[static_cast<std::size_t>(ns)] = a.final[static_cast<std::size_t>(s)];
    for (auto [sym, t] : a.out[static_cast<std::size_t>(s)]) {
      int nt = id[static_cast<std::size_t>(t)];
      if (nt >= 0) r.add_edge(ns, sym, nt);
    }
  }
  r.finish();
  return r;
}

Nfa regex_to_nfa(const Regex& rx) {
  EpsNfa e;
  auto [in, fin] = build(e, rx);
  auto cl = eps_closures(e);
  const std::size_t n = e.out.size();
  Nfa a;
  for (std::size_t s = 0; s < n; ++s) a.add_state();
  a.initial = in;
  a.final[static_cast<std::size_t>(fin)] = 1;
  for (std::size_t s = 0; s < n; ++s) {
    for (auto [sym, t] : e.out[s]) {
      if (sym == -1) continue;
      for (int r : cl[static_cast<std::size_t>(t)]) a.add_edge(static_cast<int>(s), sym, r);
    }
  }
  // The initial state absorbs the moves and finality of its own closure.
  for (int r : cl[static_cast<std::size_t>(in)]) {
    if (r == in) continue;
    if (r == fin) a.final[static_cast<std::size_t>(in)] = 1;
    for (auto [sym, t] : e.out[static_cast<std::size_t>(r)]) {
      if (sym == -1) continue;
      for (int q : cl[static_cast<std::size_t>(t)]) a.add_edge(in, sym, q);
    }
  }
  a.finish();
  return prune_nfa(a);
}

Nfa regex_to_nfa(std::string_view pattern) { return regex_to_nfa(parse_regex(pattern)); }

Nfa single_string_nfa(const std::vector<int>& word) {
  Nfa a;
  int cur = a.add_state();
  a.initial = cur;
  for (int c : word) {
    int nx = a.add_state();
    a.add_edge(cur, c, nx);
    cur = nx;
  }
  a.final[static_cast<std::size_t>(cur)] = 1;
  a.finish();
  return a;
}

Nfa reverse_nfa(const Nfa& a) {
  // Fresh initial state standing in for all old finals, epsilon-eliminated.
  Nfa r;
  for (int s = 0; s < a.size(); ++s) r.add_state();
  int init = r.add_state();
  r.initial = init;
  r.final[static_cast<std::size_t>(a.initial)] = 1;
  for (int s = 0; s < a.size(); ++s) {
    for (auto [sym, t] : a.out[static_cast<std::size_t>(s)]) {
      r.add_edge(t, sym, s);
      if (a.final[static_cast<std::size_t>(t)]) r.add_edge(init, sym, s);
    }
  }
  if (a.size() > 0 && a.final[static_cast<std::size_t>(a.initial)]) r.final[static_cast<std::size_t>(init)] = 1;
  r.finish();
  return prune_nfa(r);
}

std::set<std::vector<int>> nfa_words(const Nfa& a, const std::vector<int>& alphabet, int max_len) {
  std::set<std::vector<int>> out;
  std::vector<int> word;
  std::function<void(const std::vector<int>&)> rec = [&](const std::vector<int>& cur) {
    if (std::any_of(cur.begin(), cur.end(), [&](int s) { return a.final[static_cast<std::size_t>(s)] != 0; }))
      out.insert(word);
    if (static_cast<int>(word.size()) == max_len) return;
    for (int c : alphabet) {
      std::vector<int> nx = a.step(cur, c);
      if (nx.empty()) continue;
      word.push_back(c);
      rec(nx);
      word.pop_back();
    }
  };
  if (a.size() > 0) rec({a.initial});
  return out;
}

}  // namespace fim
