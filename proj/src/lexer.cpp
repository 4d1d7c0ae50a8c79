#include "fim/lexer.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace fim {

LexemeError::LexemeError(int line, const std::string& what)
    : std::runtime_error("lexeme file line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

LexemeFile parse_lexeme_file(std::string_view text) {
  LexemeFile out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line[0] == '%') {
      auto ws = words(line);
      if (ws[0] == "%mode") {
        if (ws.size() != 2) throw LexemeError(line_no, "expected `%mode python` or `%mode longest`");
        if (ws[1] == "python") out.mode = LexMode::PythonRule;
        else if (ws[1] == "longest") out.mode = LexMode::LeftmostLongest;
        else throw LexemeError(line_no, "unknown mode `" + ws[1] + "`");
      } else if (ws[0] == "%indent") {
        out.has_indent = true;
        for (std::size_t k = 1; k < ws.size(); ++k) {
          auto eq = ws[k].find('=');
          if (eq == std::string::npos) throw LexemeError(line_no, "expected key=NAME in %indent");
          std::string key = ws[k].substr(0, eq), val = ws[k].substr(eq + 1);
          if (key == "newline") out.newline = val;
          else if (key == "indent") out.indent = val;
          else if (key == "dedent") out.dedent = val;
          else throw LexemeError(line_no, "unknown %indent key `" + key + "`");
        }
        if (out.newline.empty() || out.indent.empty() || out.dedent.empty())
          throw LexemeError(line_no, "%indent needs newline, indent and dedent");
      } else if (ws[0] == "%brackets") {
        if (ws.size() % 2 != 1) throw LexemeError(line_no, "%brackets takes open/close pairs");
        for (std::size_t k = 1; k + 1 < ws.size(); k += 2) out.brackets.emplace_back(ws[k], ws[k + 1]);
      } else {
        throw LexemeError(line_no, "unknown directive `" + ws[0] + "`");
      }
      continue;
    }

    LexemeSpec spec;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    };
    auto token = [&] {
      skip_ws();
      std::size_t s = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      return line.substr(s, i - s);
    };
    spec.name = token();
    std::string prec = token();
    try {
      std::size_t used = 0;
      spec.precedence = std::stoi(prec, &used);
      if (used != prec.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw LexemeError(line_no, "expected integer precedence after `" + spec.name + "`");
    }
    skip_ws();
    if (i >= line.size() || line[i] != '/') throw LexemeError(line_no, "expected /regex/");
    ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != '/') i += (line[i] == '\\') ? 2 : 1;
    if (i >= line.size()) throw LexemeError(line_no, "unterminated /regex/");
    spec.pattern = line.substr(start, i - start);
    ++i;
    for (const auto& w : words(std::string_view(line).substr(i))) {
      if (w == "ignore") spec.ignored = true;
      else if (w.rfind("follow=", 0) == 0) spec.follow = w.substr(7);
      else throw LexemeError(line_no, "unknown attribute `" + w + "`");
    }
    out.specs.push_back(std::move(spec));
  }
  return out;
}

namespace sets {

bool any(const StateSet& s) {
  return std::any_of(s.begin(), s.end(), [](std::uint64_t w) { return w != 0; });
}
bool test(const StateSet& s, int i) { return (s[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U; }
void set(StateSet& s, int i) { s[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }

StateSet intersect(const StateSet& a, const StateSet& b) {
  StateSet r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] & b[k];
  return r;
}
StateSet unite(const StateSet& a, const StateSet& b) {
  StateSet r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] | b[k];
  return r;
}
StateSet minus(const StateSet& a, const StateSet& b) {
  StateSet r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] & ~b[k];
  return r;
}
std::vector<int> members(const StateSet& s) {
  std::vector<int> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::uint64_t w = s[k];
    while (w) {
      out.push_back(static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

}  // namespace sets

namespace {

template <typename F>
void for_each_bit(const StateSet& s, F&& f) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::uint64_t w = s[k];
    while (w) {
      f(static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
}

}  // namespace

LexemeSet::Edges LexemeSet::build_edges(int n, const std::vector<std::vector<std::pair<int, int>>>& out) {
  Edges e;
  e.index.resize(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    auto es = out[static_cast<std::size_t>(s)];
    std::sort(es.begin(), es.end());
    auto& idx = e.index[static_cast<std::size_t>(s)];
    std::size_t k = 0;
    for (int c = 0; c <= 256; ++c) {
      while (k < es.size() && es[k].first < c) {
        e.target.push_back(es[k].second);
        ++k;
      }
      // Edges on bytes below c end here, so byte c spans [idx[c], idx[c+1]).
      idx[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(e.target.size());
    }
  }
  return e;
}

LexemeId LexemeSet::find(std::string_view name) const {
  for (int g = 0; g < size(); ++g)
    if (specs_[static_cast<std::size_t>(g)].name == name) return g;
  return -1;
}

StateSet LexemeSet::step(const StateSet& s, unsigned char c) const {
  ++steps_;
  return step_uncounted(s, c);
}

StateSet LexemeSet::step_uncounted(const StateSet& s, unsigned char c) const {
  StateSet r(words_, 0);
  for_each_bit(s, [&](int q) {
    const auto& idx = fwd_.index[static_cast<std::size_t>(q)];
    for (std::uint32_t k = idx[c]; k < idx[c + 1u]; ++k) sets::set(r, fwd_.target[k]);
  });
  return r;
}

StateSet LexemeSet::step_back(const StateSet& s, unsigned char c) const {
  ++steps_;
  StateSet r(words_, 0);
  for_each_bit(s, [&](int q) {
    const auto& idx = back_.index[static_cast<std::size_t>(q)];
    for (std::uint32_t k = idx[c]; k < idx[c + 1u]; ++k) sets::set(r, back_.target[k]);
  });
  return r;
}

const LexemeSet::JointStates& LexemeSet::joint_states() const {
  std::call_once(joint_->once, [this] {
    constexpr std::size_t kCap = 200000;
    // Bytes with identical edges from every state behave the same.
    std::map<std::vector<int>, int> by_sig;
    std::vector<unsigned char> reps;
    for (int c = 0; c < 256; ++c) {
      std::vector<int> sig;
      for (std::size_t q = 0; q < fwd_.index.size(); ++q) {
        const auto& idx = fwd_.index[q];
        sig.push_back(-1);
        for (std::uint32_t k = idx[static_cast<std::size_t>(c)]; k < idx[static_cast<std::size_t>(c) + 1]; ++k)
          sig.push_back(fwd_.target[k]);
      }
      if (by_sig.emplace(std::move(sig), c).second) reps.push_back(static_cast<unsigned char>(c));
    }
    JointStates& out = joint_->value;
    std::set<StateSet> seen;
    std::vector<StateSet> queue{start_};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (unsigned char c : reps) {
        StateSet next = step_uncounted(queue[head], c);
        if (!sets::any(next) || !seen.insert(next).second) continue;
        if (seen.size() > kCap) {
          out.complete = false;
          return;
        }
        out.sets.push_back(next);
        queue.push_back(std::move(next));
      }
    }
  });
  return joint_->value;
}

LexemeMask LexemeSet::pos(const StateSet& s) const {
  LexemeMask m;
  for_each_bit(s, [&](int q) { m.set(static_cast<std::size_t>(owner_[static_cast<std::size_t>(q)])); });
  return m;
}

LexemeMask LexemeSet::fin(const StateSet& s) const {
  LexemeMask m;
  for_each_bit(s, [&](int q) {
    if (finals_[static_cast<std::size_t>(q)]) m.set(static_cast<std::size_t>(owner_[static_cast<std::size_t>(q)]));
  });
  return m;
}

LexemeId LexemeSet::highest(const LexemeMask& m) const {
  for (LexemeId g : by_precedence_)
    if (m[static_cast<std::size_t>(g)]) return g;
  return -1;
}

StateSet LexemeSet::restrict(const StateSet& s, const LexemeMask& m) const {
  StateSet r(words_, 0);
  for_each_bit(s, [&](int q) {
    if (m[static_cast<std::size_t>(owner_[static_cast<std::size_t>(q)])]) sets::set(r, q);
  });
  return r;
}

std::vector<int> LexemeSet::local_states(const StateSet& s, LexemeId g) const {
  std::vector<int> out;
  const int lo = offset(g), hi = lo + automaton(g).size();
  for_each_bit(s, [&](int q) {
    if (q >= lo && q < hi) out.push_back(q - lo);
  });
  return out;
}

LexemeSet compile_lexemes(const std::vector<LexemeSpec>& specs) {
  if (specs.size() > static_cast<std::size_t>(kMaxLexemes)) throw LexemeError(0, "too many lexemes");
  LexemeSet ls;
  ls.specs_ = specs;
  std::map<int, std::string> prec;
  std::set<std::string> names;
  for (const auto& s : specs) {
    if (!names.insert(s.name).second) throw LexemeError(0, "duplicate lexeme `" + s.name + "`");
    auto [it, fresh] = prec.emplace(s.precedence, s.name);
    if (!fresh)
      throw LexemeError(0, "duplicate precedence " + std::to_string(s.precedence) + " for `" + it->second + "` and `" +
                               s.name + "`");
  }
  int total = 0;
  for (const auto& s : specs) {
    Nfa a;
    try {
      a = regex_to_nfa(s.pattern);
    } catch (const RegexError& e) {
      throw LexemeError(0, "lexeme `" + s.name + "`: " + e.what());
    }
    if (a.final[static_cast<std::size_t>(a.initial)]) throw LexemeError(0, "lexeme `" + s.name + "` accepts the empty string");
    if (a.out[static_cast<std::size_t>(a.initial)].empty()) throw LexemeError(0, "lexeme `" + s.name + "` matches nothing");
    ls.offset_.push_back(total);
    total += a.size();
    ls.nfas_.push_back(std::move(a));
  }
  for (const auto& s : specs) {
    if (s.follow.empty()) {
      ls.follow_.push_back(-1);
      continue;
    }
    LexemeId f = ls.find(s.follow);
    if (f < 0) throw LexemeError(0, "lexeme `" + s.name + "` follows unknown `" + s.follow + "`");
    ls.follow_.push_back(f);
  }
  ls.words_ = static_cast<std::size_t>((total + 63) / 64);
  ls.owner_.resize(static_cast<std::size_t>(total));
  ls.finals_.resize(static_cast<std::size_t>(total));
  std::vector<std::vector<std::pair<int, int>>> fwd(static_cast<std::size_t>(total)), back(static_cast<std::size_t>(total));
  ls.start_ = ls.empty_set();
  ls.successors_ = ls.empty_set();
  ls.final_set_ = ls.empty_set();
  for (int g = 0; g < ls.size(); ++g) {
    const Nfa& a = ls.nfas_[static_cast<std::size_t>(g)];
    const int off = ls.offset_[static_cast<std::size_t>(g)];
    sets::set(ls.start_, off + a.initial);
    for (int q = 0; q < a.size(); ++q) {
      ls.owner_[static_cast<std::size_t>(off + q)] = g;
      ls.finals_[static_cast<std::size_t>(off + q)] = a.final[static_cast<std::size_t>(q)];
      if (a.final[static_cast<std::size_t>(q)]) sets::set(ls.final_set_, off + q);
      for (auto [c, t] : a.out[static_cast<std::size_t>(q)]) {
        fwd[static_cast<std::size_t>(off + q)].emplace_back(c, off + t);
        back[static_cast<std::size_t>(off + t)].emplace_back(c, off + q);
        sets::set(ls.successors_, off + t);
      }
    }
    if (ls.ignored(g)) ls.ignored_mask_.set(static_cast<std::size_t>(g));
    ls.all_mask_.set(static_cast<std::size_t>(g));
  }
  ls.fwd_ = LexemeSet::build_edges(total, fwd);
  ls.back_ = LexemeSet::build_edges(total, back);
  for (int g = 0; g < ls.size(); ++g) ls.by_precedence_.push_back(g);
  std::sort(ls.by_precedence_.begin(), ls.by_precedence_.end(),
            [&](LexemeId x, LexemeId y) { return ls.spec(x).precedence > ls.spec(y).precedence; });
  return ls;
}

LexResult batch_lex(const LexemeSet& ls, std::string_view text, LexMode mode) {
  LexResult r;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    StateSet cur = ls.start_set();
    LexemeId best = -1;
    std::size_t best_len = 0;
    std::size_t j = i;
    if (mode == LexMode::LeftmostLongest) {
      while (j < n) {
        cur = ls.step(cur, static_cast<unsigned char>(text[j]));
        if (!sets::any(cur)) break;
        ++j;
        LexemeId h = ls.highest(ls.fin(cur));
        if (h >= 0) {
          best = h;
          best_len = j - i;
        }
      }
    } else {
      // Advance until the next character kills every lexeme, then require a
      // finished match right there.
      while (j < n) {
        StateSet next = ls.step(cur, static_cast<unsigned char>(text[j]));
        if (!sets::any(next)) break;
        cur = std::move(next);
        ++j;
      }
      if (j > i) {
        best = ls.highest(ls.fin(cur));
        best_len = j - i;
      }
    }
    if (best < 0) {
      r.ok = false;
      r.error_at = i;
      return r;
    }
    r.symbols.push_back({best, i, best_len});
    i += best_len;
  }
  return r;
}

std::vector<LexemeId> non_ignored(const LexemeSet& ls, const std::vector<Lexed>& syms) {
  std::vector<LexemeId> out;
  for (const auto& s : syms)
    if (!ls.ignored(s.lexeme)) out.push_back(s.lexeme);
  return out;
}

LexemeMask gate(const LexemeSet& ls, const LexemeMask& accepts) {
  LexemeMask t = accepts & ~ls.ignored_mask();
  for (int g = 0; g < ls.size(); ++g)
    if (ls.ignored(g) && emit_gate(ls, accepts, g)) t.set(static_cast<std::size_t>(g));
  return t;
}

bool emit_gate(const LexemeSet& ls, const LexemeMask& accepts, LexemeId g) {
  if (!ls.ignored(g)) return accepts[static_cast<std::size_t>(g)];
  LexemeId f = ls.follow(g);
  return f < 0 || accepts[static_cast<std::size_t>(f)];
}

LexerBranch start_branch(const LexemeSet& ls, FeedPtr feed) {
  LexerBranch b;
  b.active = ls.empty_set();
  b.t = gate(ls, feed->accepts());
  b.feed = std::move(feed);
  return b;
}

std::vector<LexerBranch> step_leftmost_longest(const LexemeSet& ls, const LexerBranch& b, unsigned char c) {
  std::vector<Guard> guards;
  for (const Guard& g : b.guards) {
    StateSet s = ls.step(g.states, c);
    if ((ls.pos(s) & g.t).none()) continue;  // the longer branch died
    LexemeMask f = ls.fin(s);
    if ((f & g.t).any()) {
      LexemeId h = ls.highest(f);
      if (g.t[static_cast<std::size_t>(h)]) return {};  // it found a longer match
    }
    guards.push_back({std::move(s), g.t});
  }
  std::vector<LexerBranch> out;
  StateSet active = ls.step(b.sip.empty() ? ls.start_set() : b.active, c);
  if ((ls.pos(active) & b.t).none()) return out;
  LexemeMask f = ls.fin(active);
  std::string sip = b.sip + static_cast<char>(c);
  std::optional<LexerBranch> emit;
  if ((f & b.t).any()) {
    LexemeId h = ls.highest(f);
    if (b.t[static_cast<std::size_t>(h)]) {
      FeedPtr nf = b.feed->push(h, sip);
      if (nf) {
        LexerBranch e;
        e.active = ls.empty_set();
        e.t = gate(ls, nf->accepts());
        e.feed = std::move(nf);
        e.guards = guards;
        e.guards.push_back({active, b.t});
        emit = std::move(e);
      }
    }
  }
  out.push_back(LexerBranch{std::move(active), std::move(sip), b.feed, b.t, std::move(guards)});
  if (emit) out.push_back(std::move(*emit));
  return out;
}

std::optional<LexerBranch> step_python_rule(const LexemeSet& ls, const LexerBranch& b, unsigned char c, bool strict_prefix) {
  StateSet active = ls.step(b.sip.empty() ? ls.start_set() : b.active, c);
  FeedPtr feed = b.feed;
  LexemeMask t = b.t;
  std::string sip = b.sip + static_cast<char>(c);
  if (!sets::any(active)) {
    if (b.sip.empty()) return std::nullopt;
    LexemeId h = ls.highest(ls.fin(b.active));
    if (h < 0 || !t[static_cast<std::size_t>(h)]) return std::nullopt;
    feed = feed->push(h, b.sip);
    if (!feed) return std::nullopt;
    t = gate(ls, feed->accepts());
    sip = std::string(1, static_cast<char>(c));
    active = ls.step(ls.start_set(), c);
  }
  LexemeMask p = ls.pos(active);
  if (strict_prefix ? (p & t).none() : (p.none() && t.none())) return std::nullopt;
  return LexerBranch{std::move(active), std::move(sip), std::move(feed), t, {}};
}

bool branch_complete(const LexemeSet& ls, const LexerBranch& b, LexMode mode) {
  if (b.sip.empty()) return b.feed->complete();
  if (mode == LexMode::LeftmostLongest) return false;
  LexemeId h = ls.highest(ls.fin(b.active));
  if (h < 0 || !b.t[static_cast<std::size_t>(h)]) return false;
  FeedPtr nf = b.feed->push(h, b.sip);
  return nf && nf->complete();
}

RecordingFeed::RecordingFeed(int lexemes) {
  for (int g = 0; g < lexemes; ++g) mask_.set(static_cast<std::size_t>(g));
}

FeedPtr RecordingFeed::push(LexemeId g, std::string_view) const {
  auto next = std::make_shared<RecordingFeed>(*this);
  next->parent_ = std::make_shared<const RecordingFeed>(*this);
  next->last_ = g;
  return next;
}

std::vector<LexemeId> RecordingFeed::symbols() const {
  std::vector<LexemeId> out;
  for (const RecordingFeed* f = this; f && f->last_ >= 0; f = f->parent_.get()) out.push_back(f->last_);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace fim
