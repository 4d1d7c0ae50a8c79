#include "fim/indentation.hpp"

#include <algorithm>

namespace fim {

IndentationError::IndentationError(std::size_t position, const std::string& what)
    : std::runtime_error(what), position_(position) {}

std::optional<int> shift_level(IndentState& st, int level) {
  if (level > st.current) {
    st.stack.push_back(st.current);
    st.current = level;
    return 1;
  }
  int dedents = 0;
  while (level < st.current) {
    if (st.stack.empty()) return std::nullopt;
    st.current = st.stack.back();
    st.stack.pop_back();
    ++dedents;
    if (st.current < level) return std::nullopt;
  }
  return -dedents;
}

SymbolString ind_lex(const std::vector<LayoutSymbol>& in, SymId indent, SymId dedent) {
  SymbolString out;
  IndentState st;
  for (std::size_t i = 0; i < in.size(); ++i) {
    out.push_back(in[i].sym);
    if (in[i].spaces_after < 0) continue;
    auto k = shift_level(st, in[i].spaces_after);
    if (!k) throw IndentationError(i, "unindent does not match any outer indentation level");
    if (*k > 0) out.push_back(indent);
    for (int d = 0; d < -*k; ++d) out.push_back(dedent);
  }
  return out;
}

IndentAbstraction right_context_to_regular_lang(const std::vector<LayoutSymbol>& in, SymId indent, SymId dedent,
                                                std::optional<int> initial_level) {
  (void)indent;
  IndentAbstraction abs;
  std::optional<int> current = initial_level;
  std::vector<int> stack;
  for (std::size_t i = 0; i < in.size(); ++i) {
    abs.pattern.push_back({PatternItem::Kind::Sym, in[i].sym, 0, 0});
    if (in[i].spaces_after < 0) continue;
    const int level = in[i].spaces_after;
    if (abs.first_level < 0) abs.first_level = level;
    if (!current) {
      if (level > 0)
        abs.pattern.push_back({PatternItem::Kind::IndentOrDedents, kNoSym, 0, 0});
      else
        abs.pattern.push_back({PatternItem::Kind::Repeat, dedent, 0, -1});
      current = level;
    } else if (level > *current) {
      stack.push_back(*current);
      current = level;
      abs.pattern.push_back({PatternItem::Kind::Sym, indent, 0, 0});
    } else {
      int req = 0, opt = 0;
      while (level < *current) {
        ++req;
        if (stack.empty()) {
          // The matching level belongs to the left context.
          opt = *current - level - 1;
          abs.expected_prev_levels.insert(level);
          current = level;
          break;
        }
        current = stack.back();
        stack.pop_back();
        if (*current < level) throw IndentationError(i, "unindent does not match any outer indentation level");
      }
      if (req + opt > 0) abs.pattern.push_back({PatternItem::Kind::Repeat, dedent, req, req + opt});
    }
  }
  return abs;
}

std::vector<IndentAbstraction> split_id(const IndentAbstraction& abs, SymId indent, SymId dedent) {
  auto it = std::find_if(abs.pattern.begin(), abs.pattern.end(),
                         [](const PatternItem& p) { return p.kind == PatternItem::Kind::IndentOrDedents; });
  if (abs.variant != IndentVariant::Full || it == abs.pattern.end()) return {abs};
  const auto at = static_cast<std::size_t>(it - abs.pattern.begin());
  IndentAbstraction i = abs, d = abs;
  i.variant = IndentVariant::IndentOnly;
  i.pattern[at] = {PatternItem::Kind::Sym, indent, 0, 0};
  d.variant = IndentVariant::DedentOnly;
  d.pattern[at] = {PatternItem::Kind::Repeat, dedent, 0, -1};
  return {i, d};
}

bool check_indent_constraints(const IndentAbstraction& abs, const IndentState& ind) {
  auto present = [&](int level) {
    return level == ind.current || std::find(ind.stack.begin(), ind.stack.end(), level) != ind.stack.end();
  };
  for (int level : abs.expected_prev_levels)
    if (!present(level)) return false;
  switch (abs.variant) {
    case IndentVariant::Full:
      return true;
    case IndentVariant::IndentOnly:
      return ind.current < abs.first_level;
    case IndentVariant::DedentOnly:
      return present(abs.first_level);
  }
  return false;
}

Regex pattern_regex(const std::vector<PatternItem>& pattern, SymId indent, SymId dedent) {
  std::vector<Regex> parts;
  for (const auto& p : pattern) {
    switch (p.kind) {
      case PatternItem::Kind::Sym:
        parts.push_back(Regex::sym(p.sym));
        break;
      case PatternItem::Kind::Repeat:
        parts.push_back(Regex::repeat(Regex::sym(p.sym), p.lo, p.hi));
        break;
      case PatternItem::Kind::IndentOrDedents:
        parts.push_back(Regex::alt({Regex::sym(indent), Regex::star(Regex::sym(dedent))}));
        break;
    }
  }
  if (parts.empty()) return Regex::eps();
  return Regex::cat(std::move(parts));
}

std::string pattern_string(const std::vector<PatternItem>& pattern, const Grammar& names, SymId indent, SymId dedent) {
  std::string out;
  for (const auto& p : pattern) {
    if (!out.empty()) out += ' ';
    switch (p.kind) {
      case PatternItem::Kind::Sym:
        out += names.name(p.sym);
        break;
      case PatternItem::Kind::Repeat:
        out += names.name(p.sym);
        if (p.hi < 0)
          out += p.lo == 0 ? "*" : "{" + std::to_string(p.lo) + ",}";
        else if (p.lo != p.hi)
          out += "{" + std::to_string(p.lo) + "," + std::to_string(p.hi) + "}";
        else if (p.lo != 1)
          out += "{" + std::to_string(p.lo) + "}";
        break;
      case PatternItem::Kind::IndentOrDedents:
        out += "(" + names.name(indent) + " | " + names.name(dedent) + "*)";
        break;
    }
  }
  return out;
}

int indent_width(std::string_view text) {
  int w = 0;
  for (char c : text) {
    if (c == ' ')
      w += 1;
    else if (c == '\t')
      w += 8;
    else if (c != '\f')
      return -1;
  }
  return w;
}

std::optional<LayoutStream> to_layout_symbols(const LexemeSet& ls, const Layout& layout, const std::vector<SymId>& terminal,
                                              const std::vector<Lexed>& lexed, std::string_view text, int depth,
                                              bool line_has_content) {
  LayoutStream out;
  bool content = line_has_content;
  bool seen_newline = false;
  int col = 0;
  std::optional<std::size_t> pending;  // newline waiting for the next line's level
  for (const auto& x : lexed) {
    const auto g = static_cast<std::size_t>(x.lexeme);
    std::string_view piece = text.substr(x.start, x.length);
    if (x.lexeme == layout.newline) {
      if (depth > 0) continue;
      if (content) {
        pending = out.symbols.size();
        out.symbols.push_back({layout.nl, 0});
        content = false;
      }
      seen_newline = true;
      col = 0;
      continue;
    }
    if (ls.ignored(x.lexeme)) {
      if (!content && depth == 0) {
        int w = indent_width(piece);
        if (w > 0) col += w;
      }
      continue;
    }
    if (terminal[g] == kNoSym) return std::nullopt;
    if (!content && depth == 0) {
      if (pending) {
        out.symbols[*pending].spaces_after = col;
        pending.reset();
      } else if (!line_has_content && !out.content) {
        out.content = true;
        out.level_known = seen_newline;
        out.level = col;
      }
    }
    out.symbols.push_back({terminal[g], -1});
    content = true;
    if (layout.open[g]) ++depth;
    if (layout.close[g] && --depth < 0) return std::nullopt;
  }
  out.depth_at_end = depth;
  return out;
}

LayoutFeed::LayoutFeed(std::shared_ptr<const LayoutContext> ctx, ParseState parser,
                       std::shared_ptr<const LayoutRequirement> req)
    : ctx_(std::move(ctx)), req_(std::move(req)), parser_(std::move(parser)) {
  refresh();
}

std::optional<std::pair<ParseState, IndentState>> LayoutFeed::settle(int level) const {
  IndentState st = ind_;
  auto k = shift_level(st, level);
  if (!k) return std::nullopt;
  ParseState p = parser_;
  const SymId sym = *k > 0 ? ctx_->layout.indent : ctx_->layout.dedent;
  for (int i = 0; i < std::abs(*k); ++i) {
    if (!can_scan(p, sym)) return std::nullopt;
    p = accumulate(p, sym);
  }
  return std::make_pair(std::move(p), std::move(st));
}

void LayoutFeed::refresh() {
  settled_.reset();
  const ParseState* base = &parser_;
  if (!content_ && depth_ == 0) {
    if (auto s = settle(col_)) {
      settled_ = std::move(s->first);
      settled_ind_ = std::move(s->second);
    }
    base = settled_ ? &*settled_ : nullptr;
  }
  accepts_.reset();
  if (base) {
    for (SymId t : scannable_terminals(*base)) {
      if (static_cast<std::size_t>(t) >= ctx_->lexeme_of.size()) continue;
      LexemeId g = ctx_->lexeme_of[static_cast<std::size_t>(t)];
      if (g >= 0 && g != ctx_->layout.newline) accepts_.set(static_cast<std::size_t>(g));
    }
  }
  const LexemeId nl = ctx_->layout.newline;
  if (nl >= 0 && (depth_ > 0 || !content_ || can_scan(parser_, ctx_->layout.nl))) accepts_.set(static_cast<std::size_t>(nl));
}

FeedPtr LayoutFeed::push(LexemeId g, std::string_view text) const {
  const LexemeSet& ls = *ctx_->lexemes;
  const Layout& lay = ctx_->layout;
  auto next = std::make_shared<LayoutFeed>(*this);
  if (g == lay.newline) {
    if (depth_ > 0) return next;
    if (content_) {
      if (!can_scan(parser_, lay.nl)) return nullptr;
      next->parser_ = accumulate(parser_, lay.nl);
      next->content_ = false;
    }
    next->col_ = 0;
  } else if (ls.ignored(g)) {
    if (!content_ && depth_ == 0) {
      int w = indent_width(text);
      if (w > 0) next->col_ += w;
    }
  } else {
    const SymId t = ctx_->terminal[static_cast<std::size_t>(g)];
    if (t == kNoSym) return nullptr;
    if (!content_ && depth_ == 0) {
      if (!settled_) return nullptr;
      next->parser_ = *settled_;
      next->ind_ = settled_ind_;
    }
    if (!can_scan(next->parser_, t)) return nullptr;
    next->parser_ = accumulate(next->parser_, t);
    next->content_ = true;
    if (lay.open[static_cast<std::size_t>(g)]) ++next->depth_;
    if (lay.close[static_cast<std::size_t>(g)] && --next->depth_ < 0) return nullptr;
  }
  next->refresh();
  return next;
}

bool LayoutFeed::complete() const {
  const Layout& lay = ctx_->layout;
  if (!req_) {
    if (depth_ != 0) return false;
    ParseState p = parser_;
    if (content_) {
      if (!can_scan(p, lay.nl)) return false;
      p = accumulate(p, lay.nl);
    }
    LayoutFeed at_eof = *this;
    at_eof.parser_ = std::move(p);
    auto s = at_eof.settle(0);
    return s && is_member(s->first);
  }
  if (depth_ != req_->depth) return false;
  if (req_->entry == LayoutRequirement::Entry::MidLine) {
    if (!content_) return false;
    return check_indent_constraints(req_->abs, ind_) && is_member(parser_);
  }
  if (content_) return false;
  const int level = !req_->content ? 0 : req_->level_known ? req_->level : col_ + req_->lead;
  auto s = settle(level);
  return s && check_indent_constraints(req_->abs, s->second) && is_member(s->first);
}

}  // namespace fim
