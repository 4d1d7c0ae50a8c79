#include "fim/python3.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fim/quotient.hpp"

#ifndef FIM_DATA_DIR
#define FIM_DATA_DIR "data"
#endif

namespace fim {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string default_data_dir() { return FIM_DATA_DIR; }

PythonBundle make_python_bundle(std::string_view lexemes, std::string_view grammar) {
  LexemeFile file = parse_lexeme_file(lexemes);
  if (!file.has_indent) throw LexemeError(0, "python lexemes need an %indent directive");
  std::set<std::string> known{file.indent, file.dedent};
  for (const auto& s : file.specs) known.insert(s.name);
  Grammar g = load_grammar(grammar, &known);
  PythonBundle b;
  b.lang = std::make_shared<const Language>(make_language(std::move(file), std::move(g)));
  b.continuation = b.lang->lexemes->find("CONTINUATION");
  b.comment = b.lang->lexemes->find("COMMENT");
  return b;
}

PythonBundle load_python_bundle(const std::string& dir) {
  return make_python_bundle(read_file(dir + "/python3.lexemes"), read_file(dir + "/python3.bnf"));
}

std::vector<ParenOutcome> analyze_right_context_parens(const LexemeSet& ls, const Layout& layout,
                                                       const std::vector<Lexed>& lexed) {
  using Kind = ParenBranch::Kind;
  std::vector<ParenBranch> live{{Kind::Unnested, 0, 0, {}}, {Kind::Nested, 1, 0, {}}};
  for (const Lexed& x : lexed) {
    const auto g = static_cast<std::size_t>(x.lexeme);
    if (x.lexeme == layout.newline) {
      for (auto& b : live) b.significant.push_back(b.kind == Kind::Unnested && b.current() == 0);
      continue;
    }
    if (ls.ignored(x.lexeme)) continue;
    if (layout.open[g]) {
      for (auto& b : live) ++b.offset;
    } else if (layout.close[g]) {
      std::vector<ParenBranch> next;
      for (auto& b : live) {
        --b.offset;
        if (b.kind == Kind::Unnested) {
          if (b.current() >= 0) next.push_back(std::move(b));
        } else if (b.current() >= 1) {
          next.push_back(std::move(b));
        } else {
          // The minimum depth reached zero: either the left was exactly this
          // deep, or deeper still.
          ParenBranch exact = b;
          exact.kind = Kind::Unnested;
          next.push_back(std::move(exact));
          ++b.initial_level;
          next.push_back(std::move(b));
        }
      }
      live = std::move(next);
    }
  }
  std::vector<ParenOutcome> out;
  for (auto& b : live)
    if (b.kind == Kind::Unnested && b.current() == 0) out.push_back({b.initial_level, std::move(b.significant)});
  return out;
}

namespace {

struct Variant {
  LayoutRequirement::Entry entry;
  std::set<SymId> ends;  // empty: unconstrained
  bool ignored_final;
};

}  // namespace

std::vector<Sublanguage> build_layout_sublanguages(const Language& lang, const BoundaryTable& bt,
                                                   std::string_view suffix) {
  const LexemeSet& ls = *lang.lexemes;
  const Layout& lay = *lang.layout;
  const Grammar& g = *lang.grammar;
  std::vector<Sublanguage> out;
  for (int n : bt.indices()) {
    std::string rest(suffix.substr(static_cast<std::size_t>(n)));
    if (rest.empty() || rest.back() != '\n') rest += '\n';
    auto lx = batch_lex(ls, rest, lang.mode);
    if (!lx.ok) continue;
    auto parens = analyze_right_context_parens(ls, lay, lx.symbols);
    if (parens.empty()) continue;
    const int depth = parens.front().initial_level;

    std::vector<Variant> variants;
    std::vector<std::pair<LexemeId, StateSet>> states;
    if (n == 0) {
      variants.push_back({LayoutRequirement::Entry::MidLine, {}, false});
      if (depth == 0) variants.push_back({LayoutRequirement::Entry::LineStart, {}, false});
    } else {
      auto it = bt.entries.find(n);
      if (it == bt.entries.end()) continue;
      states = it->second;
      std::set<SymId> ends;
      bool ignored = false;
      for (const auto& [h, s] : it->second) {
        if (ls.ignored(h))
          ignored = true;
        else if (lang.terminal[static_cast<std::size_t>(h)] != kNoSym)
          ends.insert(lang.terminal[static_cast<std::size_t>(h)]);
      }
      if (!ends.empty()) variants.push_back({LayoutRequirement::Entry::MidLine, ends, false});
      if (ignored) {
        variants.push_back({LayoutRequirement::Entry::MidLine, {}, true});
        if (depth == 0) variants.push_back({LayoutRequirement::Entry::LineStart, {}, true});
      }
    }

    for (const Variant& v : variants) {
      const bool mid = v.entry == LayoutRequirement::Entry::MidLine;
      auto stream = to_layout_symbols(ls, lay, lang.terminal, lx.symbols, rest, depth, mid);
      if (!stream) continue;
      std::optional<int> initial;
      if (!mid && stream->level_known) initial = stream->level;
      IndentAbstraction abs;
      try {
        abs = right_context_to_regular_lang(stream->symbols, lay.indent, lay.dedent, initial);
      } catch (const IndentationError&) {
        continue;
      }
      SymbolString word;
      for (const auto& s : stream->symbols) word.push_back(s.sym);
      for (IndentAbstraction& a : split_id(abs, lay.indent, lay.dedent)) {
        Grammar q = right_quotient(g, regex_to_nfa(pattern_regex(a.pattern, lay.indent, lay.dedent)));
        if (!v.ends.empty()) q = constrain_last_symbol(q, v.ends);
        q = prune_grammar(q);
        if (q.rules_for(q.start()).empty()) continue;
        Sublanguage sub;
        sub.skip = n;
        sub.boundary_states = states;
        sub.ignored_final = v.ignored_final;
        sub.grammar = std::make_shared<const Grammar>(std::move(q));
        sub.remainder = non_ignored(ls, lx.symbols);
        sub.pattern = pattern_string(a.pattern, g, lay.indent, lay.dedent);
        auto req = std::make_shared<LayoutRequirement>();
        req->entry = v.entry;
        req->depth = depth;
        req->content = mid || stream->content;
        req->level_known = stream->level_known;
        req->level = stream->level;
        req->lead = stream->level_known ? 0 : stream->level;
        req->abs = std::move(a);
        sub.layout = std::move(req);
        out.push_back(std::move(sub));
      }
    }
  }
  return out;
}

std::vector<Sublanguage> build_quotient(const Language& lang, std::string_view suffix, BoundaryTable* table) {
  BoundaryTable bt = calculate_boundary_points(*lang.lexemes, lang.mode, suffix);
  auto subs = lang.layout ? build_layout_sublanguages(lang, bt, suffix) : build_sublanguages(lang, bt, suffix);
  if (table) *table = std::move(bt);
  return subs;
}

std::vector<Sublanguage> build_python_quotient(const PythonBundle& bundle, std::string_view right) {
  return build_quotient(*bundle.lang, right);
}

}  // namespace fim
