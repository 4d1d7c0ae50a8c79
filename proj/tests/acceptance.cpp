// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "fim/python3.hpp"
#include "fim/quotient.hpp"
#include "fim/session.hpp"
#include "oracles.hpp"
#include "worked_example.hpp"

using namespace fim;

namespace {

const std::string kData = FIM_DATA_DIR;

struct Result {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

const PythonBundle& python() {
  static const PythonBundle b = load_python_bundle(kData);
  return b;
}

std::vector<int> ids(const std::vector<SymId>& v) { return std::vector<int>(v.begin(), v.end()); }

std::set<std::string> rendered(const Grammar& g, const std::set<SymbolString>& l) {
  std::set<std::string> out;
  for (const auto& w : l) out.insert(oracle::show(g, w));
  return out;
}

SymbolString cat(SymbolString a, const SymbolString& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<std::shared_ptr<const Grammar>> fixture_suite() {
  std::vector<std::shared_ptr<const Grammar>> out;
  for (const char* t : {fixture::kPalindrome, "S: a S b | ;", "S: S S | a | ( S );",
                        "E: E + T | T; T: T * F | F; F: ( E ) | x;", "S: A B; A: a A | ; B: b B | b;",
                        "S: A A A; A: a | ;", "S: ASEQ | BSEQ CSEQ;"})
    out.push_back(std::make_shared<const Grammar>(load_grammar(t)));
  return out;
}

// Quotient grammar printed by the CLI for palindrome x aa?b.
void worked_example(Result& r) {
  fimq::QuotientArgs a;
  a.bundle.grammar = kData + "/fixtures/palindrome.bnf";
  a.right_path = kData + "/fixtures/aa_opt_b.regex";
  a.left_side = true;
  std::ostringstream out;
  r.require(fimq::cmd_quotient(a, out) == 0, "cmd_quotient exit");
  Grammar printed = load_grammar(out.str());
  Grammar want = load_grammar(fixture::kExpectedQuotient);
  auto got_l = rendered(printed, oracle::enumerate_language(printed, 8));
  auto want_l = rendered(want, oracle::enumerate_language(want, 8));
  r.require(got_l == want_l, "language up to length 8");
  r.require(fixture::normalized_rules(printed) == fixture::expected_rules(), "rules up to renaming");
  r.note << want_l.size() << " strings up to length 8, " << printed.rules().size() << " rules";
}

void quotient_property(Result& r) {
  std::mt19937 rng(101);
  int fixtures = 0, counterexamples = 0;
  while (fixtures < 24) {
    Grammar g0 = oracle::random_grammar(rng, 3, 2, 6, 3);
    if (!check_inhabited(g0).empty()) continue;
    auto g = std::make_shared<const Grammar>(g0);
    // Acyclic with 6 states: every word of R has length <= 5.
    Nfa rx = oracle::random_acyclic_nfa(rng, 6, ids(g->terminals()), 5);
    auto lg = oracle::generate_language(*g, 10);
    std::vector<SymbolString> rs;
    for (const auto& w : nfa_words(rx, ids(g->terminals()), 5)) rs.emplace_back(w.begin(), w.end());
    auto right = oracle::generate_language(right_quotient(*g, rx), 5);
    auto left = oracle::generate_language(left_quotient(g, rx), 5);
    for (const auto& x : oracle::all_strings(g->terminals(), 5)) {
      bool want_right = false, want_left = false;
      for (const auto& s : rs) {
        want_right = want_right || lg.count(cat(x, s));
        want_left = want_left || lg.count(cat(s, x));
      }
      counterexamples += (right.count(x) > 0) != want_right;
      counterexamples += (left.count(x) > 0) != want_left;
    }
    ++fixtures;
  }
  r.require(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  r.note << fixtures << " fixtures, both sides, |x|,|r| <= 5, " << counterexamples << " counterexamples";
}

void viable_prefixes(Result& r) {
  constexpr int kPrefix = 4, kCompletion = 5;
  int prefixes = 0, mismatches = 0;
  for (const auto& g : fixture_suite()) {
    std::set<SymbolString> viable;
    for (const auto& w : oracle::generate_language(*g, kPrefix + kCompletion))
      for (std::size_t i = 0; i <= w.size() && i <= kPrefix; ++i)
        viable.insert(SymbolString(w.begin(), w.begin() + static_cast<long>(i)));
    for (const auto& w : oracle::all_strings(g->terminals(), kPrefix)) {
      ParseState s = init_state(g);
      for (SymId x : w) s = accumulate(s, x);
      ++prefixes;
      mismatches += is_incrementally_parsable(s) != (viable.count(w) > 0);
    }
  }
  r.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  r.note << prefixes << " prefixes over " << fixture_suite().size() << " grammars, completions up to " << kCompletion;
}

std::set<oracle::Item> lineage_chart(const ParseState& s, const std::vector<std::uint32_t>& lineage) {
  std::map<std::uint32_t, unsigned> pos;
  for (unsigned k = 0; k < lineage.size(); ++k) pos[lineage[k]] = k;
  std::set<oracle::Item> out;
  for (const auto& it : s.collection->chart(s.tip).items) out.insert({it.rule, it.dot, pos.at(it.origin)});
  return out;
}

void chart_equivalence(Result& r) {
  std::mt19937 rng(77);
  int pairs = 0, chars = 0;
  while (pairs < 20) {
    Grammar g0 = oracle::random_grammar(rng, 3, 2, 6, 3);
    if (!check_inhabited(g0).empty()) continue;
    auto g = std::make_shared<const Grammar>(g0);
    auto ts = g->terminals();
    SymbolString w;
    for (int k = static_cast<int>(rng() % 9); k > 0; --k) w.push_back(ts[rng() % ts.size()]);
    auto want = oracle::classic_earley(*g, w);
    ParseState s = init_state(g);
    std::vector<std::uint32_t> lineage{s.tip};
    r.require(lineage_chart(s, lineage) == want[0], "initial chart");
    for (std::size_t i = 0; i < w.size(); ++i) {
      accumulate(s, ts[(i + 1) % ts.size()]);  // sibling fork
      const std::size_t before = s.collection->appends();
      s = accumulate(s, w[i]);
      r.require(s.collection->appends() == before + 1, "one append per symbol");
      lineage.push_back(s.tip);
      r.require(lineage_chart(s, lineage) == want[i + 1], "chart " + std::to_string(i + 1));
      ++chars;
    }
    ++pairs;
  }
  r.note << pairs << " grammar/string pairs, " << chars << " appends checked";
}

void constrain_last(Result& r) {
  constexpr int kLen = 8;
  int cases = 0, counterexamples = 0;
  auto run = [&](const Grammar& g, const std::set<SymId>& end) {
    auto lg = oracle::generate_language(g, kLen);
    std::set<SymbolString> want;
    for (const auto& w : lg)
      if (!w.empty() && end.count(w.back())) want.insert(w);
    counterexamples += oracle::generate_language(constrain_last_symbol(g, end), kLen) != want;
    ++cases;
  };
  std::mt19937 rng(55);
  for (const auto& g : fixture_suite()) {
    auto ts = g->terminals();
    if (ts.size() <= 3) {
      for (unsigned mask = 0; mask < (1U << ts.size()); ++mask) {
        std::set<SymId> end;
        for (std::size_t k = 0; k < ts.size(); ++k)
          if (mask >> k & 1U) end.insert(ts[k]);
        run(*g, end);
      }
    } else {
      for (int k = 0; k < 8; ++k) {
        std::set<SymId> end;
        for (SymId t : ts)
          if (rng() % 2) end.insert(t);
        run(*g, end);
      }
    }
  }
  for (int k = 0; k < 60; ++k) {
    Grammar g = oracle::random_grammar(rng, 3, 2, 5, 3);
    std::set<SymId> end;
    for (SymId t : g.terminals())
      if (rng() % 2) end.insert(t);
    run(g, end);
  }
  r.require(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  r.note << cases << " grammar/terminal-set cases up to length " << kLen;
}

std::set<int> boundary_set(const std::string& suffix) {
  auto v = calculate_boundary_points(*python().lang->lexemes, LexMode::PythonRule, suffix).indices();
  return {v.begin(), v.end()};
}

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(kData + "/corpus"))
    if (e.path().extension() == ".py") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

void boundary_analysis(Result& r) {
  std::ifstream in(kData + "/python3.lexemes");
  std::stringstream ss;
  ss << in.rdbuf();
  const oracle::LexOracle lx(parse_lexeme_file(ss.str()).specs);
  std::string alphabet = "\n\t";
  for (char c = ' '; c <= '~'; ++c) alphabet.push_back(c);
  auto oracle_set = [&](const std::string& s) { return oracle::boundary_oracle(lx, LexMode::PythonRule, s, alphabet, 4); };

  const std::string seven = "\"#'#\"#\"#\n";
  r.require(boundary_set(seven) == oracle_set(seven), "seven-case right context");
  r.require(boundary_set(seven) == std::set<int>{0, 1, 3, 5, 8}, "seven-case pinned set");
  auto files = corpus_files();
  std::mt19937 rng(29);
  int drawn = 0;
  for (; drawn < 50; ++drawn) {
    const std::string text = fimq::read_file(files[rng() % files.size()]);
    const std::size_t from = rng() % text.size();
    const std::string sub = text.substr(from, 1 + rng() % 24);
    r.require(boundary_set(sub) == oracle_set(sub), "corpus substring at " + std::to_string(from));
  }
  r.note << "seven-case {0,1,3,5,8} and " << drawn << " corpus substrings agree with the oracle";
}

std::vector<LexemeId> incremental(const LexemeSet& ls, const std::string& text, LexMode mode, int* complete) {
  std::vector<LexerBranch> live{start_branch(ls, std::make_shared<RecordingFeed>(ls.size()))};
  for (char ch : text) {
    std::vector<LexerBranch> next;
    for (const auto& b : live) {
      if (mode == LexMode::LeftmostLongest) {
        for (auto& x : step_leftmost_longest(ls, b, static_cast<unsigned char>(ch))) next.push_back(std::move(x));
      } else if (auto x = step_python_rule(ls, b, static_cast<unsigned char>(ch))) {
        next.push_back(std::move(*x));
      }
    }
    live = std::move(next);
  }
  std::vector<LexemeId> out;
  *complete = 0;
  for (const auto& b : live) {
    if (!branch_complete(ls, b, mode)) continue;
    ++*complete;
    out = std::static_pointer_cast<const RecordingFeed>(b.feed)->symbols();
    if (!b.sip.empty()) out.push_back(ls.highest(ls.fin(b.active)));
  }
  return out;
}

void lexing_rules(Result& r) {
  const LexemeSet& ls = *python().lang->lexemes;
  r.require(!batch_lex(ls, "0or 1", LexMode::PythonRule).ok, "\"0or 1\" rejected");
  r.require(batch_lex(ls, "0 or 1", LexMode::PythonRule).ok, "\"0 or 1\" accepted");
  std::ifstream in(kData + "/python3.lexemes");
  std::stringstream ss;
  ss << in.rdbuf();
  const oracle::LexOracle lx(parse_lexeme_file(ss.str()).specs);

  const std::string alphabet = "0o7x1e.r_ab'\"#\\\n (=";
  std::mt19937 rng(8);
  int subset = 0, lexed = 0;
  for (LexMode mode : {LexMode::LeftmostLongest, LexMode::PythonRule}) {
    for (int k = 0; k < 1000; ++k) {
      std::string s;
      for (int n = static_cast<int>(rng() % 11); n > 0; --n) s.push_back(alphabet[rng() % alphabet.size()]);
      auto batch = batch_lex(ls, s, mode);
      int complete = 0;
      auto inc = incremental(ls, s, mode, &complete);
      auto ref = lx.lex(s, mode);
      r.require(batch.ok == ref.has_value(), "batch vs reference acceptance: " + s);
      if (!batch.ok) {
        r.require(complete == 0, "incremental accepts a batch failure: " + s);
        continue;
      }
      ++lexed;
      std::vector<LexemeId> want;
      for (const auto& x : batch.symbols) want.push_back(x.lexeme);
      r.require(complete == 1 && inc == want, "incremental vs batch: " + s);
      r.require(ref && *ref == non_ignored(ls, batch.symbols), "batch vs reference symbols: " + s);
      if (mode == LexMode::PythonRule) {
        auto ll = batch_lex(ls, s, LexMode::LeftmostLongest);
        r.require(ll.ok && ll.symbols == batch.symbols, "python rule not within leftmost-longest: " + s);
        ++subset;
      }
    }
  }
  r.note << "2x1000 fuzz strings, " << lexed << " lexable, " << subset << " python-rule cases within leftmost-longest";
}

std::vector<LayoutSymbol> layout_stream(const std::string& text, bool mid_line) {
  const Language& lang = *python().lang;
  auto lx = batch_lex(*lang.lexemes, text, lang.mode);
  if (!lx.ok) return {};
  auto s = to_layout_symbols(*lang.lexemes, *lang.layout, lang.terminal, lx.symbols, text, 0, mid_line);
  return s ? s->symbols : std::vector<LayoutSymbol>{};
}

void indentation(Result& r) {
  const Language& lang = *python().lang;
  const Layout& lay = *lang.layout;
  const Grammar& g = *lang.grammar;
  auto program = [&](const std::string& t) { return render(g, ind_lex(layout_stream(t, false), lay.indent, lay.dedent)); };
  auto abstraction = [&](const std::string& t) {
    return right_context_to_regular_lang(layout_stream(t, true), lay.indent, lay.dedent);
  };
  auto pattern = [&](const IndentAbstraction& a) { return pattern_string(a.pattern, g, lay.indent, lay.dedent); };

  r.require(program("if foo:\n    if bar:\n        pass\n    pass\n") ==
                "IF NAME COLON NL INDENT IF NAME COLON NL INDENT PASS NL DEDENT PASS NL DEDENT",
            "left program stream");
  r.require(program("if foo:\n  if bar:\n    pass\n") == "IF NAME COLON NL INDENT IF NAME COLON NL INDENT PASS NL DEDENT DEDENT",
            "right program stream");
  auto one = abstraction("\n    pass\n");
  r.require(pattern(one) == "NL (INDENT | DEDENT*) PASS NL DEDENT{1,4}", "one-line pattern");
  auto fig4 = abstraction("\n      pass\n    except e:\n      pass\n");
  r.require(pattern(fig4) ==
                "NL (INDENT | DEDENT*) PASS NL DEDENT{1,2} EXCEPT NAME COLON NL INDENT PASS NL DEDENT{2,5}",
            "dedenting pattern");
  r.require(fig4.expected_prev_levels == std::set<int>{0, 4}, "expected previous levels {0,4}");

  IndentState st;
  for (const auto& s : layout_stream("if foo:\n     if foo:", false))
    if (s.spaces_after >= 0) shift_level(st, s.spaces_after);
  r.require(check_indent_constraints(one, st), "misaligned left passes the full pattern");
  auto parts = split_id(one, lay.indent, lay.dedent);
  r.require(parts.size() == 2, "two split variants");
  for (const auto& p : parts) r.require(!check_indent_constraints(p, st), "misaligned left rejected by a split variant");
  auto q = make_quotient(python().lang, "\n    pass\n");
  r.require(!Session::open(q, "if foo:\n     if foo:").may_stop(), "session rejects the misaligned left");
  r.require(Session::open(q, "if foo:\n  if foo:").may_stop(), "session accepts a shallower left");
  r.note << "streams, patterns and the misaligned left context reproduced";
}

fimq::CorpusReport corpus_report() {
  static const fimq::CorpusReport rep =
      fimq::corpus_eval(python().lang, kData + "/corpus", 10, 2024, fimq::SplitMode::Boundary);
  return rep;
}

void corpus_replay(Result& r) {
  const auto& rep = corpus_report();
  std::size_t ok = 0, gaps = 0;
  for (const auto& s : rep.splits) {
    if (s.ok()) {
      ++ok;
    } else if (!s.gap.empty()) {
      ++gaps;
      std::cout << "    known gap " << s.gap << ": " << s.file << ' ' << s.begin << '-' << s.end << '\n';
    } else {
      std::cout << "    unclassified failure: " << s.file << ' ' << s.begin << '-' << s.end << '\n';
    }
  }
  r.require(rep.files == 50, std::to_string(rep.files) + " files");
  r.require(rep.file_errors.empty(), "file errors");
  r.require(rep.splits.size() == 500, std::to_string(rep.splits.size()) + " splits");
  r.require(ok + gaps == rep.splits.size(), "unclassified failures");
  r.note << ok << "/" << rep.splits.size() << " splits replayed, " << gaps << " known-gap failures";
  std::ofstream csv("acceptance_corpus.csv");
  fimq::write_report(rep, csv);
}

void sublanguage_economy(Result& r) {
  const auto& rep = corpus_report();
  std::size_t most = 0;
  for (const auto& s : rep.splits) most = std::max(most, s.sublanguages);
  r.require(!rep.splits.empty(), "no splits");
  r.require(most <= 9, "max sublanguages " + std::to_string(most));
  r.note << "max " << most << "; histogram";
  for (const auto& [count, n] : rep.histogram) r.note << ' ' << count << ':' << n;
}

std::vector<int> replay_mask(const Session& s, const Vocabulary& v) {
  std::vector<int> out;
  for (int id = 0; id < v.size(); ++id) {
    if (id == v.eos()) {
      if (s.may_stop()) out.push_back(id);
    } else if (!v.text(id).empty() && s.advance(v.text(id)).alive()) {
      out.push_back(id);
    }
  }
  return out;
}

std::string bytes(const std::vector<int>& v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(int));
}

void fork_safety(Result& r) {
  std::vector<std::string> toks;
  for (char c = ' '; c <= '~'; ++c) toks.emplace_back(1, c);
  for (const char* t : {"\n", "    ", "\n    ", "\n        ", "def", " def", "return", " return", "if", " if", "else",
                        ":\n", "):\n", "self", "self.", " =", " ==", " +=", "()", "(self", "print(", "True", "None",
                        "for", " in", " range(", "\"\"\"", "'''", "#", "# ", "0x", "1.5", "lambda", "import", "class"})
    toks.emplace_back(t);
  const std::string pieces = "abcdefghijklmnopqrstuvwxyz_0123456789 ()[]{}:.,'\"=+-*#\n";
  std::mt19937 rng(512);
  std::set<std::string> seen(toks.begin(), toks.end());
  while (toks.size() < 511) {
    std::string t;
    for (int n = 2 + static_cast<int>(rng() % 4); n > 0; --n) t.push_back(pieces[rng() % pieces.size()]);
    if (seen.insert(t).second) toks.push_back(t);
  }
  toks.emplace_back();
  const Vocabulary v(toks, 511);

  auto files = corpus_files();
  int fixtures = 0;
  for (std::size_t k = 0; k < 10; ++k) {
    const std::string text = fimq::read_file(files[(k * 5) % files.size()]);
    auto lx = batch_lex(*python().lang->lexemes, text, LexMode::PythonRule);
    const auto& sym = lx.symbols[lx.symbols.size() * (3 + k % 4) / 10];
    const std::size_t cut = sym.start;
    const std::size_t end = std::min(text.size(), cut + 1 + k * 7);
    auto s = Session::open(python().lang, text.substr(0, cut), text.substr(end));
    r.require(s.alive(), "fixture " + std::to_string(k) + " alive");
    const auto first = s.token_mask(v);
    auto fork = s.advance(text.substr(cut, end - cut));
    const auto fork_mask = fork.token_mask(v);
    auto dead = s.advance(")]}");
    (void)dead.token_mask(v);
    (void)s.advance(v.text(first.empty() ? 0 : first.front())).token_mask(v);
    const auto second = s.token_mask(v);
    r.require(bytes(first) == bytes(second), "mask changed after forks, fixture " + std::to_string(k));
    r.require(bytes(fork.token_mask(v)) == bytes(fork_mask), "fork mask changed, fixture " + std::to_string(k));
    r.require(first == replay_mask(s, v), "mask differs from per-token replay, fixture " + std::to_string(k));
    r.require(fork.may_stop(), "true middle may stop, fixture " + std::to_string(k));
    ++fixtures;
  }
  r.note << fixtures << " fixtures, 512-token vocabulary, masks byte-identical";
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Result&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "worked-example fidelity", 1, worked_example},
      {2, "quotient correctness property", 30, quotient_property},
      {3, "tip chart equals completion existence", 10, viable_prefixes},
      {4, "chart-collection equivalence", 5, chart_equivalence},
      {5, "constrain-last-symbol correctness", 10, constrain_last},
      {6, "boundary analysis", 60, boundary_analysis},
      {7, "lexing rules", 30, lexing_rules},
      {8, "indentation", 1, indentation},
      {9, "corpus replay", 300, corpus_replay},
      {10, "sublanguage economy", 300, sublanguage_economy},
      {11, "fork safety under masking", 10, fork_safety},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = r.pass && in_time;
    failed += !pass;
    std::printf("%s criterion %2d %-40s %7.2fs (budget %gs)%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, in_time ? "" : " over budget", r.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
