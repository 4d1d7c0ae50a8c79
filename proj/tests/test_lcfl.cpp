#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fim/lcfl.hpp"
#include "oracles.hpp"

using namespace fim;

namespace {

std::vector<LexemeSpec> abc_specs() {
  return {{"ASEQ", 1, "a+", false, ""}, {"BSEQ", 2, "b+", false, ""}, {"CSEQ", 3, "c+", false, ""}};
}
const char* kAbc = "S: ASEQ | BSEQ CSEQ;";

std::vector<LexemeSpec> kw_specs() {
  return {{"NAME", 1, "[a-z]+", false, ""},
          {"AND", 5, "and", false, ""},
          {"IN", 6, "in", false, ""},
          {"WS", 0, " +", true, ""}};
}
const char* kKw = "E: NAME | E AND NAME | E IN NAME;";

std::shared_ptr<const Language> language(std::vector<LexemeSpec> specs, const char* grammar, LexMode mode) {
  LexemeFile f;
  f.specs = std::move(specs);
  f.mode = mode;
  return std::make_shared<const Language>(make_language(f, load_grammar(grammar)));
}

// Sublanguages plus live lexer branches for one right context.
struct Run {
  std::shared_ptr<const Language> lang;
  BoundaryTable bt;
  std::vector<Sublanguage> subs;
  std::vector<std::pair<std::size_t, LexerBranch>> live;
};

Run open(std::shared_ptr<const Language> lang, const std::string& suffix) {
  Run r{lang, calculate_boundary_points(*lang->lexemes, lang->mode, suffix), {}, {}};
  r.subs = build_sublanguages(*lang, r.bt, suffix);
  for (std::size_t i = 0; i < r.subs.size(); ++i)
    r.live.emplace_back(i, start_branch(*lang->lexemes, make_feed(lang, nullptr, r.subs[i])));
  return r;
}

void feed(Run& r, const std::string& text) {
  const LexemeSet& ls = *r.lang->lexemes;
  for (char ch : text) {
    std::vector<std::pair<std::size_t, LexerBranch>> next;
    for (const auto& [i, b] : r.live) {
      if (r.lang->mode == LexMode::LeftmostLongest) {
        for (auto& x : step_leftmost_longest(ls, b, static_cast<unsigned char>(ch))) next.emplace_back(i, std::move(x));
      } else if (auto x = step_python_rule(ls, b, static_cast<unsigned char>(ch))) {
        next.emplace_back(i, std::move(*x));
      }
    }
    r.live = std::move(next);
  }
}

bool member(const Run& r) {
  for (const auto& [i, b] : r.live)
    if (membership_in_sublanguage(*r.lang->lexemes, r.bt, r.subs[i], b)) return true;
  return false;
}

// Concatenate, lex with the forward oracle, and parse with the span-table oracle.
bool concat_member(const Language& lang, const oracle::LexOracle& lx, const std::string& text) {
  auto syms = lx.lex(text, lang.mode);
  if (!syms) return false;
  SymbolString w;
  for (int g : *syms) {
    SymId t = lang.grammar->find(lx.specs()[static_cast<std::size_t>(g)].name);
    if (t == kNoSym) return false;
    w.push_back(t);
  }
  return oracle::cyk_member(*lang.grammar, w);
}

std::vector<std::string> strings(const std::string& alphabet, int max_len) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == max_len) continue;
    for (char c : alphabet) out.push_back(out[i] + c);
  }
  return out;
}

std::set<int> index_set(const BoundaryTable& bt) {
  auto v = bt.indices();
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("boundary points for c sequences") {
  auto lang = language(abc_specs(), kAbc, LexMode::LeftmostLongest);
  BoundaryTable bt = calculate_boundary_points(*lang->lexemes, lang->mode, "cc");
  CHECK(index_set(bt) == std::set<int>{0, 2});
  oracle::LexOracle lx(abc_specs());
  CHECK(oracle::boundary_oracle(lx, lang->mode, "cc", "abc", 4) == std::set<int>{0, 2});
  REQUIRE(bt.entries.count(2));
  REQUIRE(bt.entries.at(2).size() == 1);
  CHECK(bt.entries.at(2)[0].first == lang->lexemes->find("CSEQ"));
}

TEST_CASE("uninhabited index is dropped") {
  oracle::LexOracle lx(kw_specs());
  for (LexMode mode : {LexMode::LeftmostLongest, LexMode::PythonRule}) {
    auto lang = language(kw_specs(), kKw, mode);
    BoundaryTable bt = calculate_boundary_points(*lang->lexemes, mode, "nd b in c\n");
    CHECK(index_set(bt).count(1) == 0);
    CHECK(index_set(bt) == oracle::boundary_oracle(lx, mode, "nd b in c\n", "abcdinx ", 4));
  }
}

TEST_CASE("boundary table matches the oracle on random suffixes") {
  std::mt19937 rng(7);
  oracle::LexOracle kw(kw_specs()), abc(abc_specs());
  for (LexMode mode : {LexMode::LeftmostLongest, LexMode::PythonRule}) {
    auto kl = language(kw_specs(), kKw, mode);
    auto al = language(abc_specs(), kAbc, mode);
    for (int k = 0; k < 40; ++k) {
      std::string s;
      int len = static_cast<int>(rng() % 8);
      for (int i = 0; i < len; ++i) s += "andix "[rng() % 6];
      CHECK_MESSAGE(index_set(calculate_boundary_points(*kl->lexemes, mode, s)) ==
                        oracle::boundary_oracle(kw, mode, s, "andix ", 4),
                    s);
      std::string t;
      for (int i = 0; i < len; ++i) t += "abc"[rng() % 3];
      CHECK_MESSAGE(index_set(calculate_boundary_points(*al->lexemes, mode, t)) ==
                        oracle::boundary_oracle(abc, mode, t, "abc", 4),
                    t);
    }
  }
}

TEST_CASE("each state ends at one index") {
  auto lang = language(kw_specs(), kKw, LexMode::LeftmostLongest);
  BoundaryTable bt = calculate_boundary_points(*lang->lexemes, lang->mode, "and in andin x");
  StateSet seen = lang->lexemes->empty_set();
  for (const auto& [n, per] : bt.entries) {
    for (const auto& [g, s] : per) {
      CHECK_FALSE(sets::any(sets::intersect(seen, s)));
      seen = sets::unite(seen, s);
      for (int q : sets::members(s)) CHECK(lang->lexemes->owner(q) == g);
    }
  }
}

TEST_CASE("boundary analysis is linear in the suffix") {
  auto lang = language(kw_specs(), kKw, LexMode::PythonRule);
  const std::string unit = "a and bb in c ";
  std::uint64_t base = calculate_boundary_points(*lang->lexemes, lang->mode, unit).steps;
  for (int k : {2, 4, 8, 16}) {
    std::string s;
    for (int i = 0; i < k; ++i) s += unit;
    std::uint64_t steps = calculate_boundary_points(*lang->lexemes, lang->mode, s).steps;
    CHECK(steps <= static_cast<std::uint64_t>(k) * base + base);
  }
}

TEST_CASE("sublanguages for c sequences") {
  auto lang = language(abc_specs(), kAbc, LexMode::LeftmostLongest);
  Run r = open(lang, "cc");
  std::set<int> skips;
  for (const auto& s : r.subs) skips.insert(s.skip);
  CHECK(skips == std::set<int>{0, 2});
  for (const auto& s : r.subs) {
    if (s.skip != 2) continue;
    // Only BSEQ CSEQ survives once the last symbol must be CSEQ.
    auto words = oracle::generate_language(*s.grammar, 4);
    CHECK(words.size() == 1);
  }
  Run a = r;
  feed(a, "a");
  CHECK(a.live.empty());
  Run b = r;
  feed(b, "bbc");
  CHECK(member(b));
  Run e = open(lang, "");
  REQUIRE(e.subs.size() == 1);
  CHECK(e.subs[0].skip == 0);
  CHECK(oracle::generate_language(*e.subs[0].grammar, 3) == oracle::generate_language(*lang->grammar, 3));
  feed(e, "bb");
  CHECK_FALSE(member(e));
}

TEST_CASE("union of sublanguages equals the right quotient") {
  struct Fixture {
    std::vector<LexemeSpec> specs;
    const char* grammar;
    std::string alphabet;
    int max_len;
    std::vector<std::string> suffixes;
  };
  std::vector<Fixture> fixtures{
      {abc_specs(), kAbc, "abc", 5, {"", "c", "cc", "bc", "b", "a", "cb"}},
      {kw_specs(), kKw, "andix ", 4, {"", "nd b", " in c", "n x", "d", "x", " and"}},
  };
  for (const auto& f : fixtures) {
    oracle::LexOracle lx(f.specs);
    for (LexMode mode : {LexMode::LeftmostLongest, LexMode::PythonRule}) {
      auto lang = language(f.specs, f.grammar, mode);
      for (const auto& suffix : f.suffixes) {
        Run r = open(lang, suffix);
        int mismatches = 0;
        for (const auto& alpha : strings(f.alphabet, f.max_len)) {
          Run x = r;
          feed(x, alpha);
          bool got = member(x), want = concat_member(*lang, lx, alpha + suffix);
          if (got != want && ++mismatches <= 3)
            FAIL_CHECK("mode " << static_cast<int>(mode) << " [" << alpha << "|" << suffix << "] got " << got);
        }
        CHECK(mismatches == 0);
      }
    }
  }
}

TEST_CASE("incremental parsability of the union") {
  auto lang = language(abc_specs(), kAbc, LexMode::LeftmostLongest);
  oracle::LexOracle lx(abc_specs());
  auto gammas = strings("abc", 5);
  for (std::string suffix : {"", "c", "cc", "bc"}) {
    Run r = open(lang, suffix);
    for (const auto& alpha : strings("abc", 4)) {
      Run x = r;
      feed(x, alpha);
      bool want = false;
      for (const auto& g : gammas)
        if (concat_member(*lang, lx, alpha + g + suffix)) {
          want = true;
          break;
        }
      CHECK_MESSAGE(!x.live.empty() == want, alpha << "|" << suffix);
    }
  }
}

TEST_CASE("incremental parsability with keywords") {
  oracle::LexOracle lx(kw_specs());
  auto gammas = strings("andx ", 5);
  for (LexMode mode : {LexMode::LeftmostLongest, LexMode::PythonRule}) {
    auto lang = language(kw_specs(), kKw, mode);
    for (std::string suffix : {"", " x", "d x"}) {
      Run r = open(lang, suffix);
      for (const auto& alpha : strings("andx ", 2)) {
        Run x = r;
        feed(x, alpha);
        bool want = false;
        for (const auto& g : gammas)
          if (concat_member(*lang, lx, alpha + g + suffix)) {
            want = true;
            break;
          }
        CHECK_MESSAGE(!x.live.empty() == want, static_cast<int>(mode) << " [" << alpha << "|" << suffix << "]");
      }
    }
  }
}
