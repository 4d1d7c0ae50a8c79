#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"

#include <algorithm>

using namespace fim;

namespace {

std::vector<int> bytes(const std::string& s) { return std::vector<int>(s.begin(), s.end()); }

using EdgeSet = std::set<std::tuple<int, int, int>>;

EdgeSet edges(const Nfa& a) {
  EdgeSet e;
  for (int s = 0; s < a.size(); ++s)
    for (auto [sym, t] : a.out[static_cast<size_t>(s)]) e.insert({s, sym, t});
  return e;
}

bool isomorphic(const Nfa& a, int init, const std::vector<int>& finals, const EdgeSet& want, int states) {
  if (a.size() != states) return false;
  std::vector<int> perm(static_cast<size_t>(states));
  for (int k = 0; k < states; ++k) perm[static_cast<size_t>(k)] = k;
  EdgeSet have = edges(a);
  do {
    auto m = [&](int s) { return perm[static_cast<size_t>(s)]; };
    if (m(init) != a.initial) continue;
    bool fin_ok = true;
    for (int s = 0; s < states; ++s) {
      bool f = std::find(finals.begin(), finals.end(), s) != finals.end();
      fin_ok = fin_ok && (a.final[static_cast<size_t>(m(s))] != 0) == f;
    }
    if (!fin_ok) continue;
    EdgeSet mapped;
    for (auto [s, c, t] : want) mapped.insert({m(s), c, m(t)});
    if (mapped == have) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string random_pattern(std::mt19937& rng, int depth) {
  int k = static_cast<int>(rng() % (depth > 0 ? 7 : 3));
  switch (k) {
    case 0: return "a";
    case 1: return "b";
    case 2: return "[ab]";
    case 3: return random_pattern(rng, depth - 1) + random_pattern(rng, depth - 1);
    case 4: return "(" + random_pattern(rng, depth - 1) + "|" + random_pattern(rng, depth - 1) + ")";
    case 5: {
      const char* ops[] = {"*", "+", "?", "{2}", "{1,3}", "{2,}"};
      return "(" + random_pattern(rng, depth - 1) + ")" + ops[rng() % 6];
    }
    default: return random_pattern(rng, depth - 1);
  }
}

}  // namespace

TEST_CASE("aa?b matches the worked-example automaton") {
  Nfa a = regex_to_nfa("aa?b");
  // 1 -a-> 2, 1 -a-> 3, 2 -a-> 3, 3 -b-> 4, final 4
  EdgeSet fig{{0, 'a', 1}, {0, 'a', 2}, {1, 'a', 2}, {2, 'b', 3}};
  CHECK(isomorphic(a, 0, {3}, fig, 4));
}

TEST_CASE("single literal") {
  Nfa a = regex_to_nfa("a");
  CHECK(a.size() == 2);
  CHECK(a.edge_count() == 1);
}

TEST_CASE("unsupported constructs") {
  CHECK_THROWS_AS(regex_to_nfa("^a"), RegexError);
  CHECK_THROWS_AS(regex_to_nfa("a(?=b)"), RegexError);
  CHECK_THROWS_AS(regex_to_nfa("(a"), RegexError);
  CHECK_THROWS_AS(regex_to_nfa("a)"), RegexError);
  CHECK_THROWS_AS(regex_to_nfa("*a"), RegexError);
  CHECK_THROWS_AS(regex_to_nfa("\\1"), RegexError);
  CHECK_THROWS_AS(regex_to_nfa("[a"), RegexError);
}

TEST_CASE("escapes and classes") {
  Nfa d = regex_to_nfa("\\d+");
  CHECK(d.accepts(bytes("0123")));
  CHECK_FALSE(d.accepts(bytes("")));
  Nfa c = regex_to_nfa("#[^\\n]*");
  CHECK(c.accepts(bytes("# hi")));
  CHECK_FALSE(c.accepts(bytes("#a\nb")));
  Nfa w = regex_to_nfa("[\\t \\f]+");
  CHECK(w.accepts(bytes("\t \f")));
  Nfa o = regex_to_nfa("0o[0-7]+");
  CHECK(o.accepts(bytes("0o17")));
  CHECK_FALSE(o.accepts(bytes("0o8")));
  Nfa dot = regex_to_nfa("a.c");
  CHECK(dot.accepts(bytes("abc")));
  CHECK_FALSE(dot.accepts(bytes("a\nc")));
}

TEST_CASE("random patterns agree with a backtracking matcher") {
  std::mt19937 rng(3);
  std::vector<int> ab{'a', 'b'};
  for (int k = 0; k < 200; ++k) {
    std::string p = random_pattern(rng, 4);
    Nfa a = regex_to_nfa(p);
    for (const auto& w : oracle::all_strings(ab, 6)) {
      std::string s(w.begin(), w.end());
      CHECK_MESSAGE(a.accepts(w) == oracle::regex_full_match(p, s), p, " on ", s);
    }
  }
}

TEST_CASE("every state is live") {
  std::mt19937 rng(9);
  for (int k = 0; k < 100; ++k) {
    Nfa a = regex_to_nfa(random_pattern(rng, 4));
    Nfa p = prune_nfa(a);
    CHECK(p.size() == a.size());
  }
}

TEST_CASE("reversal") {
  std::mt19937 rng(13);
  std::vector<int> ab{'a', 'b'};
  for (int k = 0; k < 100; ++k) {
    Nfa a = regex_to_nfa(random_pattern(rng, 4));
    Nfa r = reverse_nfa(a);
    for (const auto& w : oracle::all_strings(ab, 6)) {
      auto rw = w;
      std::reverse(rw.begin(), rw.end());
      CHECK(r.accepts(rw) == a.accepts(w));
    }
  }
}

TEST_CASE("symbol-level constructors") {
  // NL (INDENT | DEDENT*) PASS NL DEDENT{1,4}
  enum { NL = 10, INDENT, DEDENT, PASS };
  Regex rx = Regex::cat({Regex::sym(NL), Regex::alt({Regex::sym(INDENT), Regex::star(Regex::sym(DEDENT))}), Regex::sym(PASS),
                         Regex::sym(NL), Regex::repeat(Regex::sym(DEDENT), 1, 4)});
  Nfa a = regex_to_nfa(rx);
  CHECK(a.accepts({NL, INDENT, PASS, NL, DEDENT}));
  CHECK(a.accepts({NL, PASS, NL, DEDENT, DEDENT, DEDENT, DEDENT}));
  CHECK(a.accepts({NL, DEDENT, DEDENT, PASS, NL, DEDENT}));
  CHECK_FALSE(a.accepts({NL, PASS, NL}));
  CHECK_FALSE(a.accepts({NL, INDENT, DEDENT, PASS, NL, DEDENT}));
  CHECK_FALSE(a.accepts({NL, PASS, NL, DEDENT, DEDENT, DEDENT, DEDENT, DEDENT}));
  Nfa s = single_string_nfa({1, 2, 3});
  CHECK(s.accepts({1, 2, 3}));
  CHECK_FALSE(s.accepts({1, 2}));
  CHECK(single_string_nfa({}).accepts({}));
}
