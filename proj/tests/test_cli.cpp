#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "fim/python3.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "worked_example.hpp"

using namespace fim;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = std::string(FIM_DATA_DIR) + "/fixtures/";

fimq::BundlePaths abc_paths() { return {kFixtures + "abc.bnf", kFixtures + "abc.lexemes"}; }

// Scratch files under one temp directory per test run.
std::string put(const std::string& name, const std::string& text) {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("fimq-test-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  const fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::set<SymbolString> lang(const Grammar& g, int n) { return oracle::enumerate_language(g, n); }

std::set<std::string> rendered(const Grammar& g, int n) {
  std::set<std::string> out;
  for (const auto& w : lang(g, n)) out.insert(oracle::show(g, w));
  return out;
}

int check(const std::string& left, const std::string& middle, const std::string& right, std::string* report = nullptr,
          const fimq::BundlePaths& b = abc_paths()) {
  std::ostringstream out;
  int rc = fimq::cmd_check(b, put("l", left), put("m", middle), put("r", right), out);
  if (report) *report = out.str();
  return rc;
}

std::string serve(const fimq::BundlePaths& b, const std::string& script) {
  std::istringstream in(script);
  std::ostringstream out;
  CHECK(fimq::cmd_serve(fimq::load_language(b), in, out) == 0);
  return out.str();
}

std::vector<nlohmann::json> lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(nlohmann::json::parse(l));
  return out;
}

}  // namespace

TEST_CASE("quotient of the palindrome grammar by aa?b") {
  fimq::QuotientArgs a;
  a.bundle.grammar = kFixtures + "palindrome.bnf";
  a.right_path = kFixtures + "aa_opt_b.regex";
  a.left_side = true;
  std::ostringstream out;
  REQUIRE(fimq::cmd_quotient(a, out) == 0);
  Grammar printed = load_grammar(out.str());
  Grammar want = load_grammar(fixture::kExpectedQuotient);
  CHECK(rendered(printed, 8) == rendered(want, 8));
  CHECK(printed.rules().size() == want.rules().size());
}

TEST_CASE("quotient summary for an indented python right context") {
  fimq::QuotientArgs a;
  a.right_path = put("right.py", "\n    pass\n");
  std::ostringstream out;
  REQUIRE(fimq::cmd_quotient(a, out) == 0);
  CHECK(out.str().find("pattern: NL INDENT PASS NL DEDENT{1,4}") != std::string::npos);
  CHECK(out.str().find("pattern: NL DEDENT* PASS NL DEDENT{1,4}") != std::string::npos);
  CHECK(out.str().rfind("boundary indices: 0", 0) == 0);
}

TEST_CASE("empty right context keeps the original language") {
  fimq::QuotientArgs a;
  a.bundle = abc_paths();
  a.right_path = put("empty", "");
  std::ostringstream out;
  REQUIRE(fimq::cmd_quotient(a, out) == 0);
  CHECK(out.str().find("sublanguages: 1\n") != std::string::npos);
  a.dump_grammar = 0;
  std::ostringstream dump;
  REQUIRE(fimq::cmd_quotient(a, dump) == 0);
  Grammar orig = load_grammar(fimq::read_file(kFixtures + "abc.bnf"));
  CHECK(rendered(load_grammar(dump.str()), 4) == rendered(orig, 4));
  a.dump_grammar = 1;
  std::ostringstream none;
  CHECK_THROWS_AS(fimq::cmd_quotient(a, none), fimq::InputError);
}

TEST_CASE("unreadable inputs are input errors") {
  fimq::QuotientArgs a;
  a.right_path = "/nonexistent/right";
  std::ostringstream out;
  CHECK_THROWS_AS(fimq::cmd_quotient(a, out), fimq::InputError);
  CHECK_THROWS_AS(fimq::load_language({kFixtures + "abc.bnf", ""}), fimq::InputError);
  CHECK_THROWS_AS(fimq::load_language({put("bad.bnf", "S: ASEQ | DSEQ;"), kFixtures + "abc.lexemes"}),
                  fimq::InputError);
  CHECK_THROWS_AS(fimq::cmd_check(abc_paths(), "/nonexistent", put("m", ""), put("r", ""), out), fimq::InputError);
}

TEST_CASE("check reports the first rejected offset") {
  std::string report;
  CHECK(check("b", "bb", "cc", &report) == 0);
  CHECK(report == "accepted, may_stop=true\n");
  CHECK(check("b", "bba", "cc", &report) == 1);
  CHECK(report == "rejected at offset 2\n");
  CHECK(check("b", "", "", &report) == 1);
  CHECK(report == "accepted, may_stop=false\n");
  CHECK(check("a", "", "cc", &report) == 1);
  CHECK(report == "rejected in left context\n");
  const std::string right = ", tablefmt='psql'))\n";
  CHECK(check("print(tabulate(rows", "", right, nullptr, {}) == 0);
  CHECK(check("print(tabulate(rows", ")))", right, &report, {}) == 1);
  CHECK(report == "rejected at offset 2\n");
}

TEST_CASE("check agrees with batch parsing") {
  auto lang = fimq::load_language(abc_paths());
  std::vector<std::string> words{""};
  for (std::size_t i = 0; i < words.size() && words.size() < 364; ++i)
    if (words[i].size() < 5)
      for (char c : std::string("abc")) words.push_back(words[i] + c);
  std::mt19937 rng(9);
  for (int round = 0; round < 120; ++round) {
    const std::string& t = words[rng() % words.size()];
    std::size_t i = rng() % (t.size() + 1), j = rng() % (t.size() + 1);
    if (i > j) std::swap(i, j);
    const int want = oracle::batch_parse(*lang, t) ? 0 : 1;
    CHECK_MESSAGE(check(t.substr(0, i), t.substr(i, j - i), t.substr(j)) == want, t << " " << i << " " << j);
  }
}

TEST_CASE("serve answers every request in order") {
  const std::string script =
      "{\"op\":\"open\",\"left\":\"\",\"right\":\"\"}\n"
      "{\"op\":\"open\",\"left\":\"b\",\"right\":\"c\"}\n"
      "not json\n"
      "{\"op\":\"fork\",\"id\":2}\n"
      "{\"op\":\"advance\",\"id\":2,\"char\":\"a\"}\n"
      "{\"op\":\"advance\",\"id\":3,\"text\":\"bb\",\"extra\":1}\n"
      "{\"op\":\"vocab\",\"tokens\":[\"a\",\"b\",\"c\",\"\"],\"eos\":3}\n"
      "{\"op\":\"mask\",\"id\":3,\"vocab\":1}\n"
      "{\"op\":\"mask\",\"id\":2,\"vocab\":1}\n"
      "{\"op\":\"advance_token\",\"id\":3,\"vocab\":1,\"token_id\":2}\n"
      "{\"op\":\"close\",\"id\":3}\n"
      "{\"op\":\"may_stop\",\"id\":3}\n"
      "{\"op\":\"rewind\",\"id\":1}\n";
  const std::string first = serve(abc_paths(), script);
  CHECK(serve(abc_paths(), script) == first);
  auto r = lines(first);
  REQUIRE(r.size() == 13);
  CHECK(r[0] == nlohmann::json{{"id", 1}, {"alive", true}, {"may_stop", false}});
  CHECK(r[1]["id"] == 2);
  CHECK(r[1]["may_stop"] == true);
  CHECK(r[2].contains("error"));
  CHECK(r[3] == nlohmann::json{{"id", 3}, {"alive", true}, {"may_stop", true}});
  CHECK(r[4]["alive"] == false);
  CHECK(r[5]["alive"] == true);
  CHECK(r[6]["vocab"] == 1);
  CHECK(r[7]["mask"] == std::vector<int>{1, 2, 3});
  CHECK(r[8]["mask"] == std::vector<int>{});
  CHECK(r[9]["may_stop"] == true);
  CHECK(r[10]["id"] == 3);
  CHECK(r[11].contains("error"));
  CHECK(r[12]["error"] == "unknown op: rewind");
}

TEST_CASE("serve on the palindrome bundle") {
  auto r = lines(serve({kFixtures + "palindrome.bnf", kFixtures + "palindrome.lexemes"},
                       "{\"op\":\"open\",\"left\":\"\",\"right\":\"\"}\n"));
  REQUIRE(r.size() == 1);
  CHECK(r[0] == nlohmann::json{{"id", 1}, {"alive", true}, {"may_stop", true}});
}

TEST_CASE("serve replays a python split") {
  const std::string text = "def f(x):\n    return [y for y in x if y]\n";
  const std::size_t i = 14, j = 30;
  nlohmann::json open{{"op", "open"}, {"left", text.substr(0, i)}, {"right", text.substr(j)}};
  std::string script = open.dump() + "\n";
  for (std::size_t k = i; k < j; ++k) script += nlohmann::json{{"op", "advance"}, {"id", 1}, {"char", std::string(1, text[k])}}.dump() + "\n";
  script += "{\"op\":\"may_stop\",\"id\":1}\n";
  auto r = lines(serve({}, script));
  REQUIRE(r.size() == j - i + 2);
  for (const auto& x : r) CHECK(x["alive"] == true);
  CHECK(r.back()["may_stop"] == true);
  CHECK(r.front()["may_stop"] == false);
}

TEST_CASE("corpus evaluation") {
  const fs::path empty = fs::path(put("probe", "")).parent_path() / "empty-corpus";
  fs::create_directories(empty);
  auto lang = fimq::load_language({});
  auto none = fimq::corpus_eval(lang, empty.string(), 10, 1, fimq::SplitMode::Boundary);
  CHECK(none.files == 0);
  CHECK(none.splits.empty());
  std::ostringstream csv;
  fimq::write_report(none, csv);
  CHECK(csv.str().find("summary,splits,0\n") != std::string::npos);
  CHECK_THROWS_AS(fimq::corpus_eval(lang, "/nonexistent/dir", 1, 1, fimq::SplitMode::Boundary), fimq::InputError);

  const fs::path small = empty.parent_path() / "small-corpus";
  fs::create_directories(small);
  std::ofstream(small / "a.py") << "def f(a, b):\n    return (a +\n            b)\n\nprint(f(1, 2))\n";
  std::ofstream(small / "bad.py") << "x = $\n";
  std::ofstream(small / "notes.txt") << "ignored\n";
  for (auto mode : {fimq::SplitMode::Boundary, fimq::SplitMode::Random}) {
    auto rep = fimq::corpus_eval(lang, small.string(), 5, 7, mode);
    CHECK(rep.files == 1);
    REQUIRE(rep.splits.size() == 5);
    REQUIRE(rep.file_errors.size() == 1);
    CHECK(rep.file_errors[0].first == "bad.py");
    for (const auto& s : rep.splits) CHECK_MESSAGE(s.ok(), s.begin << "-" << s.end);
    auto again = fimq::corpus_eval(lang, small.string(), 5, 7, mode);
    for (std::size_t k = 0; k < 5; ++k) CHECK(again.splits[k].begin == rep.splits[k].begin);
  }
}

TEST_CASE("gap classes") {
  CHECK(fimq::classify_gap("if a:\n\tpass\n") == "tab-indentation");
  CHECK(fimq::classify_gap("x = f'{a}'\n") == "f-string-interior");
  CHECK(fimq::classify_gap("x = 'f'\n").empty());
}
