// Command implementations behind fimq, kept out of main() so tests can drive them.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fim/lcfl.hpp"

namespace fimq {

// Unreadable or invalid input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);

// Empty grammar and lexeme paths select the bundled Python data.
struct BundlePaths {
  std::string grammar;
  std::string lexemes;
};
std::shared_ptr<const fim::Language> load_language(const BundlePaths& paths);

// Without a lexeme file the right-context file holds a regex over
// single-character grammar terminals, and the grammar quotient is printed in
// loadable form; `left_side` picks the prefix quotient instead.
struct QuotientArgs {
  BundlePaths bundle;
  std::string right_path;
  int dump_grammar = -1;
  bool left_side = false;
};
int cmd_quotient(const QuotientArgs& args, std::ostream& out);

int cmd_check(const BundlePaths& bundle, const std::string& left_path, const std::string& middle_path,
              const std::string& right_path, std::ostream& out);

// JSON lines on `in`, one response line per request on `out`.
int cmd_serve(std::shared_ptr<const fim::Language> lang, std::istream& in, std::ostream& out);

enum class SplitMode { Boundary, Random };

struct SplitResult {
  std::string file;
  std::size_t begin = 0, end = 0;  // middle is [begin, end)
  bool left_ok = false;
  bool middle_ok = false;
  bool stop_ok = false;
  std::size_t reject_at = 0;  // file offset of the first rejected character
  std::size_t sublanguages = 0;
  std::string gap;  // known-gap class of a failure, empty when unclassified
  bool ok() const { return left_ok && middle_ok && stop_ok; }
};

struct CorpusReport {
  std::size_t files = 0;
  std::vector<SplitResult> splits;
  std::vector<std::pair<std::string, std::string>> file_errors;
  std::map<std::size_t, std::size_t> histogram;  // sublanguage count -> splits
};

CorpusReport corpus_eval(std::shared_ptr<const fim::Language> lang, const std::string& dir, int splits,
                         std::uint64_t seed, SplitMode mode);
void write_report(const CorpusReport& r, std::ostream& out);

// Failure classes the supported subset leaves out, judged from the file text.
std::string classify_gap(const std::string& text);

}  // namespace fimq
