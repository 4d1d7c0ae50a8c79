#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "fim/python3.hpp"
#include "fim/quotient.hpp"
#include "fim/session.hpp"
#include "json.hpp"

namespace fimq {

using namespace fim;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const Language> load_language(const BundlePaths& paths) {
  try {
    if (paths.grammar.empty() && paths.lexemes.empty()) return load_python_bundle(default_data_dir()).lang;
    if (paths.grammar.empty() || paths.lexemes.empty()) throw InputError("--grammar and --lexemes go together");
    const std::string lex = read_file(paths.lexemes), gram = read_file(paths.grammar);
    LexemeFile f = parse_lexeme_file(lex);
    if (f.has_indent) return make_python_bundle(lex, gram).lang;
    std::set<std::string> known;
    for (const auto& s : f.specs) known.insert(s.name);
    Grammar g = load_grammar(gram, &known);
    return std::make_shared<const Language>(make_language(std::move(f), std::move(g)));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

namespace {

std::string trim_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

// Byte regex relabelled onto the grammar's one-character terminals.
Nfa terminal_nfa(const Grammar& g, const std::string& pattern) {
  Nfa bytes = regex_to_nfa(pattern);
  Nfa out;
  for (int q = 0; q < bytes.size(); ++q) out.add_state();
  out.initial = bytes.initial;
  for (int q = 0; q < bytes.size(); ++q) {
    out.final[static_cast<std::size_t>(q)] = bytes.final[static_cast<std::size_t>(q)];
    for (auto [c, to] : bytes.out[static_cast<std::size_t>(q)]) {
      SymId t = g.find(std::string(1, static_cast<char>(c)));
      if (t == kNoSym || !g.is_terminal(t))
        throw InputError(std::string("regex symbol '") + static_cast<char>(c) + "' is not a grammar terminal");
      out.add_edge(q, t, to);
    }
  }
  out.finish();
  return out;
}

int grammar_quotient(const QuotientArgs& args, std::ostream& out) {
  Grammar g;
  std::string pattern;
  Nfa r;
  try {
    g = load_grammar(read_file(args.bundle.grammar));
    pattern = trim_newlines(read_file(args.right_path));
    r = terminal_nfa(g, pattern);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  Grammar q = args.left_side ? left_quotient(std::make_shared<const Grammar>(g), r) : right_quotient(g, r);
  out << "# " << (args.left_side ? "left" : "right") << " quotient by /" << pattern << "/, " << q.rules().size()
      << " rules\n"
      << dump_grammar(q);
  return 0;
}

const char* entry_name(const Sublanguage& s) {
  if (!s.layout) return "-";
  return s.layout->entry == LayoutRequirement::Entry::LineStart ? "line-start" : "mid-line";
}

}  // namespace

int cmd_quotient(const QuotientArgs& args, std::ostream& out) {
  if (args.bundle.lexemes.empty() && !args.bundle.grammar.empty()) return grammar_quotient(args, out);
  auto lang = load_language(args.bundle);
  const std::string right = read_file(args.right_path);
  BoundaryTable bt;
  auto subs = build_quotient(*lang, right, &bt);
  if (args.dump_grammar >= 0) {
    if (static_cast<std::size_t>(args.dump_grammar) >= subs.size())
      throw InputError("no sublanguage " + std::to_string(args.dump_grammar));
    out << dump_grammar(*subs[static_cast<std::size_t>(args.dump_grammar)].grammar);
    return 0;
  }
  out << "boundary indices:";
  for (int n : bt.indices()) out << ' ' << n;
  out << "\nsublanguages: " << subs.size() << '\n';
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const Sublanguage& s = subs[i];
    std::set<std::string> crossing;
    for (const auto& [g, st] : s.boundary_states) crossing.insert(lang->lexemes->name(g));
    out << '[' << i << "] skip=" << s.skip << " crossing=";
    if (crossing.empty()) out << '-';
    for (auto it = crossing.begin(); it != crossing.end(); ++it) out << (it == crossing.begin() ? "" : ",") << *it;
    out << " rules=" << s.grammar->rules().size() << " nonterminals=" << s.grammar->nonterminals().size()
        << " entry=" << entry_name(s);
    if (s.layout) out << " depth=" << s.layout->depth;
    out << "\n    pattern: " << s.pattern << '\n';
  }
  return 0;
}

int cmd_check(const BundlePaths& bundle, const std::string& left_path, const std::string& middle_path,
              const std::string& right_path, std::ostream& out) {
  auto lang = load_language(bundle);
  const std::string left = read_file(left_path), middle = read_file(middle_path), right = read_file(right_path);
  auto s = Session::open(lang, left, right);
  if (!s.alive()) {
    out << "rejected in left context\n";
    return 1;
  }
  for (std::size_t k = 0; k < middle.size(); ++k) {
    s = s.advance(middle[k]);
    if (!s.alive()) {
      out << "rejected at offset " << k << '\n';
      return 1;
    }
  }
  const bool stop = s.may_stop();
  out << "accepted, may_stop=" << (stop ? "true" : "false") << '\n';
  return stop ? 0 : 1;
}

namespace {

class Server {
 public:
  explicit Server(std::shared_ptr<const Language> lang) : lang_(std::move(lang)) {}

  json handle(const json& req) {
    if (!req.is_object()) return error(nullptr, "request must be an object");
    const std::string op = req.value("op", "");
    json id = req.contains("id") ? req["id"] : json(nullptr);
    try {
      if (op == "open") return open(req);
      if (op == "vocab") return vocab(req);
      if (op.empty()) return error(id, "missing op");
      Session& s = session(id);
      if (op == "advance") {
        s = s.advance(req.contains("char") ? text_field(req, "char") : text_field(req, "text"));
        return state(id, s);
      }
      if (op == "advance_token") {
        s = s.advance(token_text(req));
        return state(id, s);
      }
      if (op == "may_stop") return state(id, s);
      if (op == "mask") {
        json r = state(id, s);
        r["mask"] = s.token_mask(request_vocab(req));
        return r;
      }
      if (op == "fork") {
        const std::int64_t fresh = next_session_++;
        auto it = sessions_.emplace(fresh, s).first;
        return state(fresh, it->second);
      }
      if (op == "close") {
        json r = state(id, s);
        sessions_.erase(id.get<std::int64_t>());
        return r;
      }
      return error(id, "unknown op: " + op);
    } catch (const std::exception& e) {
      return error(id, e.what());
    }
  }

  static json error(const json& id, const std::string& msg) {
    return {{"id", id}, {"alive", false}, {"may_stop", false}, {"error", msg}};
  }

 private:
  static json state(const json& id, const Session& s) {
    return {{"id", id}, {"alive", s.alive()}, {"may_stop", s.may_stop()}};
  }

  static std::string text_field(const json& req, const char* key) {
    if (!req.contains(key) || !req[key].is_string()) throw std::runtime_error(std::string("missing ") + key);
    return req[key].get<std::string>();
  }

  json open(const json& req) {
    const std::string left = req.value("left", ""), right = req.value("right", "");
    auto it = quotients_.find(right);
    if (it == quotients_.end()) it = quotients_.emplace(right, make_quotient(lang_, right)).first;
    const std::int64_t fresh = next_session_++;
    auto s = sessions_.emplace(fresh, Session::open(it->second, left)).first;
    return state(fresh, s->second);
  }

  json vocab(const json& req) {
    if (!req.contains("tokens") || !req["tokens"].is_array()) throw std::runtime_error("missing tokens");
    const std::int64_t fresh = next_vocab_++;
    vocabs_.emplace(fresh, Vocabulary(req["tokens"].get<std::vector<std::string>>(), req.value("eos", -1)));
    return {{"vocab", fresh}};
  }

  Session& session(const json& id) {
    if (!id.is_number_integer()) throw std::runtime_error("missing id");
    auto it = sessions_.find(id.get<std::int64_t>());
    if (it == sessions_.end()) throw std::runtime_error("unknown session " + id.dump());
    return it->second;
  }

  const Vocabulary& request_vocab(const json& req) {
    if (req.contains("tokens")) {
      scratch_ = std::make_unique<Vocabulary>(req["tokens"].get<std::vector<std::string>>(), req.value("eos", -1));
      return *scratch_;
    }
    if (!req.contains("vocab") || !req["vocab"].is_number_integer()) throw std::runtime_error("missing vocab");
    auto it = vocabs_.find(req["vocab"].get<std::int64_t>());
    if (it == vocabs_.end()) throw std::runtime_error("unknown vocab " + req["vocab"].dump());
    return it->second;
  }

  std::string token_text(const json& req) {
    if (req.contains("token")) return text_field(req, "token");
    const Vocabulary& v = request_vocab(req);
    const int t = req.value("token_id", -1);
    if (t < 0 || t >= v.size()) throw std::runtime_error("bad token_id");
    return t == v.eos() ? std::string() : v.text(t);
  }

  std::shared_ptr<const Language> lang_;
  std::map<std::string, std::shared_ptr<const Quotient>> quotients_;
  std::map<std::int64_t, Session> sessions_;
  std::map<std::int64_t, Vocabulary> vocabs_;
  std::unique_ptr<Vocabulary> scratch_;
  std::int64_t next_session_ = 1;
  std::int64_t next_vocab_ = 1;
};

}  // namespace

int cmd_serve(std::shared_ptr<const Language> lang, std::istream& in, std::ostream& out) {
  Server server(std::move(lang));
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json resp;
    try {
      resp = server.handle(json::parse(line));
    } catch (const json::exception& e) {
      resp = Server::error(nullptr, std::string("malformed request: ") + e.what());
    }
    out << resp.dump() << '\n' << std::flush;
  }
  return 0;
}

std::string classify_gap(const std::string& text) {
  static const std::regex tab_indent("(^|\n)[ ]*\t");
  static const std::regex fstring("(^|[^A-Za-z0-9_'\"])[rRbB]?[fF][rR]?['\"]");
  if (std::regex_search(text, tab_indent)) return "tab-indentation";
  if (std::regex_search(text, fstring)) return "f-string-interior";
  return "";
}

CorpusReport corpus_eval(std::shared_ptr<const Language> lang, const std::string& dir, int splits,
                         std::uint64_t seed, SplitMode mode) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".py") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  CorpusReport rep;
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    std::string text;
    try {
      text = read_file(path.string());
    } catch (const InputError& e) {
      rep.file_errors.emplace_back(name, e.what());
      continue;
    }
    auto lx = batch_lex(*lang->lexemes, text, lang->mode);
    if (!lx.ok) {
      rep.file_errors.emplace_back(name, "lexing fails at offset " + std::to_string(lx.error_at));
      continue;
    }
    ++rep.files;
    std::set<std::size_t> cuts{0, text.size()};
    for (const auto& x : lx.symbols) {
      cuts.insert(x.start);
      cuts.insert(x.start + x.length);
    }
    const std::vector<std::size_t> bounds(cuts.begin(), cuts.end());
    const std::size_t n = text.size(), lo = n / 10, hi = n * 9 / 10;
    for (int k = 0; k < splits; ++k) {
      SplitResult r;
      r.file = name;
      if (mode == SplitMode::Random) {
        r.begin = pick(lo, hi);
        r.end = pick(r.begin, n);
      } else {
        std::vector<std::size_t> starts;
        for (std::size_t b : bounds)
          if (b >= lo && b <= hi) starts.push_back(b);
        if (starts.empty()) starts = bounds;
        r.begin = starts[pick(0, starts.size() - 1)];
        auto after = std::upper_bound(bounds.begin(), bounds.end(), r.begin);
        r.end = after == bounds.end() ? r.begin : *(after + static_cast<long>(pick(0, static_cast<std::size_t>(bounds.end() - after) - 1)));
      }
      auto q = make_quotient(lang, std::string_view(text).substr(r.end));
      r.sublanguages = q->subs.size();
      auto s = Session::open(q, std::string_view(text).substr(0, r.begin));
      r.left_ok = s.alive();
      r.middle_ok = r.left_ok;
      r.reject_at = r.begin;
      for (std::size_t i = r.begin; i < r.end && r.middle_ok; ++i) {
        s = s.advance(text[i]);
        if (!s.alive()) {
          r.middle_ok = false;
          r.reject_at = i;
        }
      }
      r.stop_ok = r.middle_ok && s.may_stop();
      if (!r.ok()) r.gap = classify_gap(text);
      ++rep.histogram[r.sublanguages];
      rep.splits.push_back(std::move(r));
    }
  }
  return rep;
}

void write_report(const CorpusReport& r, std::ostream& out) {
  std::size_t left = 0, middle = 0, stop = 0, ok = 0;
  for (const auto& s : r.splits) {
    left += s.left_ok;
    middle += s.middle_ok;
    stop += s.stop_ok;
    ok += s.ok();
  }
  out << "section,key,value\n";
  out << "summary,files," << r.files << '\n';
  out << "summary,splits," << r.splits.size() << '\n';
  out << "summary,left_parsable," << left << '\n';
  out << "summary,middle_accepted," << middle << '\n';
  out << "summary,may_stop," << stop << '\n';
  out << "summary,accepted," << ok << '\n';
  for (const auto& [count, splits] : r.histogram) out << "histogram," << count << ',' << splits << '\n';
  for (const auto& s : r.splits) {
    if (s.ok()) continue;
    const char* stage = !s.left_ok ? "left" : !s.middle_ok ? "middle" : "may_stop";
    out << "failure," << s.file << ':' << s.begin << '-' << s.end << ',' << stage << '@' << s.reject_at << '/'
        << (s.gap.empty() ? "unclassified" : s.gap) << '\n';
  }
  for (const auto& [file, msg] : r.file_errors) out << "file_error," << file << ',' << msg << '\n';
}

}  // namespace fimq
