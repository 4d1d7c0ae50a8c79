#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fimq: fill-in-the-middle grammar constraints"};
  app.require_subcommand(1);

  fimq::BundlePaths bundle;
  auto add_bundle = [&bundle](CLI::App* cmd) {
    cmd->add_option("--grammar", bundle.grammar, "BNF grammar file (default: bundled Python)");
    cmd->add_option("--lexemes", bundle.lexemes, "lexeme file (default: bundled Python)");
  };

  fimq::QuotientArgs qa;
  std::string side = "right";
  auto* quotient = app.add_subcommand("quotient", "print the sublanguages for a right context");
  add_bundle(quotient);
  quotient->add_option("--right", qa.right_path, "right context file (a terminal regex without --lexemes)")->required();
  quotient->add_option("--dump-grammar", qa.dump_grammar, "print sublanguage N's grammar");
  quotient->add_option("--side", side, "grammar-only mode: quotient side")->check(CLI::IsMember({"left", "right"}));

  std::string left, middle, right;
  auto* check = app.add_subcommand("check", "replay a middle between two contexts");
  add_bundle(check);
  check->add_option("--left", left)->required();
  check->add_option("--middle", middle)->required();
  check->add_option("--right", right)->required();

  auto* serve = app.add_subcommand("serve", "JSON-lines session daemon on stdin/stdout");
  add_bundle(serve);

  std::string corpus, mode = "boundary", csv;
  int splits = 10;
  std::uint64_t seed = 0;
  auto* eval = app.add_subcommand("corpus-eval", "split corpus files and replay the middles");
  add_bundle(eval);
  eval->add_option("--corpus", corpus, "directory of .py files")->required();
  eval->add_option("--splits", splits, "splits per file")->check(CLI::NonNegativeNumber);
  eval->add_option("--seed", seed)->required();
  eval->add_option("--mode", mode)->check(CLI::IsMember({"boundary", "random"}));
  eval->add_option("--csv", csv, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*quotient) {
      qa.bundle = bundle;
      qa.left_side = side == "left";
      return fimq::cmd_quotient(qa, std::cout);
    }
    if (*check) return fimq::cmd_check(bundle, left, middle, right, std::cout);
    if (*serve) return fimq::cmd_serve(fimq::load_language(bundle), std::cin, std::cout);
    if (*eval) {
      auto report = fimq::corpus_eval(fimq::load_language(bundle), corpus, splits, seed,
                                      mode == "random" ? fimq::SplitMode::Random : fimq::SplitMode::Boundary);
      if (csv.empty()) {
        fimq::write_report(report, std::cout);
      } else {
        std::ofstream out(csv);
        if (!out) throw fimq::InputError("cannot write " + csv);
        fimq::write_report(report, out);
      }
      return 0;
    }
  } catch (const fimq::InputError& e) {
    std::cerr << "fimq: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
