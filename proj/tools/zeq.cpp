// zeq: multiplicity sequences and equisingularity decisions from the command line.
//
//   zeq musq "z^2 - x*y"
//   zeq check-family "z^2 - x*y - t*x^2" --params t --mode harness
//   zeq curve-milnor "y^2 - x^3"
//   zeq corpus corpus/corpus.json --parallel 2
//
// Exit codes: 0 success, 1 corpus failures, 2 input error, 3 resource exhaustion.

#include <iostream>
#include <new>

#include "CLI11.hpp"
#include "zeq/cli/corpus.hpp"

using namespace zeq;
using zeq::cli::Json;

namespace {

enum Exit { kOk = 0, kCorpusFailures = 1, kInputError = 2, kExhausted = 3 };

void emit(const Json& j, const std::string& format) {
  if (format == "text") {
    if (j.value("command", "") == "corpus") cli::render_corpus_table(std::cout, j);
    else cli::render_text(std::cout, j);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

int fail(const std::string& kind, const std::string& what, const std::string& format, int code) {
  std::cerr << "zeq: " << what << "\n";
  if (format == "json") std::cout << Json{{"error", kind}, {"message", what}}.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicity sequences and Zariski equisingularity of surface germs"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::Options opt;
  std::string format = "json", params, expr, mode, path;
  app.add_option("--seed", opt.seed, "seed of the coordinate search")->capture_default_str();
  app.add_option("--max-precision", opt.max_precision, "precision ceiling (0: default)");
  app.add_option("--max-trials", opt.max_trials, "coordinate trials")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--params", params, "comma-separated parameter names, e.g. \"t,u\"");
  app.add_option("--parallel", opt.parallel, "corpus entries run concurrently")->check(CLI::PositiveNumber);

  auto* musq = app.add_subcommand("musq", "multiplicity sequence of a surface germ");
  musq->add_option("expression", expr, "polynomial in x, y, z")->required();
  auto* family = app.add_subcommand("check-family", "decide equisingularity of a family");
  family->add_option("expression", expr, "polynomial in x, y, z and the parameters")->required();
  family->add_option("--mode", mode, "ze, nutze, nustar or harness")
      ->required()
      ->check(CLI::IsMember({"ze", "nutze", "nustar", "harness"}));
  auto* curve = app.add_subcommand("curve-milnor", "Milnor number of a plane curve germ");
  curve->add_option("expression", expr, "polynomial in x, y")->required();
  auto* corpus = app.add_subcommand("corpus", "run a corpus file");
  corpus->add_option("path", path, "JSON corpus")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    opt.params = cli::split_params(params);
    if (*musq) emit(cli::musq_report(expr, opt), format);
    else if (*family) emit(cli::family_report(expr, mode, opt), format);
    else if (*curve) emit(cli::curve_milnor_report(expr, opt), format);
    else if (*corpus) {
      if (!opt.params.empty()) throw InputError("corpus entries declare their own parameters");
      auto results = cli::run_corpus(cli::load_corpus(path), opt);
      Json report = cli::corpus_report(results, opt);
      emit(report, format);
      return report["summary"]["failed"].get<std::size_t>() == 0 ? kOk : kCorpusFailures;
    }
    return kOk;
  } catch (const InputError& e) {
    return fail("input", e.what(), format, kInputError);
  } catch (const PrecisionExhausted& e) {
    return fail("precision_exhausted", e.what(), format, kExhausted);
  } catch (const TrialsExhausted& e) {
    return fail("trials_exhausted", e.what(), format, kExhausted);
  } catch (const std::bad_alloc&) {
    return fail("out_of_memory", "out of memory", format, kExhausted);
  } catch (const Error& e) {
    return fail("computation", e.what(), format, kExhausted);
  }
}
