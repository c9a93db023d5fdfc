// superlogic: symbols of gate circuits, invariant suites and automaton words.
//
//   superlogic symbol <file>
//   superlogic verify {algebra|symbols|gates|composer|automaton|all}
//   superlogic automaton <file> [--method matrix|convolution|pathint|compare]
//                               [--slices n] [--drop-odd-term] [--show-action]
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "superlogic/automaton.hpp"
#include "superlogic/composer.hpp"
#include "superlogic/parser.hpp"
#include "superlogic/verify.hpp"

using namespace superlogic;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;
constexpr double kWordTolerance = 1e-10;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_symbol(const std::string& path) {
  auto input = parse_input(read_file(path));
  GeneratorPool pool;
  if (auto* tree = std::get_if<CircuitNode>(&input)) {
    auto gate = build_circuit(pool, *tree);
    std::cout << render(gate.display_symbol().value) << "\n";
  } else {
    auto symbol = word_symbol_convolution(pool, std::get<Word>(input));
    std::cout << render(symbol.value) << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& scope) {
  bool ok = true;
  for (const auto& report : run_verification(scope)) {
    std::cout << report.render();
    ok = ok && report.ok();
  }
  std::cout << (ok ? "verify: all checks passed\n" : "verify: some checks FAILED\n");
  return ok ? kOk : kVerificationFailure;
}

struct AutomatonArgs {
  std::string path;
  std::string method = "compare";
  int slices = 1;
  bool drop_odd = false;
  bool show_action = false;
};

void print_row(const char* method, const SymbolExpr* symbol, const SymbolExpr& reference,
               bool& all_ok) {
  if (!symbol) {
    std::printf("%-12s %14s %14s %s\n", method, "n/a", "n/a", "SKIP");
    return;
  }
  double dev = max_abs_diff(symbol->value, reference.value);
  bool ok = dev <= kWordTolerance;
  all_ok = all_ok && ok;
  std::printf("%-12s %14.6e %14.6e %s\n", method, max_abs_coeff(symbol->value), dev,
              ok ? "PASS" : "FAIL");
}

int cmd_automaton(const AutomatonArgs& args) {
  auto input = parse_input(read_file(args.path));
  if (!std::holds_alternative<Word>(input)) {
    throw InputError(args.path + ": expected a word (one letter per line), found a circuit");
  }
  const Word word = refine(std::get<Word>(input), args.slices);
  GeneratorPool pool;
  PathIntegralOptions options;
  options.drop_odd_term = args.drop_odd;

  if (args.show_action) {
    auto action = render_superaction(pool, word);
    std::cout << "kinetic:     " << action.kinetic << "\n"
              << "hamiltonian: " << action.hamiltonian << "\n"
              << "correction:  " << action.correction << "\n";
  }
  if (args.method == "matrix") {
    std::cout << render(covariant_symbol(pool, word_matrix(word)).value) << "\n";
    return kOk;
  }
  if (args.method == "convolution") {
    std::cout << render(word_symbol_convolution(pool, word).value) << "\n";
    return kOk;
  }
  if (args.method == "pathint") {
    std::cout << render(word_symbol_path_integral(pool, word, options).value) << "\n";
    return kOk;
  }

  auto report = compare_word(pool, word, options);
  std::string letters;
  for (const auto& l : word.letters) {
    char buf[64];
    if (l.phi)
      std::snprintf(buf, sizeof buf, "%s(%.12g) ", l.gate.c_str(), *l.phi);
    else
      std::snprintf(buf, sizeof buf, "%s ", l.gate.c_str());
    letters += buf;
  }
  std::printf("word: %s(%zu letters)\n", letters.c_str(), word.letters.size());
  std::printf("%-12s %14s %14s %s\n", "method", "max|coeff|", "deviation", "status");
  bool ok = true;
  print_row("matrix", &report.matrix_symbol, report.matrix_symbol, ok);
  print_row("convolution", &report.convolution, report.matrix_symbol, ok);
  print_row(args.drop_odd ? "pathint-noO" : "pathint",
            report.path_integral ? &*report.path_integral : nullptr, report.matrix_symbol, ok);
  std::printf("max deviation %.6e (tolerance %.0e)\n", report.max_deviation(), kWordTolerance);
  return ok ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmann symbols of qubit gates, circuits and automata"};
  app.require_subcommand(1);

  std::string symbol_path;
  auto* symbol = app.add_subcommand("symbol", "Print the symbol of a circuit or word file");
  symbol->add_option("path", symbol_path, "Circuit or word file")->required();

  std::string scope;
  std::vector<std::string> scopes = verify_scopes();
  scopes.push_back("all");
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("scope", scope, "Suite to run")->required()->check(CLI::IsMember(scopes));

  AutomatonArgs autom;
  auto* automaton = app.add_subcommand("automaton", "Evaluate a word file");
  automaton->add_option("path", autom.path, "Word file")->required();
  automaton->add_option("--method", autom.method, "Evaluation route")
      ->check(CLI::IsMember({"matrix", "convolution", "pathint", "compare"}))
      ->capture_default_str();
  automaton->add_option("--slices", autom.slices, "Split each deutsch_prime letter into n equal letters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  automaton->add_flag("--drop-odd-term", autom.drop_odd, "Omit the odd-part correction terms");
  automaton->add_flag("--show-action", autom.show_action, "Print the discrete action");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*symbol) return cmd_symbol(symbol_path);
    if (*verify) return cmd_verify(scope);
    return cmd_automaton(autom);
  } catch (const ParseError& e) {
    const std::string& path = *symbol ? symbol_path : autom.path;
    std::cerr << path << ":" << e.diagnostic() << "\n";
    return kUsageError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ComposeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
