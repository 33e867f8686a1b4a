// rigidlab command-line front end. Links only the C interface.
//
// Exit status: 0 definite positive, 1 definite negative, 2 indeterminate
// (a bound stopped the search), 3 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rigidlab/rigidlab.h"

namespace {

constexpr int kUsageError = 3;

struct BoundsOptions {
  uint32_t depth = 16;
  uint32_t slack = 8;
  uint32_t size_cap = 0;
  uint64_t node_budget = 1'000'000;
  uint32_t jobs = 1;

  rl_bounds get() const { return rl_bounds{depth, slack, size_cap, node_budget, jobs}; }
};

void add_bounds(CLI::App* cmd, BoundsOptions& b) {
  cmd->add_option("--depth", b.depth, "Maximum derivation length")->capture_default_str();
  cmd->add_option("--slack", b.slack, "Size cap above the larger goal term")->capture_default_str();
  cmd->add_option("--size-cap", b.size_cap, "Explicit term size cap (0: use slack)")->capture_default_str();
  cmd->add_option("--budget", b.node_budget, "Maximum expanded terms per search")->capture_default_str();
  cmd->add_option("--jobs", b.jobs, "Worker threads")->capture_default_str();
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << text;
}

// Prints the document and maps the outcome to an exit status.
int finish(rl_status st, rl_outcome outcome, char* json) {
  if (st != RL_OK) {
    std::cerr << "error: " << rl_last_error() << "\n";
    return kUsageError;
  }
  std::cout << json << "\n";
  rl_string_free(json);
  static const char* names[] = {"positive", "negative", "indeterminate"};
  std::cerr << "outcome: " << names[outcome] << "\n";
  return static_cast<int>(outcome);
}

int load_error() {
  std::cerr << "error: " << rl_last_error() << "\n";
  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigidlab: linear-regular theories, bounded proof search and the word-problem reduction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rl_version()));

  BoundsOptions defaults;
  if (const char* env = std::getenv("RIGIDLAB_NODE_BUDGET")) {
    try {
      defaults.node_budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: RIGIDLAB_NODE_BUDGET is not a number\n";
      return kUsageError;
    }
  }

  BoundsOptions bounds = defaults;
  std::string theory_path, equation, derivation_path, instance_path, interp_path, symbol, term, w1, w2;
  std::string out_dir = ".", name;
  uint32_t max_size = 8, max_context = 4, term_size = 5, context = 0;

  auto* prove = app.add_subcommand("prove", "Search for a derivation of an equation");
  prove->add_option("theory", theory_path, "Theory file (.thy)")->required();
  prove->add_option("equation", equation, "Equation '[n] lhs = rhs'")->required();
  add_bounds(prove, bounds);

  auto* replay = app.add_subcommand("replay", "Check a derivation certificate");
  replay->add_option("theory", theory_path, "Theory file (.thy)")->required();
  replay->add_option("derivation", derivation_path, "Derivation JSON ('-' for stdin)")->required();

  auto* census = app.add_subcommand("census", "Count a symbol along a derivation");
  census->add_option("theory", theory_path, "Theory file (.thy)")->required();
  census->add_option("derivation", derivation_path, "Derivation JSON ('-' for stdin)")->required();
  census->add_option("--symbol", symbol, "Symbol to count")->required();

  auto* reduce = app.add_subcommand("reduce", "Compile a word-problem instance into T, T0 and I");
  reduce->add_option("instance", instance_path, "Word-problem file (.wp)")->required();
  reduce->add_option("--out-dir", out_dir, "Directory for the generated files")->capture_default_str();
  reduce->add_option("--name", name, "Base name of the generated files (default: instance stem)");

  auto* rigidity = app.add_subcommand("rigidity", "Rigidity tools");
  rigidity->require_subcommand(1);
  auto* search = rigidity->add_subcommand("search", "Search for a flabby term");
  search->add_option("theory", theory_path, "Theory file (.thy)")->required();
  search->add_option("--max-size", max_size, "Largest term size enumerated")->capture_default_str();
  search->add_option("--max-context", max_context, "Largest context enumerated")->capture_default_str();
  add_bounds(search, bounds);

  auto* hat = app.add_subcommand("hat", "Normalize a term of the compiled theory onto special terms");
  hat->add_option("instance", instance_path, "Word-problem file (.wp)")->required();
  hat->add_option("term", term, "Term over the compiled signature")->required();
  hat->add_option("--context", context, "Context length (default: largest variable)");
  add_bounds(hat, bounds);

  auto* word = app.add_subcommand("word", "Semi-decide equality of two words");
  word->add_option("instance", instance_path, "Word-problem file (.wp)")->required();
  word->add_option("w1", w1, "First word ('eps' for empty)")->required();
  word->add_option("w2", w2, "Second word ('eps' for empty)")->required();
  add_bounds(word, bounds);

  auto* cons = app.add_subcommand("conservativity", "Probe conservativity of an interpretation");
  cons->add_option("interpretation", interp_path, "Interpretation file (.itp)")->required();
  cons->add_option("--term-size", term_size, "Largest source term size")->capture_default_str();
  add_bounds(cons, bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  const rl_bounds b = bounds.get();
  rl_outcome outcome = RL_INDETERMINATE;
  char* json = nullptr;

  try {
    if (prove->parsed() || replay->parsed() || census->parsed() || search->parsed()) {
      rl_theory* th = nullptr;
      if (rl_theory_load(theory_path.c_str(), &th) != RL_OK) return load_error();
      std::unique_ptr<rl_theory, decltype(&rl_theory_free)> guard(th, rl_theory_free);
      rl_status st;
      if (prove->parsed()) {
        st = rl_prove(th, equation.c_str(), &b, &outcome, &json);
      } else if (search->parsed()) {
        st = rl_rigidity_search(th, max_size, max_context, &b, &outcome, &json);
      } else {
        auto doc = read_input(derivation_path);
        st = replay->parsed() ? rl_replay(th, doc.c_str(), &outcome, &json)
                              : rl_census(th, doc.c_str(), symbol.c_str(), &outcome, &json);
      }
      return finish(st, outcome, json);
    }

    if (reduce->parsed() || hat->parsed() || word->parsed()) {
      rl_instance* inst = nullptr;
      if (rl_instance_load(instance_path.c_str(), &inst) != RL_OK) return load_error();
      std::unique_ptr<rl_instance, decltype(&rl_instance_free)> guard(inst, rl_instance_free);
      if (hat->parsed() || word->parsed()) {
        const rl_status st = hat->parsed() ? rl_hat(inst, term.c_str(), context, &b, &outcome, &json)
                                           : rl_word(inst, w1.c_str(), w2.c_str(), &b, &outcome, &json);
        return finish(st, outcome, json);
      }

      rl_theory* compiled = nullptr;
      rl_interp* interp = nullptr;
      if (rl_reduce(inst, &compiled, &interp) != RL_OK) return load_error();
      std::unique_ptr<rl_theory, decltype(&rl_theory_free)> g1(compiled, rl_theory_free);
      std::unique_ptr<rl_interp, decltype(&rl_interp_free)> g2(interp, rl_interp_free);
      rl_theory* t0 = nullptr;
      if (rl_theory_t0(&t0) != RL_OK) return load_error();
      std::unique_ptr<rl_theory, decltype(&rl_theory_free)> g3(t0, rl_theory_free);

      if (name.empty()) name = std::filesystem::path(instance_path).stem().string();
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      const std::string thy_name = name + ".thy", t0_name = "t0.thy", itp_name = name + ".itp";

      char *thy_text = nullptr, *t0_text = nullptr, *itp_text = nullptr;
      if (rl_theory_render(compiled, &thy_text) != RL_OK || rl_theory_render(t0, &t0_text) != RL_OK ||
          rl_interp_render(interp, t0_name.c_str(), thy_name.c_str(), &itp_text) != RL_OK) {
        return load_error();
      }
      std::string thy(thy_text), t0s(t0_text), itp(itp_text);
      rl_string_free(thy_text);
      rl_string_free(t0_text);
      rl_string_free(itp_text);
      write_file(dir / thy_name, thy);
      write_file(dir / t0_name, t0s);
      write_file(dir / itp_name, itp);

      auto count = [](const std::string& text, const std::string& prefix) {
        std::size_t n = 0;
        for (std::size_t p = 0; (p = text.find(prefix, p)) != std::string::npos; p += prefix.size()) {
          if (p == 0 || text[p - 1] == '\n') ++n;
        }
        return n;
      };
      nlohmann::json doc{{"theory_file", (dir / thy_name).string()},
                         {"t0_file", (dir / t0_name).string()},
                         {"interpretation_file", (dir / itp_name).string()},
                         {"axioms", count(thy, "axiom ")},
                         {"maps", count(itp, "map ")},
                         {"outcome", "positive"}};
      std::cout << doc.dump(2) << "\n";
      std::cerr << "wrote " << (dir / thy_name).string() << ", " << (dir / t0_name).string() << ", "
                << (dir / itp_name).string() << "\n";
      return 0;
    }

    if (cons->parsed()) {
      rl_interp* interp = nullptr;
      if (rl_interp_load(interp_path.c_str(), &interp) != RL_OK) return load_error();
      std::unique_ptr<rl_interp, decltype(&rl_interp_free)> guard(interp, rl_interp_free);
      const rl_status st = rl_conservativity(interp, term_size, &b, &outcome, &json);
      return finish(st, outcome, json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
