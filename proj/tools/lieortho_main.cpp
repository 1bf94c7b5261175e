// Command line front end. Every run emits a JSON certificate on stdout
// (or to --output) and signals the outcome through the exit code:
// 0 all verdicts pass, 2 usage or validation error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lieortho/commands.hpp"

namespace {

using lieortho::Json;
using lieortho::Mat;
using lieortho::RunConfig;

struct CliOptions {
  std::string family = "su";
  int         n      = 2;
  double      tol    = 1e-8;
  uint64_t    seed   = 0;
  int         max_iter = 10000;
  std::string strategy = "descent";
  std::string output;
  std::string input;
  int         samples = 200;
};

RunConfig to_config(const CliOptions& o) {
  RunConfig cfg;
  cfg.family = lieortho::family_from_string(o.family);
  cfg.n      = o.n;
  if (!(o.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  cfg.tol = o.tol;
  cfg.seed = o.seed;
  if (o.max_iter < 1) throw std::invalid_argument("--max-iter must be positive");
  cfg.max_iter = o.max_iter;
  if (o.strategy == "descent") {
    cfg.strategy = lieortho::GotoStrategy::descent;
  } else if (o.strategy == "coxeter") {
    cfg.strategy = lieortho::GotoStrategy::coxeter;
  } else {
    throw std::invalid_argument("--strategy must be descent or coxeter");
  }
  return cfg;
}

std::optional<Mat> load_input(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  const Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw std::invalid_argument("input file is not valid JSON: " + path);
  return lieortho::mat_from_json(doc);
}

int emit(const Json& cert, const std::string& output, bool pass, int fail_code) {
  const std::string text = cert.dump(2);
  if (output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write output file: " << output << "\n";
      return 2;
    }
    out << text << "\n";
  }
  return pass ? 0 : fail_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal Cartan subalgebras, Coxeter lifts, and bracket factorization"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string active;

  const auto add_common = [&](CLI::App* sub, bool with_input) {
    sub->add_option("--family", opt.family, "algebra family: su, so, or sp")
        ->required();
    sub->add_option("--n", opt.n, "family parameter")->required();
    sub->add_option("--tol", opt.tol, "residual tolerance for verdicts");
    sub->add_option("--seed", opt.seed, "seed for all randomized choices");
    sub->add_option("--max-iter", opt.max_iter, "iteration budget for descent");
    sub->add_option("--strategy", opt.strategy,
                    "factorization strategy: descent or coxeter");
    sub->add_option("--output", opt.output, "write the certificate here instead of stdout");
    if (with_input)
      sub->add_option("--input", opt.input,
                      "JSON file holding the element to process");
    sub->callback([&, sub] { active = sub->get_name(); });
  };

  add_common(app.add_subcommand("construct",
                                "build a Cartan subalgebra and an orthogonal partner"),
             false);
  add_common(app.add_subcommand("coxeter",
                                "lift a Coxeter element and check its fixed points"),
             false);
  add_common(app.add_subcommand("descend",
                                "rotate an element into the Cartan complement"),
             true);
  add_common(app.add_subcommand("factorize",
                                "write an element as a single bracket"),
             true);
  CLI::App* kostant = app.add_subcommand(
      "kostant", "sample a unitary orbit and test hull membership");
  add_common(kostant, true);
  kostant->add_option("--samples", opt.samples, "number of orbit samples");
  add_common(app.add_subcommand("suite", "run every check that applies"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig          cfg = to_config(opt);
    const std::optional<Mat> x   = load_input(opt.input);

    lieortho::CommandResult result;
    if (active == "construct") {
      result = lieortho::cmd_construct(cfg);
    } else if (active == "coxeter") {
      result = lieortho::cmd_coxeter(cfg);
    } else if (active == "descend") {
      result = lieortho::cmd_descend(cfg, x);
    } else if (active == "factorize") {
      result = lieortho::cmd_factorize(cfg, x);
    } else if (active == "kostant") {
      result = lieortho::cmd_kostant(cfg, opt.samples, x);
    } else {
      result = lieortho::cmd_suite(cfg);
    }
    return emit(result.certificate, opt.output, result.pass, 3);
  } catch (const std::invalid_argument& e) {
    const Json cert = lieortho::error_certificate(active, "validation", e.what());
    emit(cert, opt.output, false, 2);
    return 2;
  } catch (const lieortho::NumericalError& e) {
    const Json cert = lieortho::error_certificate(active, "numerical", e.what());
    emit(cert, opt.output, false, 3);
    return 3;
  }
}
