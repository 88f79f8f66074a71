// Command-line front end: spectral analysis and core computation for
// nonnegative matrices in max-times and nonnegative algebra, plus the
// randomized verification harness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tropicore/io.hpp"

using namespace tropicore;

namespace {

Tolerance tolerance_from_env() {
  Tolerance tol;
  if (const char* env = std::getenv("TROPICORE_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) tol.rel_eps = v;
  }
  return tol;
}

std::vector<Semiring> parse_algebra(const std::string& name) {
  if (name == "max") return {Semiring::MaxTimes};
  if (name == "nonneg") return {Semiring::PlusTimes};
  if (name == "both") return {Semiring::MaxTimes, Semiring::PlusTimes};
  throw Error("unknown algebra: " + name + " (expected max, nonneg or both)",
              Error::InvalidArgument);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write output file: " + path, Error::Generic);
  out << text;
}

int run_analyze(const std::string& input, const std::string& algebra, long power, double rho,
                bool have_rho, const std::string& format, double tol_flag,
                const std::string& outpath) {
  Tolerance tol = tolerance_from_env();
  if (tol_flag > 0.0) tol.rel_eps = tol_flag;
  auto algebras = parse_algebra(algebra);

  if (format == "dot") {
    Matrix a = load_matrix(input, algebras.front());
    write_output(dot_export(a, tol), outpath);
    return 0;
  }
  if (format != "json")
    throw Error("unknown output format: " + format + " (expected json or dot)",
                Error::InvalidArgument);

  AnalyzeOptions opt;
  opt.power = power;
  if (have_rho) opt.rho = rho;

  ordered_json out;
  if (algebras.size() == 1) {
    Matrix a = load_matrix(input, algebras.front());
    out = analysis_report(a, algebras.front(), tol, opt);
  } else {
    Matrix a = load_matrix(input, Semiring::MaxTimes);
    out["max"] = analysis_report(a, Semiring::MaxTimes, tol, opt);
    out["nonneg"] = analysis_report(a, Semiring::PlusTimes, tol, opt);
  }
  write_output(out.dump(2) + "\n", outpath);
  return 0;
}

int run_verify(std::uint64_t seed, int trials, int size, const std::string& algebra,
               double tol_flag, const std::string& witness_dir) {
  Tolerance tol = tolerance_from_env();
  if (tol_flag > 0.0) tol.rel_eps = tol_flag;
  auto algebras = parse_algebra(algebra);

  int failures = 0;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Matrix a = (t % 2 == 0) ? random_matrix(rng, size, Semiring::MaxTimes)
                            : random_structured(rng, size, Semiring::MaxTimes);
    for (Semiring sr : algebras) {
      OracleReport rep = verify_bundle(a, sr, seed + static_cast<std::uint64_t>(t), tol);
      int bad = 0;
      for (const auto& c : rep.checks)
        if (!c.pass) ++bad;
      std::cout << "trial " << t << " " << semiring_name(sr) << ": " << rep.checks.size()
                << " checks, " << bad << " failed\n";
      if (bad > 0) {
        ++failures;
        std::string path = witness_dir + "/witness_" + std::to_string(seed) + "_" +
                           std::to_string(t) + "_" + semiring_name(sr) + ".json";
        ordered_json j = oracle_report_json(rep);
        j["matrix"] = matrix_to_json(a);
        std::ofstream out(path);
        if (out) {
          out << j.dump(2) << "\n";
          std::cerr << "witness written to " << path << "\n";
        }
      }
    }
  }
  if (failures > 0) {
    std::cerr << failures << " trial(s) failed\n";
    return Error::Internal;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-semiring spectral analysis: eigencones, periodicity and the matrix core"};
  app.require_subcommand(1);

  std::string input, algebra = "max", format = "json", outpath;
  long power = 1;
  double rho = 0.0, tol_flag = 0.0;
  bool have_rho = false;

  CLI::App* analyze = app.add_subcommand("analyze", "analyze one matrix file (json or csv)");
  analyze->add_option("input", input, "matrix file")->required();
  analyze->add_option("--algebra", algebra, "max, nonneg or both")
      ->check(CLI::IsMember({"max", "nonneg", "both"}));
  analyze->add_option("--power", power, "report eigencones of this matrix power")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--rho", rho, "restrict eigencones to this eigenvalue")
      ->each([&](const std::string&) { have_rho = true; });
  analyze->add_option("--out", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  analyze->add_option("--tol", tol_flag, "relative comparison tolerance");
  analyze->add_option("--output", outpath, "write to this file instead of stdout");

  std::uint64_t seed = 1;
  int trials = 10, size = 5;
  std::string verify_algebra = "both", witness_dir = ".";
  CLI::App* verify = app.add_subcommand("verify", "run the oracle bundle on random instances");
  verify->add_option("--seed", seed, "rng seed");
  verify->add_option("--trials", trials, "number of random instances")->check(CLI::PositiveNumber);
  verify->add_option("--size", size, "matrix dimension")->check(CLI::Range(1, 8));
  verify->add_option("--algebra", verify_algebra, "max, nonneg or both")
      ->check(CLI::IsMember({"max", "nonneg", "both"}));
  verify->add_option("--tol", tol_flag, "relative comparison tolerance");
  verify->add_option("--witness-dir", witness_dir, "directory for failure witnesses");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed())
      return run_analyze(input, algebra, power, rho, have_rho, format, tol_flag, outpath);
    return run_verify(seed, trials, size, verify_algebra, tol_flag, witness_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Error::Generic;
  }
}
