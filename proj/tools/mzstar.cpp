// mzstar: evaluate, expand and verify multiple zeta star values from the command line.
//
// Exit status: 0 success, 1 verification failure, 2 usage or parse error, 3 divergent input.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "mzstar/chain.hpp"
#include "mzstar/error.hpp"
#include "mzstar/index.hpp"
#include "mzstar/numeric.hpp"
#include "mzstar/suites.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDivergent = 3;

using mzstar::SignedIndex;

struct EvalArgs {
  std::string kind;
  std::string index;
  std::uint64_t terms = 1000000;
  unsigned precision = 128;
  bool json = false;
};

struct ExpandArgs {
  std::string index;
  bool trailing_one = false;
  bool json = false;
};

struct VerifyArgs {
  std::string suite;
  mzstar::SuiteConfig cfg;
  std::optional<std::uint64_t> n_max;
  std::optional<std::size_t> d_max;
  std::optional<unsigned> a_max;
  std::optional<double> tol;
  unsigned jobs = 1;
};

void print_line(const nlohmann::ordered_json& j) {
  const std::string line = j.dump() + "\n";
  std::fwrite(line.data(), 1, line.size(), stdout);
  std::fflush(stdout);
}

nlohmann::ordered_json combination_json(const mzstar::EulerCombination& comb, nlohmann::ordered_json meta) {
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [key, coeff] : comb.terms())
    terms.push_back({{"index", key.to_signed()}, {"coeff", mzstar::to_string(coeff)}});
  return {{"terms", terms}, {"meta", std::move(meta)}};
}

int run_eval(const EvalArgs& a) {
  const SignedIndex s = mzstar::parse_index(a.index);
  const bool star = a.kind == "star";
  const auto r = star ? mzstar::star_numeric(s, a.terms, a.precision) : mzstar::euler_numeric(s, a.terms, a.precision);
  const int digits = static_cast<int>(a.precision * 0.30103);
  if (a.json) {
    print_line({{"kind", a.kind},
                {"index", s.to_signed()},
                {"value", r.value.to_string(digits)},
                {"terms_used", r.terms_used},
                {"tail_estimate", r.tail_estimate.to_double()},
                {"precision", a.precision}});
  } else {
    std::cout << (star ? "Z*(" : "Z(") << mzstar::render(s) << ") = " << r.value.to_string(digits) << "\n"
              << "terms_used = " << r.terms_used << "\n"
              << "tail_estimate = " << r.tail_estimate.to_string(6) << "\n";
  }
  return 0;
}

int run_expand(const ExpandArgs& a) {
  const SignedIndex s = mzstar::parse_index(a.index);
  const auto t = mzstar::detect_two_block(s, a.trailing_one);
  const auto comb = mzstar::expand_chain(mzstar::build_chain(t));
  if (a.json) {
    nlohmann::ordered_json meta{{"input", mzstar::render(s)}};
    meta.update(mzstar::two_block_json(t));
    print_line(combination_json(comb, std::move(meta)));
  } else {
    std::cout << mzstar::render(comb) << "\n";
  }
  return 0;
}

int run_verify(VerifyArgs a) {
  a.cfg.n_max = a.n_max;
  a.cfg.d_max = a.d_max;
  a.cfg.a_max = a.a_max;
  a.cfg.tol = a.tol;
  if (a.cfg.tol && !(*a.cfg.tol > 0)) throw CLI::ValidationError("--tol", "must be positive");
  const auto cases = mzstar::build_suite(a.suite, a.cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto summary = mzstar::run_cases(cases, a.jobs, [](const mzstar::CaseResult& r) { print_line(r.json); });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "verify " << a.suite << ": " << summary.cases << " cases, " << summary.cases - summary.failed
            << " passed, " << summary.failed << " failed (" << secs << " s)\n";
  return summary.failed == 0 ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple zeta star values: evaluation, duality expansion, identity verification"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Truncated numeric value of a star or strict (Euler) sum");
  eval->add_option("kind", eval_args.kind, "star or strict")->required()->check(CLI::IsMember({"star", "strict"}));
  eval->add_option("index", eval_args.index, "Comma-separated entries, negative = barred, 2^k repeats")->required();
  eval->add_option("--terms,-N", eval_args.terms, "Outer cutoff N")->envname("MZSTAR_TERMS")->check(CLI::PositiveNumber);
  eval->add_option("--precision,-p", eval_args.precision, "Precision in bits")
      ->envname("MZSTAR_PRECISION")
      ->check(CLI::Range(53u, 1u << 20));
  eval->add_flag("--json", eval_args.json, "Emit JSON");

  ExpandArgs expand_args;
  auto* expand = app.add_subcommand("expand", "Expand a two-block star value into alternating Euler sums");
  expand->add_option("index", expand_args.index, "Index of shape ({2}^a0, c1, {2}^a1, ...)")->required();
  expand->add_flag("--trailing-one", expand_args.trailing_one, "Read a final 1 as the trailing one");
  expand->add_flag("--json", expand_args.json, "Emit the combination as JSON");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a verification suite, one JSON report per line");
  verify->add_option("suite", verify_args.suite, "Suite name")->required()->check(CLI::IsMember(mzstar::suite_names()));
  verify->add_option("--n-max", verify_args.n_max, "Largest n in exact grids");
  verify->add_option("--weight-max", verify_args.cfg.weight_max, "Largest weight in two-block grids");
  verify->add_option("--d-max", verify_args.d_max, "Largest number of separators");
  verify->add_option("--a-max", verify_args.a_max, "Largest block length");
  verify->add_option("--sharp-n-max", verify_args.cfg.sharp_n_max, "Largest n for the sharp-sum binomial identity");
  verify->add_option("--max-m", verify_args.cfg.max_m, "Largest m in closed-form checks");
  verify->add_option("--terms,-N", verify_args.cfg.terms, "Cutoff for numeric series")
      ->envname("MZSTAR_TERMS")
      ->check(CLI::PositiveNumber);
  verify->add_option("--gf-terms", verify_args.cfg.gf_terms, "Cutoff for generating-function series")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  verify->add_option("--precision,-p", verify_args.cfg.precision, "Precision in bits")
      ->envname("MZSTAR_PRECISION")
      ->check(CLI::Range(53u, 1u << 20));
  verify->add_option("--tol", verify_args.tol, "Absolute tolerance for numeric checks");
  verify->add_option("--jobs,-j", verify_args.jobs, "Worker threads")->envname("MZSTAR_JOBS")->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(eval_args);
    if (*expand) return run_expand(expand_args);
    return run_verify(verify_args);
  } catch (const mzstar::DivergenceError& e) {
    std::cerr << "divergent: " << e.what() << "\n";
    return kExitDivergent;
  } catch (const mzstar::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mzstar::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
}
