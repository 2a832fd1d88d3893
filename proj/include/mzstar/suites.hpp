#pragma once

// Named verification suites: each expands into an ordered list of independent cases,
// evaluated by run_cases on a small worker pool with results emitted in list order.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mzstar/chain.hpp"
#include "mzstar/error.hpp"
#include "mzstar/identities.hpp"
#include "mzstar/numeric.hpp"

namespace mzstar {

struct SuiteConfig {
  std::optional<std::uint64_t> n_max;
  unsigned weight_max = 14;
  std::optional<std::size_t> d_max;
  std::optional<unsigned> a_max;
  std::uint64_t sharp_n_max = 40;
  unsigned max_m = 4;
  std::uint64_t terms = 1000000;
  std::uint64_t gf_terms = 100000;
  unsigned precision = 128;
  std::optional<double> tol;
};

struct CaseResult {
  nlohmann::ordered_json json;
  bool pass = false;
};

using SuiteCase = std::function<CaseResult()>;

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemmas",       "finite",   "gf-exact", "gf-numeric",
                                              "closed-forms", "expander", "two-one"};
  return names;
}

namespace detail {

inline CaseResult exact_case(const CheckReport& r) { return {to_json(r), r.pass}; }
inline CaseResult numeric_case(const NumericReport& r) { return {to_json(r), r.pass}; }

inline CaseResult combination_case(std::string identity, nlohmann::ordered_json params, const EulerCombination& got,
                                   const EulerCombination& want) {
  const bool pass = combination_equal(got, want);
  nlohmann::ordered_json j;
  j["identity"] = std::move(identity);
  j["params"] = std::move(params);
  j["lhs"] = render(got);
  j["rhs"] = render(want);
  j["pass"] = pass;
  return {std::move(j), pass};
}

inline std::vector<BigRational> leading_samples(std::size_t count) { return default_z_samples(count); }

inline void lemma_cases(const SuiteConfig& cfg, std::vector<SuiteCase>& out) {
  const std::uint64_t n_max = cfg.n_max.value_or(60);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    for (int part = 1; part <= 2; ++part)
      for (std::uint64_t l = 0; l <= n; ++l) out.push_back([=] { return exact_case(check_lemma21(n, l, part)); });
    if (n >= 2) out.push_back([=] { return exact_case(check_lemma21(n, 0, 3)); });
    for (std::uint64_t l = 1; l <= n; ++l) out.push_back([=] { return exact_case(check_lemma22(n, l, 0, 1)); });
    if (n <= cfg.sharp_n_max)
      for (std::uint64_t l = 1; l <= n; ++l)
        for (unsigned c = 0; c <= 4; ++c) out.push_back([=] { return exact_case(check_lemma22(n, l, c, 2)); });
  }
}

inline std::vector<TwoBlockIndex> finite_grid(const SuiteConfig& cfg) {
  return two_block_grid(cfg.d_max.value_or(2), cfg.a_max.value_or(2), {1, 3, 4, 5}, cfg.weight_max, true);
}

inline void finite_cases(const SuiteConfig& cfg, std::vector<SuiteCase>& out) {
  const std::uint64_t n_max = cfg.n_max.value_or(25);
  for (const auto& t : finite_grid(cfg))
    for (std::uint64_t n = 1; n <= n_max; ++n) out.push_back([=] { return exact_case(verify_c4(n, t)); });
}

inline void gf_exact_cases(const SuiteConfig& cfg, std::vector<SuiteCase>& out) {
  const std::uint64_t n_max = cfg.n_max.value_or(20);
  const std::size_t d_max = cfg.d_max.value_or(2);
  const auto z = leading_samples(d_max + 1);
  for (const auto& c : separator_lists(d_max, {1, 3, 4}, true)) {
    const std::vector<BigRational> zz(z.begin(), z.begin() + static_cast<long>(c.size() + 1));
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      out.push_back([=] { return exact_case(verify_t1(n, c, zz)); });
      for (std::size_t m = 0; m <= c.size(); ++m) {
        T1Options forced;
        forced.forced_block = m;
        out.push_back([=] { return exact_case(verify_t1(n, c, zz, forced)); });
      }
      T1Options trailing;
      trailing.trailing_one = true;
      out.push_back([=] { return exact_case(verify_t1(n, c, zz, trailing)); });
    }
  }
  for (const auto& c : separator_lists(d_max, {1, 3, 4}, false)) {
    const std::vector<BigRational> zz(z.begin(), z.begin() + static_cast<long>(c.size() + 1));
    for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(n_max, 15); ++n)
      out.push_back([=] { return exact_case(check_recurrence(n, c, zz)); });
  }
}

inline std::vector<GfCase> gf_numeric_grid(std::size_t d_max) {
  std::vector<GfCase> out;
  auto add = [&](GfFamily th, std::size_t d, std::vector<double> z) {
    GfCase g;
    g.family = th;
    g.d = d;
    g.z = std::move(z);
    out.push_back(std::move(g));
  };
  const std::vector<double> mixed{0.3, 0.2, 0.45, 0.1, 0.35};
  auto pts = [&](std::size_t count, double fill) {
    std::vector<std::vector<double>> v{std::vector<double>(mixed.begin(), mixed.begin() + static_cast<long>(count)),
                                       std::vector<double>(count, fill)};
    return v;
  };
  add(GfFamily::TwoThreeD0, 0, {0.5});
  add(GfFamily::TwoThreeD0, 0, {0.25});
  for (std::size_t d = 1; d <= d_max; ++d)
    for (const auto& z : pts(d + 1, 0.5)) add(GfFamily::TwoThree, d, z);
  for (std::size_t d = 0; d <= d_max; ++d)
    for (const auto& z : pts(d + 1, 0.25)) {
      add(GfFamily::TwoOneTwo, d, z);
      add(GfFamily::TwoOneTwoTrailing, d, z);
    }
  for (const auto& z : pts(3, 0.5)) add(GfFamily::TwoThreeOne, 1, z);
  for (const auto& z : pts(2, 0.5)) add(GfFamily::TwoThreeOneTrailing, 1, z);
  return out;
}

inline void gf_numeric_cases(const SuiteConfig& cfg, std::vector<SuiteCase>& out) {
  const double tol = cfg.tol.value_or(1e-4);
  for (const auto& g : gf_numeric_grid(cfg.d_max.value_or(2)))
    out.push_back([=] { return numeric_case(verify_gf_numeric(g, cfg.gf_terms, tol, cfg.precision)); });
}

inline void closed_form_cases(const SuiteConfig& cfg, std::vector<SuiteCase>& out) {
  const double tol = cfg.tol.value_or(1e-4);
  const double tol_alt = cfg.tol.value_or(1e-6);
  // one case per report; the sweep is computed once and shared
  auto sweep = std::make_shared<std::vector<NumericReport>>();
  auto once = std::make_shared<std::once_flag>();
  const std::size_t count = cfg.max_m == 0 ? 0 : 4 * static_cast<std::size_t>(cfg.max_m) - 1;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back([=] {
      std::call_once(*once, [&] { *sweep = verify_closed_forms(cfg.max_m, cfg.terms, cfg.precision, tol, tol_alt); });
      return numeric_case((*sweep)[i]);
    });
  const unsigned ab_max = cfg.a_max.value_or(3);
  for (unsigned a = 0; a <= ab_max; ++a)
    for (unsigned b = 0; b <= ab_max; ++b)
      out.push_back([=] { return numeric_case(verify_zagier(a, b, cfg.terms, cfg.precision, tol)); });
}

inline void expander_cases(const SuiteConfig& cfg, std::vector<SuiteCase>& out) {
  for (const auto& t : finite_grid(cfg)) {
    out.push_back([=] {
      const auto ch = build_chain(t);
      const auto comb = expand_chain(ch);
      bool pass = true;
      auto rows = nlohmann::ordered_json::array();
      for (std::uint64_t n : {1, 2, 5, 13, 40}) {
        const BigRational lhs = evaluate_chain(ch, n);
        const BigRational rhs = evaluate_truncated(comb, n);
        pass = pass && lhs == rhs;
        rows.push_back({{"N", n}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}});
      }
      nlohmann::ordered_json params{{"index", render(t.flatten())}};
      params.update(two_block_json(t));
      nlohmann::ordered_json j{{"identity", "truncation"}, {"params", params}, {"values", rows}, {"pass", pass}};
      return CaseResult{std::move(j), pass};
    });
  }
  const unsigned ab = cfg.a_max.value_or(4);
  for (unsigned a = 0; a <= ab; ++a)
    for (unsigned b = 0; b <= ab; ++b)
      out.push_back([=] {
        return combination_case("two_three_two_expansion", {{"a", a}, {"b", b}},
                                expand_chain(build_chain(TwoBlockIndex({a, b}, {3}))), two_three_two_reference(a, b));
      });
  for (unsigned a = 1; a <= std::min(ab, 3u); ++a)
    for (unsigned b = 1; b <= std::min(ab, 3u); ++b)
      out.push_back([=] {
        return combination_case("two_one_two_expansion", {{"a", a}, {"b", b}},
                                expand_chain(build_chain(TwoBlockIndex({a, b}, {1}))), two_one_two_reference(a, b));
      });
}

inline void two_one_cases(const SuiteConfig& cfg, std::vector<SuiteCase>& out) {
  const std::size_t d_max = cfg.d_max.value_or(3);
  const unsigned a_max = cfg.a_max.value_or(2);
  for (std::size_t d = 1; d <= d_max; ++d) {
    std::vector<unsigned> a(d, 0);
    a[0] = 1;
    while (a_max >= 1) {
      out.push_back([=] {
        const TwoBlockIndex t(a, std::vector<unsigned>(d - 1, 1), true);
        return combination_case("two_one_expansion", {{"index", render(t.flatten())}, {"a", a}},
                                expand_chain(build_chain(t)), two_one_reference(a));
      });
      std::size_t pos = 0;
      while (pos < d && a[pos] == a_max) {
        a[pos] = pos == 0 ? 1 : 0;
        ++pos;
      }
      if (pos == d) break;
      ++a[pos];
    }
  }
}

}  // namespace detail

/// Cases of a named suite, in parameter order. Unknown names throw ParseError.
inline std::vector<SuiteCase> build_suite(const std::string& name, const SuiteConfig& cfg) {
  std::vector<SuiteCase> out;
  if (name == "lemmas")
    detail::lemma_cases(cfg, out);
  else if (name == "finite")
    detail::finite_cases(cfg, out);
  else if (name == "gf-exact")
    detail::gf_exact_cases(cfg, out);
  else if (name == "gf-numeric")
    detail::gf_numeric_cases(cfg, out);
  else if (name == "closed-forms")
    detail::closed_form_cases(cfg, out);
  else if (name == "expander")
    detail::expander_cases(cfg, out);
  else if (name == "two-one")
    detail::two_one_cases(cfg, out);
  else
    throw ParseError("unknown suite '" + name + "'");
  return out;
}

struct SuiteSummary {
  std::size_t cases = 0;
  std::size_t failed = 0;
};

/// Evaluates the cases on `jobs` threads and hands each result to `emit` in case order.
inline SuiteSummary run_cases(const std::vector<SuiteCase>& cases, unsigned jobs,
                              const std::function<void(const CaseResult&)>& emit) {
  SuiteSummary summary;
  summary.cases = cases.size();
  auto tally = [&](const CaseResult& r) {
    if (!r.pass) ++summary.failed;
    emit(r);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(cases.size(), 1))));
  if (jobs == 1) {
    for (const auto& c : cases) tally(c());
    return summary;
  }
  std::vector<std::optional<CaseResult>> results(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable ready;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < cases.size();) {
        std::optional<CaseResult> r;
        std::exception_ptr err;
        try {
          r = cases[i]();
        } catch (...) {
          err = std::current_exception();
        }
        std::lock_guard lock(mu);
        results[i] = std::move(r);
        errors[i] = err;
        ready.notify_all();
      }
    });
  std::exception_ptr first_error;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::unique_lock lock(mu);
    ready.wait(lock, [&] { return results[i].has_value() || errors[i]; });
    if (errors[i]) {
      // stop handing out work, drain, then rethrow
      next = cases.size();
      first_error = errors[i];
      break;
    }
    CaseResult r = std::move(*results[i]);
    results[i].reset();
    lock.unlock();
    tally(r);
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return summary;
}

}  // namespace mzstar
