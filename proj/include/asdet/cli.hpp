#pragma once

// Command-line front end. run() is the whole program; tools/asdet.cpp only
// forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 a verification check failed, 2 invalid input or
// usage, 3 degenerate configuration, 4 putative conjecture violation.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "asdet/determinant.hpp"
#include "asdet/errors.hpp"
#include "asdet/io.hpp"
#include "asdet/probe.hpp"
#include "asdet/rootsys.hpp"
#include "asdet/spinorgeom.hpp"

namespace asdet::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kDegenerate = 3,
  kViolation = 4,
};

inline constexpr const char* kSeedEnv = "AS_DET_SEED";

struct Options {
  std::string config;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  int budget = 2000;
  std::optional<double> tol;
  bool csv = false;
  bool plot = false;
  std::string out;
  unsigned threads = 0;
};

namespace detail {

inline void add_size_options(CLI::App* sub, Options& o, bool want_n, bool want_m) {
  if (want_n) sub->add_option("--n", o.n, "number of points")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  if (want_m) sub->add_option("--m", o.m, "number of symplectic points")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
}

inline void add_seed(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "master seed (overridden by $AS_DET_SEED)");
}

inline void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "write output to FILE instead of stdout");
}

inline void add_probe_common(CLI::App* sub, Options& o) {
  sub->add_option("--samples", o.samples, "number of samples / restarts")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
  sub->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

inline std::uint64_t env_seed_or(std::uint64_t fallback) {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return fallback;
  std::uint64_t v = 0;
  const std::string s(env);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InvalidInput(std::string(kSeedEnv) + " is not an unsigned 64-bit integer");
  }
  return v;
}

/// Exactly one of --n / --m.
inline std::pair<Kind, std::size_t> probe_target(const Options& o) {
  if (o.n.has_value() == o.m.has_value()) throw InvalidInput("give exactly one of --n or --m");
  return o.n ? std::pair{Kind::AS, *o.n} : std::pair{Kind::Symplectic, *o.m};
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InvalidInput("cannot open output file " + path);
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline void emit_report(const Options& o, const ProbeReport& rep, std::ostream& out) {
  if (o.plot) write_plot_data(out, emit_plot_data(rep));
  else if (o.csv) write_csv(out, rep);
  else out << to_json(rep).dump(2) << '\n';
}

inline int report_exit(const ProbeReport& rep, std::ostream& err) {
  if (rep.violations == 0) return kOk;
  const ProbeRecord& r = rep.min_record();
  err << "PUTATIVE VIOLATION: " << rep.violations << " record(s) with |D| < 1 - " << rep.tol_violation
      << "; smallest |D| = " << format_double(r.abs_value) << " (kind " << to_string(r.kind) << ", size " << r.size
      << ", seed " << r.seed << ")\n";
  return kViolation;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normalized determinants of point configurations in R^3"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "evaluate D for a configuration");
  eval->add_option("--config", o.config, "configuration JSON {\"points\": [...]}");
  detail::add_size_options(eval, o, true, false);
  detail::add_seed(eval, o);
  detail::add_output(eval, o);

  auto* eval_symp = app.add_subcommand("eval-symp", "evaluate D_S for a symplectic configuration");
  eval_symp->add_option("--config", o.config, "configuration JSON {\"sym_points\": [...]}");
  detail::add_size_options(eval_symp, o, false, true);
  detail::add_seed(eval_symp, o);
  detail::add_output(eval_symp, o);

  auto* probe = app.add_subcommand("probe", "random sampling of |D| or |D_S|");
  detail::add_size_options(probe, o, true, true);
  detail::add_seed(probe, o);
  detail::add_probe_common(probe, o);
  probe->add_flag("--csv", o.csv, "CSV instead of JSON");
  probe->add_flag("--plot", o.plot, "sorted values and histogram for plotting");
  detail::add_output(probe, o);

  auto* minimize = app.add_subcommand("minimize", "simplex minimization of |D| or |D_S| from random starts");
  minimize->add_option("--config", o.config, "start configuration (points or sym_points)");
  detail::add_size_options(minimize, o, true, true);
  detail::add_seed(minimize, o);
  detail::add_probe_common(minimize, o);
  minimize->add_option("--budget", o.budget, "objective evaluations per run")->check(CLI::Range(1, 1 << 30));
  minimize->add_flag("--csv", o.csv, "CSV instead of JSON");
  detail::add_output(minimize, o);

  auto* reduce = app.add_subcommand("reduce-check", "compare D_S(x) with D(ghat(x)) on random configurations");
  detail::add_size_options(reduce, o, false, true);
  detail::add_seed(reduce, o);
  detail::add_probe_common(reduce, o);
  detail::add_output(reduce, o);

  auto* roots = app.add_subcommand("roots-check", "verify that g* maps the U(2m) roots onto the Sp(m) roots");
  detail::add_size_options(roots, o, false, true);
  detail::add_output(roots, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInvalidInput;
  }

  try {
    o.seed = detail::env_seed_or(o.seed);
    detail::Sink sink(o.out, out);
    std::ostream& os = sink.get();

    if (eval->parsed() || eval_symp->parsed()) {
      const bool symp = eval_symp->parsed();
      const bool sized = symp ? o.m.has_value() : o.n.has_value();
      if (o.config.empty() == !sized) throw InvalidInput("give either --config FILE or a random size with --seed");
      const AnyConfig cfg = !o.config.empty() ? read_config_file(o.config)
                            : symp            ? AnyConfig(random_symp_config(*o.m, o.seed))
                                              : AnyConfig(random_config(*o.n, o.seed));
      DetReport rep;
      if (symp) {
        if (!std::holds_alternative<SymplecticConfig>(cfg)) throw InvalidInput("eval-symp expects \"sym_points\"");
        rep = eval_DS(std::get<SymplecticConfig>(cfg));
      } else {
        if (!std::holds_alternative<Config>(cfg)) throw InvalidInput("eval expects \"points\" (use eval-symp)");
        rep = eval_D(std::get<Config>(cfg));
      }
      os << to_json(rep).dump(2) << '\n';
      return kOk;
    }

    if (probe->parsed()) {
      const auto [kind, size] = detail::probe_target(o);
      const ProbeReport rep = sample_probe(kind, size, o.samples, o.seed, o.threads, o.tol.value_or(kTolViolation));
      detail::emit_report(o, rep, os);
      return detail::report_exit(rep, err);
    }

    if (minimize->parsed()) {
      const double tol = o.tol.value_or(kTolViolation);
      ProbeReport rep;
      if (!o.config.empty()) {
        if (o.n || o.m) throw InvalidInput("give --config or a random size, not both");
        const AnyConfig cfg = read_config_file(o.config);
        const ProbeRecord rec = std::visit(
            [&](const auto& c) { return minimize_abs(c, o.budget, o.seed); }, cfg);
        rep = make_report(rec.kind, rec.size, {rec}, tol);
      } else {
        const auto [kind, size] = detail::probe_target(o);
        rep = minimize_probe(kind, size, o.samples, o.budget, o.seed, o.threads, tol);
      }
      detail::emit_report(o, rep, os);
      return detail::report_exit(rep, err);
    }

    if (reduce->parsed()) {
      if (!o.m) throw InvalidInput("reduce-check needs --m");
      const ReductionReport rep = reduction_sweep(*o.m, o.samples, o.seed, o.threads, o.tol.value_or(1e-9));
      os << to_json(rep).dump(2) << '\n';
      return rep.pass() ? kOk : kCheckFailed;
    }

    if (roots->parsed()) {
      if (!o.m) throw InvalidInput("roots-check needs --m");
      const FoldReport rep = verify_fold(static_cast<int>(*o.m));
      os << to_json(rep).dump(2) << '\n';
      return rep.pass() ? kOk : kCheckFailed;
    }
  } catch (const DegenerateInput& e) {
    err << "degenerate configuration: " << e.what() << '\n';
    return kDegenerate;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kInvalidInput;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("asdet");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace asdet::cli
