#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "hpst/entanglement.hpp"
#include "hpst/errors.hpp"
#include "hpst/search.hpp"

namespace hpst::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

struct Config {
  std::string system = "chain2";
  std::optional<double> delta, delta1, delta2;
  std::size_t k0 = 1;
  double T = 10.0;
  double dtau = 0.01;
  double p0 = kDefaultP0;
  std::string out_path;
  unsigned threads = 1;
};

struct RangeFlags {
  std::optional<double> lo, hi;
  double step = 0.01;
};

void add_common(CLI::App* cmd, Config& c) {
  cmd->add_option("--system", c.system, "chain2 | rect-perp | rect-along | box")->capture_default_str();
  cmd->add_option("--delta", c.delta, "rectangle coupling delta = b^-3");
  cmd->add_option("--delta1", c.delta1, "parallelepiped base coupling");
  cmd->add_option("--delta2", c.delta2, "parallelepiped edge coupling");
  cmd->add_option("--k0", c.k0, "initially excited node")->capture_default_str();
  cmd->add_option("--T", c.T, "time window")->capture_default_str();
  cmd->add_option("--dtau", c.dtau, "time step")->capture_default_str();
  cmd->add_option("--p0", c.p0, "HPST threshold")->capture_default_str();
  cmd->add_option("-o,--out", c.out_path, "output file (stdout when omitted)");
}

void add_range(CLI::App* cmd, RangeFlags& r, const std::string& suffix) {
  cmd->add_option("--delta" + suffix + "-min", r.lo);
  cmd->add_option("--delta" + suffix + "-max", r.hi);
  cmd->add_option("--delta" + suffix + "-step", r.step)->capture_default_str();
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0)) throw DomainError(std::string(name) + " must be positive");
}

// Parameter flags must match the system kind exactly.
SystemSpec system_from(const Config& c, bool sweeping = false) {
  const auto kind = parse_system_kind(c.system);
  require_positive(c.T, "--T");
  require_positive(c.dtau, "--dtau");
  if (!(c.p0 > 0.0 && c.p0 <= 1.0)) throw DomainError("--p0 must lie in (0, 1]");
  const bool rect = kind == SystemKind::RectPerp || kind == SystemKind::RectAlong;
  const bool box = kind == SystemKind::Box;
  if (c.delta && !rect) throw DomainError("--delta only applies to rectangles");
  if ((c.delta1 || c.delta2) && !box) throw DomainError("--delta1/--delta2 only apply to box");
  SystemSpec s;
  switch (kind) {
    case SystemKind::Chain2:
      s = SystemSpec::chain2();
      break;
    case SystemKind::RectPerp:
    case SystemKind::RectAlong:
      if (sweeping) return SystemSpec{kind, 1.0, 0.0, 0.0};
      if (!c.delta) throw DomainError("--delta is required for " + c.system);
      s = SystemSpec::rectangle(kind == SystemKind::RectPerp ? FieldMode::PerpendicularToPlane : FieldMode::AlongSideB,
                                *c.delta);
      break;
    case SystemKind::Box:
      if (sweeping) return SystemSpec{kind, 0.0, 1.0, 1.0};
      if (!c.delta1 || !c.delta2) throw DomainError("--delta1 and --delta2 are required for box");
      s = SystemSpec::box(*c.delta1, *c.delta2);
      break;
  }
  if (c.k0 < 1 || c.k0 > s.nodes()) throw DomainError("--k0 out of range");
  return s;
}

// Output sink: the named file, or the caller's stream when no path is given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw IoError("cannot open '" + path + "' for writing");
    stream_ = file_.get();
    path_ = path;
  }

  std::ostream& operator*() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError(path_.empty() ? "write to standard output failed" : "write to '" + path_ + "' failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  std::string path_;
};

void cmd_simulate(const Config& c, bool with_fidelity, std::ostream& out) {
  const auto system = system_from(c);
  const auto spectrum = make_spectrum(system);
  const Propagator prop(spectrum, c.k0);
  const TimeGrid grid(c.T, c.dtau);
  const std::size_t n = system.nodes();

  Sink sink(c.out_path, out);
  std::ostream& os = *sink;
  os << "tau";
  for (std::size_t m = 1; m <= n; ++m) os << ",P_" << m;
  if (with_fidelity)
    for (std::size_t m = 1; m <= n; ++m) os << ",F_" << m;
  os << '\n';
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const auto state = prop.state_at(grid.at(i));
    os << num(state.tau);
    for (std::size_t m = 1; m <= n; ++m) os << ',' << num(state.probability(m));
    if (with_fidelity)
      for (std::size_t m = 1; m <= n; ++m) os << ',' << num(fidelity(state, m));
    os << '\n';
  }
  sink.finish();
}

void cmd_entangle(const Config& c, const std::vector<std::string>& specs, std::ostream& out) {
  if (specs.empty()) throw DomainError("at least one --partition is required");
  const auto system = system_from(c);
  std::vector<Bipartition> parts;
  for (const auto& text : specs) {
    parts.push_back(Bipartition::parse(text));
    parts.back().validate(system.nodes());
  }
  const auto spectrum = make_spectrum(system);
  const Propagator prop(spectrum, c.k0);
  const TimeGrid grid(c.T, c.dtau);

  Sink sink(c.out_path, out);
  std::ostream& os = *sink;
  os << "tau";
  for (const auto& p : parts) os << ",N_" << p.label();
  os << '\n';
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const auto state = prop.state_at(grid.at(i));
    os << num(state.tau);
    for (const auto& p : parts) os << ',' << num(negativity(state, p));
    os << '\n';
  }
  sink.finish();
}

ParameterRange range_from(const std::optional<double>& fixed, const RangeFlags& r, const char* name) {
  if (fixed) {
    if (r.lo || r.hi) throw DomainError(std::string("give either --") + name + " or its range, not both");
    return {*fixed, *fixed, r.step};
  }
  if (!r.lo || !r.hi) throw DomainError(std::string("--") + name + "-min and --" + name + "-max are required");
  return {*r.lo, *r.hi, r.step};
}

void print_intervals(std::ostream& os, const std::vector<Interval>& intervals, const std::string& prefix = "") {
  if (intervals.empty()) {
    os << prefix << "no HPST interval found\n";
    return;
  }
  for (const auto& iv : intervals)
    os << prefix << "HPST interval: [" << num(iv.lo, "%.6g") << ", " << num(iv.hi, "%.6g") << "]\n";
}

void cmd_sweep(const Config& c, const RangeFlags& r, const RangeFlags& r1, const RangeFlags& r2, bool with_fn,
               std::ostream& out) {
  const auto system = system_from(c, true);
  SweepOptions opts;
  opts.T = c.T;
  opts.dtau = c.dtau;
  opts.p0 = c.p0;
  opts.with_fn = with_fn;
  opts.threads = c.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : c.threads;
  opts.k0 = c.k0;
  if (c.k0 < 1 || c.k0 > system.nodes()) throw DomainError("--k0 out of range");

  if (system.kind == SystemKind::Chain2) throw DomainError("chain2 has no parameter to sweep");
  if (system.kind == SystemKind::Box) {
    if (with_fn) throw DomainError("--fn is only available for rectangle sweeps");
    const auto result = sweep2d(range_from(c.delta1, r1, "delta1"), range_from(c.delta2, r2, "delta2"), opts);
    {
      Sink sink(c.out_path, out);
      std::ostream& os = *sink;
      os << "delta1,delta2,FP\n";
      for (std::size_t i = 0; i < result.fp.size(); ++i)
        os << num(result.delta1[i]) << ',' << num(result.delta2[i]) << ',' << num(result.fp[i]) << '\n';
      sink.finish();
    }
    // Summarize each delta1 row as intervals in delta2.
    std::size_t begin = 0;
    bool any = false;
    while (begin < result.fp.size()) {
      std::size_t end = begin;
      while (end < result.fp.size() && result.delta1[end] == result.delta1[begin]) ++end;
      const std::span<const double> d2(result.delta2.data() + begin, end - begin);
      const std::span<const double> fp(result.fp.data() + begin, end - begin);
      const auto ivs = extract_intervals(d2, fp, c.p0);
      if (!ivs.empty()) {
        print_intervals(out, ivs, "delta1 = " + num(result.delta1[begin], "%.6g") + ": ");
        any = true;
      }
      begin = end;
    }
    if (!any) out << "no HPST interval found\n";
    return;
  }

  if (c.delta) throw DomainError("use --delta-min/--delta-max for sweeps");
  if (!r.lo || !r.hi) throw DomainError("--delta-min and --delta-max are required");
  const auto mode = system.kind == SystemKind::RectPerp ? FieldMode::PerpendicularToPlane : FieldMode::AlongSideB;
  const auto result = sweep1d(mode, {*r.lo, *r.hi, r.step}, opts);
  {
    Sink sink(c.out_path, out);
    std::ostream& os = *sink;
    os << (with_fn ? "delta,FP,FN\n" : "delta,FP\n");
    for (std::size_t i = 0; i < result.fp.size(); ++i) {
      os << num(result.delta1[i]) << ',' << num(result.fp[i]);
      if (with_fn) os << ',' << num(result.fn[i]);
      os << '\n';
    }
    sink.finish();
  }
  print_intervals(out, result.intervals);
}

void cmd_peaks(const Config& c, std::ostream& out) {
  const auto system = system_from(c);
  const auto report = hpst_times(system, c.T, c.dtau, c.p0, c.k0);
  Sink sink(c.out_path, out);
  std::ostream& os = *sink;
  os << "m tau_star p_star\n";
  for (const auto& rec : report.records) {
    os << rec.target << ' ' << num(rec.tau_star, "%.6f") << ' ' << num(rec.p_star, "%.6f");
    if (!rec.hpst) os << " no-HPST";
    os << '\n';
  }
  if (report.window)
    os << "T_window " << num(*report.window, "%.6f") << '\n';
  else
    os << "T_window undefined\n";
  sink.finish();
}

int cmd_verify(std::uint64_t seed, int draws, const Hooks& hooks, std::ostream& out) {
  VerifyOptions opts;
  opts.seed = seed;
  opts.draws = draws;
  if (hooks.closed_forms) opts.closed_forms = *hooks.closed_forms;
  const auto report = run_verification(opts);
  for (const auto& s : report.suites)
    out << (s.passed() ? "PASS " : "FAIL ") << s.name << ": max deviation " << num(s.max_deviation, "%.3e")
        << " (tolerance " << num(s.tolerance, "%.0e") << ", " << s.checks << " checks)\n";
  out << (report.passed() ? "verification passed\n" : "verification FAILED\n");
  return report.passed() ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  CLI::App app{"Single-excitation state transfer in dipolar spin clusters"};
  app.require_subcommand(1);

  Config cfg;
  bool with_fidelity = false, with_fn = false;
  std::vector<std::string> partitions;
  RangeFlags range, range1, range2;
  std::uint64_t seed = VerifyOptions{}.seed;
  int draws = VerifyOptions{}.draws;

  auto* simulate = app.add_subcommand("simulate", "transfer probabilities on a time grid (CSV)");
  add_common(simulate, cfg);
  simulate->add_flag("--fidelity", with_fidelity, "append averaged fidelity columns F_m");

  auto* entangle = app.add_subcommand("entangle", "bipartite negativities on a time grid (CSV)");
  add_common(entangle, cfg);
  entangle->add_option("--partition", partitions, "bipartition such as 15_48 or 1,5_4,8 (repeatable)");

  auto* sweep = app.add_subcommand("sweep", "F^P (and F^N) over a delta grid (CSV + interval summary)");
  add_common(sweep, cfg);
  add_range(sweep, range, "");
  add_range(sweep, range1, "1");
  add_range(sweep, range2, "2");
  sweep->add_flag("--fn", with_fn, "also compute F^N");
  sweep->add_option("--threads", cfg.threads, "worker threads, 0 for all cores")->capture_default_str();

  auto* peaks = app.add_subcommand("peaks", "HPST arrival times and the transfer window");
  add_common(peaks, cfg);

  auto* verify = app.add_subcommand("verify", "run the oracle equivalence suite");
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--draws", draws, "random draws per oracle suite")->capture_default_str()->check(
      CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) cmd_simulate(cfg, with_fidelity, out);
    if (*entangle) cmd_entangle(cfg, partitions, out);
    if (*sweep) cmd_sweep(cfg, range, range1, range2, with_fn, out);
    if (*peaks) cmd_peaks(cfg, out);
    if (*verify) return cmd_verify(seed, draws, hooks, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace hpst::cli
