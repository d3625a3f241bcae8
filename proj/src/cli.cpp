#include "abelfft/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>

#include <CLI11.hpp>

#include "abelfft/characterization.hpp"
#include "abelfft/io.hpp"
#include "abelfft/transform.hpp"

namespace abelfft {

namespace {

using io::json;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

template <class Fn>
double median_seconds(std::size_t reps, Fn&& fn) {
  std::vector<double> times;
  times.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  return median(std::move(times));
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

struct TransformArgs {
  std::string input, output;
  bool naive = false, inverse = false;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  const GFunction f = io::function_from_json(io::read_json(a.input));
  GFunction result = [&] {
    if (a.inverse) return a.naive ? idft_naive(f) : fft_inverse(f);
    return a.naive ? dft_naive(f) : fft_forward(f);
  }();
  io::write_json(a.output, io::function_to_json(result));
  out << "wrote " << to_string(result.side()) << " function of size " << result.size() << " to "
      << a.output << '\n';
  return kExitOk;
}

struct ConvolveArgs {
  std::string f, g, output;
  bool direct = false, fft = false;
};

int cmd_convolve(const ConvolveArgs& a, std::ostream& out) {
  const GFunction f = io::function_from_json(io::read_json(a.f));
  const GFunction g = io::function_from_json(io::read_json(a.g));
  const GFunction h = a.direct ? convolve(f, g) : convolve_fast(f, g);
  io::write_json(a.output, io::function_to_json(h));
  out << "wrote " << (a.direct ? "direct" : "fft") << " convolution to " << a.output << '\n';
  return kExitOk;
}

struct GenArgs {
  std::vector<std::int64_t> orders;
  std::uint64_t seed = 0;
  bool conjugate = false;
  std::string form = "T";
  std::string psi = "random";
  std::string output;
  std::string truth;
};

int cmd_gen_operator(const GenArgs& a, std::ostream& out) {
  const Group g = make_group(a.orders);
  const Automorphism psi = a.psi == "identity" ? Automorphism::identity(g) : random_automorphism(g, a.seed);
  const OperatorForm form = a.form == "T" ? OperatorForm::T : OperatorForm::U;
  const Operator op = build_reference_operator(g, psi, a.conjugate, form);

  io::OperatorFile file{g, op.input_side(), op.output_side(), materialize(op, a.conjugate)};
  io::write_json(a.output, io::operator_to_json(file));
  const std::string truth = a.truth.empty() ? a.output + ".truth.json" : a.truth;
  io::write_json(truth, io::truth_to_json(io::TruthFile{g, psi.perm(), a.conjugate, form}));
  out << "wrote " << to_string(form) << "-form operator on a group of size " << g.size() << " to "
      << a.output << "\ntruth=" << truth << '\n';
  return kExitOk;
}

struct CheckArgs {
  std::string input;
  std::size_t trials = 8;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const Operator op = io::operator_from_json(io::read_json(a.input)).to_operator();
  const HypothesisReport r = check_hypotheses(op, a.trials, a.seed, a.tol);
  out << "hypothesis_a max_err=" << fmt_double(r.max_err_a) << " pass=" << fmt_bool(r.pass_a()) << '\n'
      << "hypothesis_b max_err=" << fmt_double(r.max_err_b) << " pass=" << fmt_bool(r.pass_b()) << '\n'
      << "hypothesis_c max_err=" << fmt_double(r.max_err_c) << " pass=" << fmt_bool(r.pass_c()) << '\n'
      << "basis_pairs=" << r.basis_pairs << " trials=" << r.trials << " tol=" << fmt_double(r.tol) << '\n'
      << "result=" << (r.pass() ? "pass" : "fail") << '\n';
  const json payload{{"tool", io::kToolName},
                     {"version", io::kToolVersion},
                     {"seed", a.seed},
                     {"hypotheses", io::hypotheses_to_json(r)}};
  out << payload.dump() << '\n';
  return r.pass() ? kExitOk : kExitCheckFailed;
}

struct RecoverArgs {
  std::string input, output, truth;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0x5eed;
  bool parallel = false;
};

int cmd_recover(const RecoverArgs& a, std::ostream& out) {
  const Operator op = io::operator_from_json(io::read_json(a.input)).to_operator();
  if (!op.form()) throw SideMismatch("operator must take primal input");
  std::optional<io::TruthFile> truth;
  if (!a.truth.empty()) truth = io::truth_from_json(io::read_json(a.truth));

  RecoverOptions options;
  options.tol = a.tol;
  options.seed = a.seed;
  options.parallel = a.parallel;

  std::optional<RecoveryReport> report;
  try {
    report = recover(op, options);
  } catch (const NotEssentiallyFourier& e) {
    out << "status=not-essentially-fourier\nstep=" << e.step() << "\nreason=" << e.what() << '\n';
    const json payload{{"tool", io::kToolName},   {"version", io::kToolVersion},
                       {"seed", a.seed},          {"status", "not_essentially_fourier"},
                       {"step", e.step()},        {"reason", e.what()},
                       {"group", io::group_to_json(op.group())}};
    if (!a.output.empty()) io::write_json(a.output, payload);
    return kExitCheckFailed;
  }

  const json payload = io::report_to_json(*report, a.seed);
  if (!a.output.empty()) {
    io::write_json(a.output, payload);
  }
  out << "status=recovered\nconjugation=" << fmt_bool(report->conjugation)
      << "\nresidual=" << fmt_double(report->residual) << '\n';
  if (a.output.empty()) out << payload.dump() << '\n';

  if (truth) {
    const bool same_group = truth->group == op.group();
    const bool match = same_group && truth->psi == report->psi.perm() &&
                       truth->conjugation == report->conjugation;
    out << "truth_match=" << fmt_bool(match) << '\n';
    if (!match) return kExitCheckFailed;
  }
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::int64_t> orders;
  std::size_t reps = 20;
  std::uint64_t seed = 0;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const Group g = make_group(a.orders);
  if (g.size() > kBenchMaxSize) {
    throw InvalidGroup("benchmark is limited to groups of size <= " + std::to_string(kBenchMaxSize));
  }
  const BenchResult r = run_benchmark(g, a.reps, a.seed);
  out << std::left << std::setw(12) << "path" << std::setw(16) << "median_s" << '\n'
      << std::setw(12) << "fft" << std::setw(16) << fmt_double(r.fft_median_seconds) << '\n';
  if (r.naive_median_seconds) {
    out << std::setw(12) << "naive" << std::setw(16) << fmt_double(*r.naive_median_seconds) << '\n'
        << "speedup=" << fmt_double(*r.speedup()) << '\n';
  } else {
    out << std::setw(12) << "naive" << "skipped (size > " << kBenchNaiveLimit << ")\n";
  }
  out << "size=" << r.size << " reps=" << a.reps << " seed=" << a.seed
      << " checksum=" << fmt_double(r.checksum.real()) << ',' << fmt_double(r.checksum.imag()) << '\n';
  return kExitOk;
}

}  // namespace

BenchResult run_benchmark(const Group& g, std::size_t reps, std::uint64_t seed) {
  reps = std::max<std::size_t>(reps, 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  GFunction f(g, Side::primal);
  for (auto& v : f.values()) {
    const double re = normal(rng);
    v = {re, normal(rng)};
  }
  plan_for(g);  // plan construction is not part of the timing

  BenchResult r;
  r.size = g.size();
  GFunction spectrum(g, Side::dual);
  r.fft_median_seconds = median_seconds(reps, [&] { spectrum = fft_forward(f); });
  for (const auto& v : spectrum.values()) r.checksum += v;
  if (g.size() <= kBenchNaiveLimit) {
    r.naive_median_seconds = median_seconds(reps, [&] { spectrum = dft_naive(f); });
  }
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier analysis on finite abelian groups and recovery of Fourier-type operators",
               "abelfft"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::kToolVersion);

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "Fourier transform of a function file");
  transform->add_option("input", ta.input, "input function file")->required();
  transform->add_option("output", ta.output, "output function file")->required();
  transform->add_flag("--naive", ta.naive, "use the quadratic reference transform");
  transform->add_flag("--inverse", ta.inverse, "inverse transform (input must be on the dual side)");

  ConvolveArgs ca;
  auto* conv = app.add_subcommand("convolve", "convolution of two function files");
  conv->add_option("f", ca.f, "first function file")->required();
  conv->add_option("g", ca.g, "second function file")->required();
  conv->add_option("output", ca.output, "output function file")->required();
  auto* direct = conv->add_flag("--direct", ca.direct, "direct O(n^2) summation");
  auto* fft = conv->add_flag("--fft", ca.fft, "transform, multiply, inverse (default)");
  direct->excludes(fft);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen-operator", "write a reference operator and its truth sidecar");
  gen->add_option("--orders", ga.orders, "cyclic orders, e.g. 4,2")->required()->delimiter(',');
  gen->add_option("--seed", ga.seed, "seed for the random automorphism");
  gen->add_flag("--conjugate", ga.conjugate, "conjugate the input");
  gen->add_option("--form", ga.form, "T (primal -> dual) or U (primal -> primal)")
      ->check(CLI::IsMember({"T", "U"}));
  gen->add_option("--psi", ga.psi, "identity or random")->check(CLI::IsMember({"identity", "random"}));
  gen->add_option("-o,--output", ga.output, "operator file")->required();
  gen->add_option("--truth", ga.truth, "truth sidecar path (default: <output>.truth.json)");

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "test the algebraic hypotheses on an operator file");
  check->add_option("operator", ka.input, "operator file")->required();
  check->add_option("--trials", ka.trials, "random function pairs")->check(CLI::PositiveNumber);
  check->add_option("--tol", ka.tol, "absolute tolerance")->check(CLI::NonNegativeNumber);
  check->add_option("--seed", ka.seed, "seed for random functions");

  RecoverArgs ra;
  auto* rec = app.add_subcommand("recover", "recover psi and the conjugation flag from an operator file");
  rec->add_option("operator", ra.input, "operator file")->required();
  rec->add_option("-o,--output", ra.output, "report file");
  rec->add_option("--tol", ra.tol, "absolute tolerance")->check(CLI::NonNegativeNumber);
  rec->add_option("--truth", ra.truth, "truth sidecar to compare against");
  rec->add_option("--seed", ra.seed, "seed for the random residual probes");
  rec->add_flag("--parallel", ra.parallel, "evaluate probes on several threads");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "time the fast and reference transforms");
  bench->add_option("--orders", ba.orders, "cyclic orders, e.g. 64,64")->required()->delimiter(',');
  bench->add_option("--reps", ba.reps, "repetitions per path")->check(CLI::PositiveNumber);
  bench->add_option("--seed", ba.seed, "seed for the input function");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (transform->parsed()) return cmd_transform(ta, out);
    if (conv->parsed()) return cmd_convolve(ca, out);
    if (gen->parsed()) return cmd_gen_operator(ga, out);
    if (check->parsed()) return cmd_check(ka, out);
    if (rec->parsed()) return cmd_recover(ra, out);
    if (bench->parsed()) return cmd_bench(ba, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace abelfft
