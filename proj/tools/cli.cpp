#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "decaysum/bounds.hpp"
#include "decaysum/decay.hpp"
#include "decaysum/evaluate.hpp"
#include "decaysum/mechanism.hpp"
#include "decaysum/rng.hpp"
#include "decaysum/series.hpp"

namespace decaysum::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
  if (output_path.empty() || output_path == "-") {
    out << text;
    return;
  }
  std::ofstream file(output_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + output_path + "'");
  file << text;
}

std::vector<double> read_stream_file(std::istream& in, const std::string& what) {
  std::vector<double> values;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(a, b - a + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      values.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(what + ":" + std::to_string(lineno) +
                                  ": expected one real per line, got '" + tok + "'");
    }
  }
  return values;
}

struct StreamSource {
  std::string file;  // path or "-" for stdin
  std::string dist;  // named distribution
};

std::vector<double> resolve_stream(const StreamSource& src, std::int64_t T,
                                   double clip, std::uint64_t seed) {
  if (!src.dist.empty()) {
    const auto d = parse_distribution(src.dist);
    std::mt19937_64 gen(derive_seed(seed, 1));
    std::vector<double> x(static_cast<std::size_t>(T), 0.0);
    switch (d) {
      case StreamDistribution::Ones:
        std::fill(x.begin(), x.end(), std::min(1.0, clip));
        break;
      case StreamDistribution::Zeros:
        break;
      case StreamDistribution::Uniform:
        for (auto& v : x)
          v = clip * (2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0);
        break;
      case StreamDistribution::Rademacher:
        for (auto& v : x) v = (gen() & 1u) ? clip : -clip;
        break;
    }
    return x;
  }
  std::vector<double> values;
  if (src.file == "-") {
    values = read_stream_file(std::cin, "<stdin>");
  } else {
    std::ifstream in(src.file);
    if (!in) throw std::invalid_argument("cannot open stream file '" + src.file + "'");
    values = read_stream_file(in, src.file);
  }
  if (static_cast<std::int64_t>(values.size()) < T)
    throw std::invalid_argument("stream has " + std::to_string(values.size()) +
                                " values but T = " + std::to_string(T));
  values.resize(static_cast<std::size_t>(T));
  return values;
}

struct CoeffsConfig {
  std::string decay;
  std::int64_t n = 0;
  std::string output;
};

int cmd_coeffs(const CoeffsConfig& cfg, std::ostream& out) {
  const DecayFunction f = DecayFunction::parse(cfg.decay);
  if (cfg.n < 0) throw std::invalid_argument("coeffs: --n must be >= 0");
  const SqrtSeries a = sqrt_series(series_input(f, cfg.n + 1));
  std::ostringstream csv;
  csv << "n,a_n,half_weight,gap,gap_sq\n";
  for (std::int64_t n = 0; n <= cfg.n; ++n) {
    const double an = a.coeffs[static_cast<std::size_t>(n)];
    const double half = f(n + 1) / 2.0;
    csv << n << ',' << fmt17(an) << ',' << fmt17(half) << ',' << fmt17(half - an)
        << ',' << fmt17(half * half - an * an) << '\n';
  }
  emit(csv.str(), cfg.output, out);
  return 0;
}

struct BoundsConfig {
  std::string decay;
  std::int64_t T = 0;
  std::string output;
};

int cmd_bounds(const BoundsConfig& cfg, std::ostream& out) {
  const DecayFunction f = DecayFunction::parse(cfg.decay);
  if (cfg.T < 1) throw std::invalid_argument("bounds: --T must be >= 1");
  const NormBounds b = norm_bounds(f, cfg.T);
  nlohmann::ordered_json j;
  j["decay"] = f.name();
  j["horizon"] = b.horizon;
  j["gamma2_lower"] = b.gamma2_lower;
  j["gamma2_upper"] = b.gamma2_upper;
  j["gammaF_upper"] = b.gammaF_upper;
  j["closed_form"] = b.closed_form;
  j["baseline"] = b.baseline;
  j["gaussian_sensitivity"] = b.gaussian_sensitivity;
  emit(j.dump(2) + "\n", cfg.output, out);
  return 0;
}

struct RunConfig {
  std::string decay;
  std::int64_t T = 0;
  double epsilon = 0.0, delta = 0.0, clip = 1.0;
  std::uint64_t seed = 0;
  StreamSource stream;
  std::string mechanism = "auto";
  std::string sigma_convention = "main-text";
  bool unsafe_no_privacy = false;
  std::string output;
};

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const DecayFunction f = DecayFunction::parse(cfg.decay);
  if (cfg.T < 1) throw std::invalid_argument("run: --T must be >= 1");
  const PrivacyParams privacy = PrivacyParams::make(
      cfg.epsilon, cfg.delta, cfg.clip, parse_sigma_convention(cfg.sigma_convention));

  MechanismKind kind;
  if (cfg.mechanism == "auto")
    kind = f.is_window() ? MechanismKind::SlidingWindow : MechanismKind::Factorization;
  else
    kind = parse_mechanism(cfg.mechanism);
  if (kind == MechanismKind::SlidingWindow && !f.is_window())
    throw std::invalid_argument("run: the window mechanism needs --decay window:W");
  if (kind == MechanismKind::Factorization && f.is_window())
    throw std::invalid_argument("run: window decay runs the block mechanism; "
                                "drop --mechanism factorization");

  // clamp once up front: the privacy guarantee (and the truth column) refer
  // to the clamped stream
  std::vector<double> x = resolve_stream(cfg.stream, cfg.T, privacy.clip_bound, cfg.seed);
  std::int64_t clips = 0;
  for (auto& v : x) {
    if (v > privacy.clip_bound) { v = privacy.clip_bound; ++clips; }
    else if (v < -privacy.clip_bound) { v = -privacy.clip_bound; ++clips; }
  }
  if (clips > 0)
    err << "warning: clamped " << clips << " stream value(s) to [-"
        << fmt17(privacy.clip_bound) << ", " << fmt17(privacy.clip_bound) << "]\n";
  const std::vector<double> truth =
      cfg.unsafe_no_privacy ? true_decaying_sums(f, x) : std::vector<double>{};

  const std::uint64_t mech_seed = derive_seed(cfg.seed, 0);
  std::vector<double> outputs(x.size(), 0.0);
  switch (kind) {
    case MechanismKind::Factorization: {
      FactorizationMechanism m(f, cfg.T, privacy, mech_seed, cfg.unsafe_no_privacy);
      for (std::size_t t = 0; t < x.size(); ++t) outputs[t] = m.step(x[t]);
      break;
    }
    case MechanismKind::SlidingWindow: {
      SlidingWindowMechanism m(f.window(), cfg.T, privacy, mech_seed, cfg.unsafe_no_privacy);
      for (std::size_t t = 0; t < x.size(); ++t) outputs[t] = m.step(x[t]);
      break;
    }
    case MechanismKind::GaussianBaseline: {
      GaussianBaselineMechanism m(f, cfg.T, privacy, mech_seed, cfg.unsafe_no_privacy);
      for (std::size_t t = 0; t < x.size(); ++t) outputs[t] = m.step(x[t]);
      break;
    }
  }

  std::ostringstream csv;
  csv << (cfg.unsafe_no_privacy ? "t,x_t,private_output,true_sum\n"
                                : "t,x_t,private_output\n");
  for (std::size_t t = 0; t < x.size(); ++t) {
    csv << (t + 1) << ',' << fmt17(x[t]) << ',' << fmt17(outputs[t]);
    if (cfg.unsafe_no_privacy) csv << ',' << fmt17(truth[t]);
    csv << '\n';
  }
  emit(csv.str(), cfg.output, out);
  return 0;
}

struct BenchConfig {
  std::vector<std::string> decays;
  std::vector<std::int64_t> horizons;
  std::string mechanism = "all";
  std::int64_t trials = 100;
  std::string distribution = "uniform";
  double epsilon = 0.0, delta = 0.0, clip = 1.0;
  std::uint64_t seed = 0;
  std::string sigma_convention = "main-text";
  bool unsafe_no_privacy = false;
  int threads = 0;
  std::string output;
};

int cmd_bench(const BenchConfig& cfg, std::ostream& out) {
  const PrivacyParams privacy = PrivacyParams::make(
      cfg.epsilon, cfg.delta, cfg.clip, parse_sigma_convention(cfg.sigma_convention));
  const StreamDistribution dist = parse_distribution(cfg.distribution);

  std::ostringstream csv;
  csv << "mechanism,decay,T,trials,distribution,"
         "empirical_linf,empirical_l22,bound_linf,bound_l22\n";
  for (const auto& dspec : cfg.decays) {
    const DecayFunction f = DecayFunction::parse(dspec);
    std::vector<MechanismKind> kinds;
    if (cfg.mechanism == "all") {
      kinds.push_back(f.is_window() ? MechanismKind::SlidingWindow
                                    : MechanismKind::Factorization);
      kinds.push_back(MechanismKind::GaussianBaseline);
    } else {
      kinds.push_back(parse_mechanism(cfg.mechanism));
    }
    for (const std::int64_t T : cfg.horizons) {
      for (const MechanismKind kind : kinds) {
        const ErrorReport rep =
            run_error_experiment(kind, f, T, privacy, cfg.trials, dist, cfg.seed,
                                 cfg.unsafe_no_privacy, cfg.threads);
        csv << rep.mechanism << ',' << rep.decay << ',' << rep.horizon << ','
            << rep.trials << ',' << to_string(dist) << ','
            << fmt17(rep.empirical_linf) << ',' << fmt17(rep.empirical_l22) << ','
            << fmt17(rep.bound_linf) << ',' << fmt17(rep.bound_l22) << '\n';
      }
    }
  }
  emit(csv.str(), cfg.output, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"differentially private continual decaying sums"};
  app.require_subcommand(1);

  CoeffsConfig coeffs_cfg;
  auto* coeffs = app.add_subcommand(
      "coeffs", "square-root symbol coefficients and domination gaps (CSV)");
  coeffs->add_option("--decay", coeffs_cfg.decay, "const | poly:C | exp:ALPHA")->required();
  coeffs->add_option("--n", coeffs_cfg.n, "largest coefficient index")->required();
  coeffs->add_option("--output,-o", coeffs_cfg.output, "output path (default stdout)");

  BoundsConfig bounds_cfg;
  auto* bounds = app.add_subcommand("bounds", "gamma_2 / gamma_F bound table (JSON)");
  bounds->add_option("--decay", bounds_cfg.decay, "const | poly:C | exp:ALPHA | window:W")
      ->required();
  bounds->add_option("--T", bounds_cfg.T, "horizon")->required();
  bounds->add_option("--output,-o", bounds_cfg.output, "output path (default stdout)");

  RunConfig run_cfg;
  auto* runc = app.add_subcommand("run", "stream a mechanism over input values (CSV)");
  runc->add_option("--decay", run_cfg.decay)->required();
  runc->add_option("--T", run_cfg.T, "stream length")->required();
  runc->add_option("--epsilon", run_cfg.epsilon)->required();
  runc->add_option("--delta", run_cfg.delta)->required();
  runc->add_option("--clip", run_cfg.clip, "magnitude cap Delta (default 1)");
  runc->add_option("--seed", run_cfg.seed, "rng seed (required: no silent entropy)")
      ->required();
  auto* sfile = runc->add_option("--stream", run_cfg.stream.file,
                                 "stream file, one real per line ('-' = stdin)");
  auto* sdist = runc->add_option("--stream-dist", run_cfg.stream.dist,
                                 "named distribution: ones|zeros|uniform|rademacher");
  sfile->excludes(sdist);
  runc->add_option("--mechanism", run_cfg.mechanism,
                   "auto | factorization | window | gaussian (default auto)");
  runc->add_option("--sigma-convention", run_cfg.sigma_convention,
                   "main-text | appendix | analytic");
  runc->add_flag("--unsafe-no-privacy", run_cfg.unsafe_no_privacy,
                 "disable noise; adds the true_sum column (test mode)");
  runc->add_option("--output,-o", run_cfg.output);

  BenchConfig bench_cfg;
  auto* bench = app.add_subcommand("bench", "Monte Carlo error reports over a grid (CSV)");
  bench->add_option("--decay", bench_cfg.decays, "repeatable decay spec")->required();
  bench->add_option("--T", bench_cfg.horizons, "repeatable horizon")->required();
  bench->add_option("--mechanism", bench_cfg.mechanism,
                    "all | factorization | window | gaussian (default all)");
  bench->add_option("--trials", bench_cfg.trials);
  bench->add_option("--distribution", bench_cfg.distribution,
                    "ones|zeros|uniform|rademacher (default uniform)");
  bench->add_option("--epsilon", bench_cfg.epsilon)->required();
  bench->add_option("--delta", bench_cfg.delta)->required();
  bench->add_option("--clip", bench_cfg.clip);
  bench->add_option("--seed", bench_cfg.seed)->required();
  bench->add_option("--sigma-convention", bench_cfg.sigma_convention);
  bench->add_flag("--unsafe-no-privacy", bench_cfg.unsafe_no_privacy);
  bench->add_option("--threads", bench_cfg.threads, "0 = hardware concurrency");
  bench->add_option("--output,-o", bench_cfg.output);

  std::vector<const char*> args;
  args.push_back("decaysum");
  for (const auto& a : argv) args.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (coeffs->parsed()) return cmd_coeffs(coeffs_cfg, out);
    if (bounds->parsed()) return cmd_bounds(bounds_cfg, out);
    if (runc->parsed()) {
      if (run_cfg.stream.file.empty() && run_cfg.stream.dist.empty())
        throw std::invalid_argument("run: provide exactly one of --stream or --stream-dist");
      return cmd_run(run_cfg, out, err);
    }
    if (bench->parsed()) return cmd_bench(bench_cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace decaysum::cli
