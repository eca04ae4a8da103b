// tnn: tensor completion from the command line.
//
//   tnn synth    --dims 20,20,10 --rank 3 --seed 1 --out x.tt3d
//   tnn mask     --dims 20,20,10 --mask bernoulli:p=0.5,seed=1 --out m.ttm1
//   tnn complete x.tt3d --mask bernoulli:p=0.5,seed=1 --out xhat.tt3d
//   tnn metrics  xhat.tt3d x.tt3d
//   tnn oracle   --budget 16777216

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tnn/config.hpp"
#include "tnn/experiments.hpp"
#include "tnn/frames.hpp"
#include "tnn/io.hpp"
#include "tnn/oracle_suite.hpp"
#include "tnn/solver.hpp"
#include "tnn/tsvd.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, usage = 1, io_failure = 2, numerical = 3, oracle_failure = 4 };

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  usage error (bad flag, bad mask spec, bad config)\n"
    "  2  I/O error (unreadable or malformed input, mask/tensor size mismatch)\n"
    "  3  numerical failure (non-finite data, SVD failure, divergence)\n"
    "  4  oracle check failed\n";

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

tnn::Dims parse_dims(const std::string& text) {
  tnn::Dims d;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> d.n1 >> c1 >> d.n2 >> c2 >> d.n3) || c1 != ',' || c2 != ',' || !is.eof() || d.size() == 0) {
    throw UsageError("--dims expects n1,n2,n3 with positive entries, got '" + text + "'");
  }
  return d;
}

struct Input {
  tnn::Tensor3 gray;
  std::optional<std::array<tnn::Tensor3, 3>> rgb;
};

Input read_input(const fs::path& p) {
  if (fs::is_directory(p)) {
    auto seq = tnn::frames::load_frames(p);
    return {std::move(seq.gray), std::move(seq.rgb)};
  }
  return {tnn::io::load_tensor(p), std::nullopt};
}

void write_metrics(std::ostream& os, const tnn::Tensor3& x, const tnn::Tensor3& truth) {
  os << "frame,rse_db\n" << std::setprecision(17);
  const auto rse = tnn::rse_per_frame(x, truth);
  for (std::size_t k = 0; k < rse.size(); ++k) os << k << ',' << rse[k] << '\n';
  os << "irse," << tnn::irse(x, truth) << '\n';
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw tnn::IoError("cannot open " + p.string() + " for writing");
  return os;
}

struct CompleteArgs {
  std::string input;
  std::string mask;
  std::string out = "completed.tt3d";
  std::string truth;
  std::string frames_out;
  std::string report;
  std::string metrics;
  std::string config;
  std::string channels = "gray";
  std::optional<std::string> occlusion_mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::optional<double> rho0, eta, tol, rho_max;
  std::optional<int> max_iters;
  std::optional<std::string> regularizer, prox_scaling, spectrum;
  bool quiet = false;
};

tnn::Mask3 resolve_mask(const CompleteArgs& a, tnn::Dims dims) {
  if (fs::exists(a.mask) && !fs::is_directory(a.mask)) {
    if (a.occlusion_mode) throw UsageError("--occlusion-mode applies to occlusion specs, not mask files");
    return tnn::io::load_mask(a.mask);
  }
  auto spec = tnn::parse_mask_spec(a.mask);
  if (a.seed && a.mask.find("seed=") == std::string::npos) spec.seed = *a.seed;
  if (a.occlusion_mode) {
    auto* occ = std::get_if<tnn::OcclusionSpec>(&spec.kind);
    if (!occ) throw UsageError("--occlusion-mode needs an occlusion mask spec");
    if (*a.occlusion_mode == "area") occ->mode = tnn::OcclusionMode::area;
    else occ->mode = tnn::OcclusionMode::side;
  }
  return tnn::make_mask(dims, spec);
}

int run_complete(const CompleteArgs& a) {
  tnn::RunConfig cfg;
  if (!a.config.empty()) cfg = tnn::load_config(a.config);
  const auto set = [&](const char* key, const auto& opt) {
    if (!opt) return;
    std::ostringstream v;
    v << std::setprecision(17) << *opt;
    tnn::apply_setting(cfg, key, v.str());
  };
  set("rho0", a.rho0);
  set("eta", a.eta);
  set("tol", a.tol);
  set("rho_max", a.rho_max);
  set("max_iters", a.max_iters);
  set("regularizer", a.regularizer);
  set("prox_scaling", a.prox_scaling);
  set("spectrum", a.spectrum);
  set("seed", a.seed);
  set("budget", a.budget);
  cfg.admm.validate();

  const Input in = read_input(a.input);
  const tnn::Mask3 omega = resolve_mask(a, in.gray.dims());
  if (omega.dims() != in.gray.dims()) {
    throw tnn::DimensionError("mask is " + tnn::to_string(omega.dims()) + " but input is " +
                              tnn::to_string(in.gray.dims()));
  }

  const bool split = a.channels == "split";
  if (split && !in.rgb) throw UsageError("--channels split needs a directory of color frames");

  tnn::Tensor3 result;
  tnn::SolveReport report;
  std::optional<std::array<tnn::Tensor3, 3>> rgb_out;
  if (split) {
    rgb_out.emplace();
    for (int c = 0; c < 3; ++c) {
      auto solved = tnn::complete((*in.rgb)[c], omega, cfg.admm);
      (*rgb_out)[c] = std::move(solved.x);
      if (c == 0 || solved.report.iterations > report.iterations) report = std::move(solved.report);
    }
    result = tnn::Tensor3(in.gray.dims());
    const auto r = (*rgb_out)[0].data(), g = (*rgb_out)[1].data(), b = (*rgb_out)[2].data();
    auto out = result.data();
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = tnn::frames::luminance(r[n], g[n], b[n]);
  } else {
    auto solved = tnn::complete(in.gray, omega, cfg.admm);
    result = std::move(solved.x);
    report = std::move(solved.report);
  }

  const fs::path out(a.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  tnn::io::save_tensor(out, result);
  const fs::path report_path = a.report.empty() ? out.parent_path() / "report.csv" : fs::path(a.report);
  {
    auto os = open_out(report_path);
    report.write_csv(os);
  }
  if (!a.frames_out.empty()) {
    if (rgb_out) tnn::frames::save_frames_rgb(a.frames_out, *rgb_out);
    else tnn::frames::save_frames(a.frames_out, result);
  }
  if (!a.truth.empty()) {
    const tnn::Tensor3 truth = read_input(a.truth).gray;
    tnn::require_same_dims(truth.dims(), result.dims(), "--truth");
    const fs::path metrics_path = a.metrics.empty() ? out.parent_path() / "metrics.csv" : fs::path(a.metrics);
    auto os = open_out(metrics_path);
    write_metrics(os, result, truth);
    if (!a.quiet) std::cout << "irse " << tnn::irse(result, truth) << " dB\n";
  }
  if (!a.quiet) std::cout << report.summary() << '\n';
  return Exit::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank tensor completion with the twist tensor nuclear norm"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Write a seeded tensor of bounded multi-rank");
  std::string synth_dims, synth_out;
  std::size_t synth_rank = 1;
  std::uint64_t synth_seed = 0;
  synth->add_option("--dims", synth_dims, "n1,n2,n3")->required();
  synth->add_option("--rank", synth_rank, "Inner dimension r of the factors")->required()->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--out", synth_out, "TT3D output file")->required();

  // mask
  auto* mask = app.add_subcommand("mask", "Write a TTM1 observation mask");
  std::string mask_dims, mask_spec, mask_out, mask_mode;
  bool mask_all = false;
  mask->add_option("--dims", mask_dims, "n1,n2,n3")->required();
  auto* mask_spec_opt = mask->add_option("--mask", mask_spec, "bernoulli:p=..,seed=.. or occlusion:frac=..,seed=..,mode=area|side");
  mask->add_flag("--all", mask_all, "Every entry observed")->excludes(mask_spec_opt);
  mask->add_option("--occlusion-mode", mask_mode, "Override the occlusion block rule")->check(CLI::IsMember({"area", "side"}));
  mask->add_option("--out", mask_out, "TTM1 output file")->required();

  // complete
  auto* complete = app.add_subcommand("complete", "Fill in unobserved entries of a tensor or frame sequence");
  CompleteArgs ca;
  complete->add_option("input", ca.input, "TT3D file or directory of .pgm/.ppm frames")->required();
  complete->add_option("--mask", ca.mask, "Mask spec (bernoulli:p=0.3,seed=7 | occlusion:frac=0.3,seed=7,mode=area) or TTM1 file")
      ->required();
  complete->add_option("--out", ca.out, "Completed TT3D tensor")->capture_default_str();
  complete->add_option("--report", ca.report, "Iteration log CSV (default: report.csv beside --out)");
  complete->add_option("--truth", ca.truth, "Ground truth (TT3D or frame directory); enables metrics.csv");
  complete->add_option("--metrics", ca.metrics, "Metrics CSV (default: metrics.csv beside --out)");
  complete->add_option("--frames-out", ca.frames_out, "Directory for per-frame rasters of the result");
  complete->add_option("--config", ca.config, "key = value file; flags override it");
  complete->add_option("--regularizer", ca.regularizer, "ttnn | gtnn | mnn3")->check(CLI::IsMember({"ttnn", "gtnn", "mnn3"}));
  complete->add_option("--rho0", ca.rho0, "Initial penalty");
  complete->add_option("--eta", ca.eta, "Penalty growth factor (> 1)");
  complete->add_option("--tol", ca.tol, "Stop when ||X - Y|| / ||X|| falls below this");
  complete->add_option("--max-iters", ca.max_iters, "Iteration cap");
  complete->add_option("--rho-max", ca.rho_max, "Penalty cap");
  complete->add_option("--prox-scaling", ca.prox_scaling, "Fourier threshold: paper (tau) or parseval (n3 * tau)")
      ->check(CLI::IsMember({"paper", "parseval", "paper_literal", "parseval_scaled"}));
  complete->add_option("--spectrum", ca.spectrum, "half (conjugate-symmetric shortcut) or full")
      ->check(CLI::IsMember({"half", "full"}));
  complete->add_option("--occlusion-mode", ca.occlusion_mode, "area | side")->check(CLI::IsMember({"area", "side"}));
  complete->add_option("--budget", ca.budget, "Dense oracle element budget");
  complete->add_option("--seed", ca.seed, "Seed for masks whose spec has none");
  complete->add_option("--channels", ca.channels, "gray | split (solve R, G, B separately)")
      ->check(CLI::IsMember({"gray", "split"}))
      ->capture_default_str();
  complete->add_flag("--quiet", ca.quiet, "No summary on stdout");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Per-frame RSE and global iRSE of an estimate against ground truth");
  std::string metrics_x, metrics_truth, metrics_out;
  metrics->add_option("estimate", metrics_x, "TT3D file or frame directory")->required();
  metrics->add_option("truth", metrics_truth, "TT3D file or frame directory")->required();
  metrics->add_option("--out", metrics_out, "CSV file (default: stdout)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Check the algebraic identities the solver relies on");
  tnn::OracleOptions oo;
  oracle->add_option("--budget", oo.budget.max_elements, "Largest dense matrix (elements) a check may build")
      ->capture_default_str();
  oracle->add_option("--seed", oo.seed, "Corpus seed")->capture_default_str();
  oracle->add_flag("--corrupt-fixture", oo.corrupt_fixture, "Flip one fixture entry (harness self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Exit::usage;
  }

  try {
    if (*synth) {
      const auto d = parse_dims(synth_dims);
      const auto t = tnn::synth_low_multirank(d.n1, d.n2, d.n3, synth_rank, synth_seed);
      tnn::io::save_tensor(synth_out, t);
      std::cout << "multi-rank:";
      for (auto r : tnn::multi_rank(t, 1e-8)) std::cout << ' ' << r;
      std::cout << '\n';
    } else if (*mask) {
      const auto d = parse_dims(mask_dims);
      if (!mask_all && mask_spec.empty()) throw UsageError("mask: give --mask or --all");
      tnn::Mask3 m(d, true);
      if (!mask_all) {
        auto spec = tnn::parse_mask_spec(mask_spec);
        if (auto* occ = std::get_if<tnn::OcclusionSpec>(&spec.kind); occ && !mask_mode.empty()) {
          occ->mode = mask_mode == "area" ? tnn::OcclusionMode::area : tnn::OcclusionMode::side;
        }
        m = tnn::make_mask(d, spec);
      }
      tnn::io::save_mask(mask_out, m);
      std::cout << "observed " << m.observed_count() << " of " << m.size() << '\n';
    } else if (*complete) {
      return run_complete(ca);
    } else if (*metrics) {
      const auto x = read_input(metrics_x).gray;
      const auto truth = read_input(metrics_truth).gray;
      tnn::require_same_dims(x.dims(), truth.dims(), "metrics");
      if (metrics_out.empty()) {
        write_metrics(std::cout, x, truth);
      } else {
        auto os = open_out(metrics_out);
        write_metrics(os, x, truth);
      }
    } else if (*oracle) {
      const auto report = tnn::run_oracle_suite(oo);
      report.print(std::cout);
      return report.all_passed() ? Exit::ok : Exit::oracle_failure;
    }
    return Exit::ok;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << kExitCodes;
    return Exit::usage;
  } catch (const tnn::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::io_failure;
  } catch (const tnn::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::io_failure;
  } catch (const tnn::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::numerical;
  } catch (const tnn::BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::io_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::numerical;
  }
}
