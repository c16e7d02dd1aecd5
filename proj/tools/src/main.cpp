// harmvmd command-line front end.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "harmvmd/baselines.hpp"
#include "harmvmd/error.hpp"
#include "harmvmd/fbd.hpp"
#include "harmvmd/hht.hpp"
#include "harmvmd/io.hpp"
#include "harmvmd/kselect.hpp"
#include "harmvmd/parallel.hpp"
#include "harmvmd/signal.hpp"
#include "harmvmd/vmd.hpp"
#include "report.hpp"

using namespace harmvmd;
using report::ordered_json;

namespace {

constexpr int exit_bad_input = 2;
constexpr int exit_numerical = 3;
constexpr int exit_degenerate = 4;

struct InputOptions {
  std::string in_path;
  std::string preset_name;
  std::vector<std::string> tones;
  std::optional<double> fs;
  std::size_t n = 4096;
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

struct LoadedInput {
  SampledSignal signal;
  std::vector<ToneSpec> truth;
  ordered_json description;
};

ToneSpec parse_tone(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("bad tone field '" + item + "' in '" + text + "'");
    }
  }
  if (v.size() != 3 && v.size() != 5)
    throw InvalidInput("tone must be A,f,phase or A,f,phase,t_start,t_end: '" + text + "'");
  ToneSpec t{v[0], v[1], v[2]};
  if (v.size() == 5) {
    t.t_start_s = v[3];
    t.t_end_s = v[4];
  }
  return t;
}

void add_input_options(CLI::App* sub, InputOptions& o) {
  sub->add_option("--in", o.in_path, "signal CSV with header t,value");
  sub->add_option("--preset", o.preset_name, "built-in signal: eq12, eq14, eq15, substation");
  sub->add_option("--tone", o.tones, "A,f,phase[,t_start,t_end]; synthesizes a signal, or gives ground truth with --in");
  sub->add_option("--fs", o.fs, "sample rate override (Hz)");
  sub->add_option("--n", o.n, "samples to synthesize for --tone")->capture_default_str();
  sub->add_option("--snr-db", o.snr_db, "add white Gaussian noise at this SNR");
  sub->add_option("--seed", o.seed, "noise seed")->capture_default_str();
}

LoadedInput load_input(const InputOptions& o) {
  const int sources = !o.in_path.empty() + !o.preset_name.empty();
  if (sources > 1) throw InvalidInput("use only one of --in and --preset");
  if (sources == 0 && o.tones.empty()) throw InvalidInput("no input: give --in, --preset or --tone");

  std::vector<ToneSpec> tones;
  for (const auto& t : o.tones) tones.push_back(parse_tone(t));

  ordered_json desc;
  std::optional<SampledSignal> sig;
  if (!o.in_path.empty()) {
    sig = read_signal_csv(o.in_path, o.fs);
    desc = {{"source", "file"}, {"path", o.in_path}};
  } else if (!o.preset_name.empty()) {
    if (!tones.empty()) throw InvalidInput("--tone cannot be combined with --preset");
    if (o.fs) throw InvalidInput("--fs cannot be combined with --preset");
    const auto p = preset(o.preset_name);
    tones = p.tones;
    sig = synth_multitone(p.tones, p.sample_rate_hz, p.n_samples);
    desc = {{"source", "preset"}, {"preset", o.preset_name}};
  } else {
    const double fs = o.fs.value_or(4096.0);
    sig = synth_multitone(tones, fs, o.n);
    desc = {{"source", "tones"}};
  }
  if (std::isfinite(o.snr_db) || std::isnan(o.snr_db)) {
    sig = add_awgn(*sig, NoiseSpec{o.snr_db, o.seed});
  }
  desc["snr_db"] = report::number(o.snr_db);
  desc["seed"] = o.seed;
  desc["sample_rate_hz"] = sig->sample_rate_hz();
  desc["n_samples"] = sig->size();
  desc["t0_s"] = sig->t0_s();
  ordered_json truth = ordered_json::array();
  for (const auto& t : tones) truth.push_back(report::to_json(t));
  desc["ground_truth"] = truth;
  return {std::move(*sig), std::move(tones), std::move(desc)};
}

void add_vmd_options(CLI::App* sub, VmdParams& p) {
  static const std::map<std::string, VmdInit> inits{{"zero", VmdInit::zero},
                                                    {"uniform", VmdInit::uniform},
                                                    {"linear", VmdInit::linear},
                                                    {"random", VmdInit::random}};
  sub->add_option("--alpha", p.alpha, "bandwidth penalty")->capture_default_str();
  sub->add_option("--tau", p.tau, "dual ascent step")->capture_default_str();
  sub->add_option("--tol", p.tol, "convergence tolerance")->capture_default_str();
  sub->add_option("--max-iters", p.max_iters, "iteration cap")->capture_default_str();
  sub->add_option("--init", p.init, "center init: zero|uniform|linear|random")
      ->transform(CLI::CheckedTransformer(inits, CLI::ignore_case))
      ->capture_default_str();
  sub->add_option("--vmd-seed", p.seed, "seed for --init random")->capture_default_str();
  sub->add_flag("--dc", p.dc, "pin the first mode to DC");
  sub->add_flag("!--no-mirror", p.mirror, "solve without mirror extension");
}

void add_selection_options(CLI::App* sub, KSelectConfig& c) {
  sub->add_option("--k-min", c.k_min, "smallest K of the sweep")->capture_default_str();
  sub->add_option("--k-max", c.k_max, "largest K of the sweep")->capture_default_str();
  sub->add_option("--prune-threshold", c.prune.energy_fraction_threshold,
                  "energy fraction below which a mode is residual")
      ->capture_default_str();
  sub->add_option("--plateau-eps", c.plateau_epsilon, "plateau tolerance on the FBD score")
      ->capture_default_str();
  sub->add_option("--plateau-window", c.plateau_window, "K values that must stay on the plateau")
      ->capture_default_str();
  sub->add_option("--fbd-coarsest", c.fbd.coarsest_level, "coarsest dyadic level")->capture_default_str();
  sub->add_option("--fbd-min-samples", c.fbd.min_samples_per_column, "samples per finest column")
      ->capture_default_str();
}

void add_hht_options(CLI::App* sub, HhtConfig& h) {
  sub->add_option("--edge-trim", h.edge_trim_fraction, "fraction trimmed at each end")->capture_default_str();
  sub->add_option("--support-threshold", h.support_threshold, "fraction of the amplitude percentile")
      ->capture_default_str();
  sub->add_option("--support-gap", h.support_gap_close_s, "gaps shorter than this are bridged (s)")
      ->capture_default_str();
  sub->add_option("--fundamental", h.fundamental_hz, "power frequency (Hz)")->capture_default_str();
  sub->add_option("--harmonic-tol", h.harmonic_tolerance_hz, "harmonic match tolerance (Hz)")
      ->capture_default_str();
  sub->add_option("--min-freq", h.min_frequency_hz, "drop slower components (Hz)")->capture_default_str();
}

void add_emd_options(CLI::App* sub, EmdConfig& e) {
  sub->add_option("--emd-max-imfs", e.max_imfs)->capture_default_str();
  sub->add_option("--emd-sd", e.sift_sd_threshold)->capture_default_str();
  sub->add_option("--emd-max-sifts", e.max_sifts_per_imf)->capture_default_str();
  sub->add_option("--eemd-ensemble", e.ensemble_size)->capture_default_str();
  sub->add_option("--eemd-noise", e.noise_std_fraction, "noise std over signal std")->capture_default_str();
  sub->add_option("--eemd-seed", e.seed)->capture_default_str();
}

void emit(const ordered_json& j, const std::string& path) {
  const auto text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  return out;
}

ordered_json envelope(const std::string& command, ordered_json config, ordered_json input) {
  ordered_json j;
  j["schema"] = report::schema_version;
  j["command"] = command;
  j["input"] = std::move(input);
  j["config"] = std::move(config);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic and interharmonic detection with FBD-tuned VMD"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = default_thread_count();
  app.add_option("--threads", threads, "worker threads (default from HARMVMD_THREADS, else 1)")
      ->capture_default_str();

  InputOptions in;
  std::string out_path;
  std::string csv_path;
  VmdParams vmd;
  KSelectConfig sel;
  HhtConfig hht;
  EmdConfig emd_cfg;
  FbdOptions fbd_opts;
  std::optional<int> fixed_k;

  auto* gen = app.add_subcommand("generate", "write a synthetic signal CSV");
  add_input_options(gen, in);
  gen->add_option("--out", out_path, "CSV path (stdout when omitted)");

  auto* dec = app.add_subcommand("decompose", "VMD at a fixed K");
  add_input_options(dec, in);
  add_vmd_options(dec, vmd);
  dec->add_option("--k", vmd.k, "number of modes")->required();
  dec->add_option("--modes-out", csv_path, "modes CSV (t,imf1..imfK)");
  dec->add_option("--out", out_path, "meta JSON (stdout when omitted)");

  auto* sk = app.add_subcommand("select-k", "FBD sweep over K");
  add_input_options(sk, in);
  add_vmd_options(sk, sel.vmd);
  add_selection_options(sk, sel);
  sk->add_option("--trace-out", csv_path, "trace CSV (k,score,pruned_count)");
  sk->add_option("--out", out_path, "JSON report (stdout when omitted)");

  auto* det = app.add_subcommand("detect", "full detection pipeline");
  add_input_options(det, in);
  add_vmd_options(det, sel.vmd);
  add_selection_options(det, sel);
  add_hht_options(det, hht);
  det->add_option("--k", fixed_k, "skip the sweep and use this K");
  det->add_option("--series-out", csv_path, "retained modes as plot-series CSV");
  det->add_option("--out", out_path, "JSON report (stdout when omitted)");

  auto* fb = app.add_subcommand("fbd", "box-counting dimension of a signal");
  add_input_options(fb, in);
  fb->add_option("--coarsest", fbd_opts.coarsest_level)->capture_default_str();
  fb->add_option("--min-samples", fbd_opts.min_samples_per_column)->capture_default_str();
  fb->add_option("--curve-out", csv_path, "count curve CSV (eps,count)");
  fb->add_option("--out", out_path, "JSON report (stdout when omitted)");

  auto* cmp = app.add_subcommand("compare", "VMD vs EMD vs EEMD against ground truth");
  add_input_options(cmp, in);
  add_vmd_options(cmp, sel.vmd);
  add_selection_options(cmp, sel);
  add_hht_options(cmp, hht);
  add_emd_options(cmp, emd_cfg);
  cmp->add_option("--k", fixed_k, "VMD K (swept when omitted)");
  cmp->add_option("--table-out", csv_path, "comparison CSV");
  cmp->add_option("--out", out_path, "JSON report (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_bad_input;
  }

  try {
    if (threads < 1) throw InvalidInput("--threads must be at least 1");
    sel.threads = threads;
    emd_cfg.threads = threads;

    if (*gen) {
      const auto input = load_input(in);
      if (out_path.empty() || out_path == "-") {
        write_signal_csv(std::cout, input.signal);
      } else {
        auto out = open_out(out_path);
        write_signal_csv(out, input.signal);
      }
      return 0;
    }

    if (*dec) {
      const auto input = load_input(in);
      const auto d = vmd_decompose(input.signal, vmd);
      if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        write_columns_csv(out, input.signal.sample_rate_hz(), input.signal.t0_s(), d.modes);
      }
      auto j = envelope("decompose", {{"vmd", report::to_json(vmd)}}, input.description);
      j["result"] = report::decomposition_meta(d);
      emit(j, out_path);
      return 0;
    }

    if (*sk) {
      const auto input = load_input(in);
      const auto trace = select_k(input.signal, sel);
      if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        out << "k,score,pruned_count\n";
        for (std::size_t i = 0; i < trace.k_values.size(); ++i)
          out << trace.k_values[i] << ',' << format_double(trace.scores[i]) << ','
              << trace.pruned_counts[i] << '\n';
      }
      std::cerr << "chosen_k " << trace.chosen_k << " (argmin " << trace.argmin_k << ")\n";
      auto j = envelope("select-k", {{"selection", report::to_json(sel)}}, input.description);
      j["result"] = report::to_json(trace);
      emit(j, out_path);
      return 0;
    }

    if (*det) {
      const auto input = load_input(in);
      DetectConfig cfg{sel, hht, fixed_k};
      auto r = detect_harmonics(input.signal, cfg);
      if (!input.truth.empty()) attach_ground_truth(r, input.truth);
      if (!csv_path.empty()) {
        std::vector<std::vector<double>> cols;
        for (const auto& c : r.components) cols.push_back(r.decomposition.modes[c.source_mode_index]);
        auto out = open_out(csv_path);
        write_columns_csv(out, input.signal.sample_rate_hz(), input.signal.t0_s(), cols, "component");
      }
      ordered_json config = {{"selection", report::to_json(sel)},
                             {"hht", report::to_json(hht)},
                             {"fixed_k", fixed_k ? ordered_json(*fixed_k) : ordered_json()}};
      auto j = envelope("detect", config, input.description);
      j["result"] = report::to_json(r);
      emit(j, out_path);
      return r.degenerate ? exit_degenerate : 0;
    }

    if (*fb) {
      const auto input = load_input(in);
      const auto e = fractal_box_dimension(input.signal.samples(), fbd_opts);
      if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        out << "eps,count\n";
        for (std::size_t i = 0; i < e.curve.scales.size(); ++i)
          out << format_double(e.curve.scales[i]) << ',' << e.curve.counts[i] << '\n';
      }
      auto j = envelope("fbd", {{"fbd", report::to_json(fbd_opts)}}, input.description);
      j["result"] = report::to_json(e);
      emit(j, out_path);
      return e.degenerate ? exit_degenerate : 0;
    }

    if (*cmp) {
      const auto input = load_input(in);
      VmdParams p = sel.vmd;
      std::optional<KSelectionTrace> trace;
      if (fixed_k) {
        p.k = *fixed_k;
      } else {
        trace = select_k(input.signal, sel);
        p.k = trace->chosen_k;
      }
      const auto d = vmd_decompose(input.signal, p);
      const auto e = emd(input.signal, emd_cfg);
      const auto ee = eemd(input.signal, emd_cfg);
      const std::vector<MethodComponents> methods{{"vmd", d.modes}, {"emd", e.imfs}, {"eemd", ee.imfs}};
      const auto table = compare_methods(input.signal, input.truth, methods, hht);

      if (!csv_path.empty()) {
        auto out = open_out(csv_path);
        out << "method,tone_index,true_frequency_hz,true_amplitude,component,correlation,"
               "amplitude_rel_error,frequency_rel_error,matched,spurious_count\n";
        for (const auto& row : table) {
          for (const auto& t : row.tones) {
            out << row.method << ',' << t.tone_index << ',' << format_double(t.true_frequency_hz) << ','
                << format_double(t.true_amplitude) << ','
                << (t.component_index ? std::to_string(*t.component_index + 1) : std::string()) << ','
                << format_double(t.correlation) << ',' << format_double(t.amplitude_rel_error) << ','
                << format_double(t.frequency_rel_error) << ',' << (t.matched ? 1 : 0) << ",\n";
          }
          // per-method totals: component count, matched tones, spurious components
          out << row.method << ",summary,,," << row.component_count << ",,,," << row.matched_count << ','
              << row.spurious_count << '\n';
        }
      }
      ordered_json config = {{"selection", report::to_json(sel)},
                             {"hht", report::to_json(hht)},
                             {"emd", report::to_json(emd_cfg)},
                             {"fixed_k", fixed_k ? ordered_json(*fixed_k) : ordered_json()}};
      auto j = envelope("compare", config, input.description);
      ordered_json rows = ordered_json::array();
      for (const auto& row : table) rows.push_back(report::to_json(row));
      j["result"] = {{"vmd_k", p.k},
                     {"selection", trace ? report::to_json(*trace) : ordered_json()},
                     {"methods", rows}};
      emit(j, out_path);
      return 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_bad_input;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_bad_input;
  }
  return 0;
}
