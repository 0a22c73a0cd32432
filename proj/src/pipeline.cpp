#include "qil/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "qil/report_io.hpp"

namespace qil {
namespace {

// Stream identifiers for seeds derived from the experiment seed.
enum SeedStream : std::uint64_t { kReadoutStream = 1, kNoiseStream = 2, kTomographyStream = 3, kClassicalStream = 4 };

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink) {}

  template <typename F>
  auto time(std::string stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
      const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
      sink_.push_back({std::move(stage), dt.count()});
    };
    if constexpr (std::is_void_v<std::invoke_result_t<F>>) {
      std::forward<F>(f)();
      finish();
    } else {
      auto result = std::forward<F>(f)();
      finish();
      return result;
    }
  }

 private:
  std::vector<StageTiming>& sink_;
};

bool noise_on_state(const StateNoiseConfig& cfg) {
  return cfg.mode == StateNoiseMode::amplitude_perturbation && cfg.magnitude > 0.0;
}

StateNoiseConfig with_seed(StateNoiseConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  return cfg;
}

GrayImage single_pixel(std::uint32_t value, int q) { return GrayImage(0, q, {value}); }

std::uint32_t pixel_cyclic(const GrayImage& img, int i) { return img[static_cast<std::size_t>(i) % img.size()]; }

GrayImage synthetic_image(int n, int q) {
  const std::size_t count = (std::size_t{1} << n) << n;
  std::vector<std::uint32_t> px(count);
  const std::uint32_t top = (std::uint32_t{1} << q) - 1;
  for (std::size_t i = 0; i < count; ++i) px[i] = static_cast<std::uint32_t>((i * 37 + 11) % (std::size_t{top} + 1));
  return GrayImage(n, q, std::move(px));
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void write_run_outputs(const RunReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto decoded = dir / "decoded.pgm";
  if (r.config.representation == Representation::qubo) {
    std::vector<std::uint8_t> bits(r.decoded.pixels().begin(), r.decoded.pixels().end());
    write_pgm(decoded, BinaryImage(r.decoded.n(), std::move(bits)));
  } else {
    write_pgm(decoded, r.decoded);
  }
  write_text_file(dir / "noise_map.csv", csv_grid(r.noise_map));
  write_pgm(dir / "noise_map.pgm", noise_map_preview(r.noise_map, r.reference.q()));
  write_text_file(dir / "metrics.csv", metrics_csv_header() + metrics_csv_row(r));

  nlohmann::json j;
  const auto& c = r.config;
  j["config"] = {
      {"representation", std::string(to_string(c.representation))},
      {"image", c.image ? std::string("<in-memory>") : c.image_path.string()},
      {"shots", c.shots},
      {"seed", c.seed},
      {"algorithm", c.unitary_path ? c.unitary_path->string() : std::string("identity")},
      {"state_noise",
       {{"mode", c.state_noise.mode == StateNoiseMode::classical_pre_encode ? "classical-pre-encode"
                                                                             : "amplitude-perturbation"},
        {"magnitude", c.state_noise.magnitude},
        {"seed", c.state_noise.seed},
        {"distribution", "independent normal real and imaginary parts"}}},
      {"tomography", {{"enabled", c.tomography.enabled}, {"qubits", c.tomography.qubits}, {"shots", c.tomography.shots}}},
      {"max_qubits", c.max_qubits},
  };
  j["image"] = {{"n", r.reference.n()}, {"q", r.reference.q()}, {"side", r.reference.side()}};
  j["qubit_budget"] = r.qubit_budget;
  j["register_qubits"] = r.register_qubits;
  j["decoded_path"] = decoded.string();
  j["image_error"] = to_json(r.image_error);
  j["coverage"] = to_json(r.coverage);
  if (r.tomography) {
    const auto& t = *r.tomography;
    j["tomography"] = tomography_record(t.estimate, t.ideal);
    j["tomography"]["shots_per_observable"] = t.shots;
    j["tomography"]["projected"] = tomography_record(t.projected, t.ideal);
    write_text_file(dir / "tomo_real.csv", csv_grid(Eigen::MatrixXd(t.estimate.matrix().real())));
    write_text_file(dir / "tomo_imag.csv", csv_grid(Eigen::MatrixXd(t.estimate.matrix().imag())));
  }
  auto timings = nlohmann::json::array();
  for (const auto& s : r.timings) timings.push_back({{"stage", s.stage}, {"ms", s.milliseconds}});
  j["timings"] = std::move(timings);
  write_text_file(dir / "report.json", j.dump(2) + "\n");
}

}  // namespace

int max_qubits_from_env() {
  const char* v = std::getenv("QIL_MAX_QUBITS");
  if (!v || !*v) return kDefaultMaxQubits;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 30) throw InvalidArgument("QIL_MAX_QUBITS must be an integer in [1, 30]");
  return static_cast<int>(n);
}

GrayImage apply_classical_noise(const GrayImage& img, const StateNoiseConfig& cfg) {
  cfg.validate();
  if (cfg.magnitude == 0.0) return img;
  Rng rng(cfg.seed);
  const double top = static_cast<double>(img.max_value());
  std::vector<std::uint32_t> px(img.pixels());
  for (auto& p : px) {
    const double v = std::round(static_cast<double>(p) + cfg.magnitude * top * rng.normal());
    p = static_cast<std::uint32_t>(std::clamp(v, 0.0, top));
  }
  return GrayImage(img.n(), img.q(), std::move(px));
}

StateVectord tomography_register(Representation r, const GrayImage& img, int k) {
  if (k < 1 || k > 3) throw InvalidArgument("tomography register must have 1 to 3 qubits");
  std::optional<StateVectord> reg;
  auto append = [&](const StateVectord& s) { reg = reg ? tensor(*reg, s) : s; };
  switch (r) {
    case Representation::frqi:
      for (int i = 0; i < k; ++i) append(frqi_encode(single_pixel(pixel_cyclic(img, i), img.q())).state());
      break;
    case Representation::neqr: {
      std::size_t index = 0;
      for (int b = 0; b < k; ++b) {
        const int pixel = b / img.q();
        const int bit = img.q() - 1 - b % img.q();
        index = (index << 1) | ((pixel_cyclic(img, pixel) >> bit) & 1u);
      }
      append(StateVectord::basis(k, index));
      break;
    }
    case Representation::qubo:
      for (int i = 0; i < k; ++i) {
        const auto qs = qubo_encode(single_pixel(pixel_cyclic(img, i), img.q()));
        append(StateVectord::from_qubit(qs.qubits().front()));
      }
      break;
  }
  return *reg;
}

TomographyResult run_tomography(Representation r, const GrayImage& img, const TomographyConfig& cfg,
                                std::uint64_t seed, const StateNoiseConfig& noise) {
  StateVectord reg = tomography_register(r, img, cfg.qubits);
  if (noise_on_state(noise)) reg = inject_state_noise(reg, noise);
  const auto design = full_pauli_design(cfg.qubits);
  auto ideal = density_from_pure(reg);
  const auto freq = simulate_frequencies(ideal, design, cfg.shots, seed);
  auto estimate = linear_inversion(design, freq);
  auto projected = project_to_physical(estimate);
  auto error = matrix_error(ideal, estimate);
  return {cfg.qubits, cfg.shots, std::move(ideal), std::move(estimate), std::move(projected), std::move(error)};
}

RunReport run_pipeline(const ExperimentConfig& cfg) {
  cfg.state_noise.validate();
  std::vector<StageTiming> timings;
  Stopwatch sw(timings);

  const GrayImage source = sw.time("load_image", [&] { return cfg.image ? *cfg.image : read_pgm(cfg.image_path); });
  const auto rep = cfg.representation;
  const int n = source.n();
  const int q = source.q();
  const std::uint64_t budget = qubit_budget(rep, n, q);
  const int register_qubits = simulated_register_qubits(rep, n, q);
  if (register_qubits > cfg.max_qubits) {
    throw BudgetExceeded(std::string(to_string(rep)) + " needs a " + std::to_string(register_qubits) +
                         "-qubit register for a " + std::to_string(source.side()) + "x" +
                         std::to_string(source.side()) + " image at q = " + std::to_string(q) + "; the cap is " +
                         std::to_string(cfg.max_qubits));
  }

  GrayImage input = source;
  if (cfg.state_noise.mode == StateNoiseMode::classical_pre_encode && cfg.state_noise.magnitude > 0.0) {
    input = sw.time("classical_noise", [&] {
      return apply_classical_noise(source, with_seed(cfg.state_noise, derive_seed(cfg.state_noise.seed, kClassicalStream)));
    });
  }

  std::optional<UnitaryMatrixd> unitary;
  if (cfg.unitary_path) unitary = sw.time("load_unitary", [&] { return read_unitary_csv(*cfg.unitary_path); });

  const DecodeMode mode{cfg.shots, derive_seed(cfg.seed, kReadoutStream)};
  const StateNoiseConfig noise = with_seed(cfg.state_noise, derive_seed(cfg.state_noise.seed, kNoiseStream));
  auto evolve = [&](StateVectord s) {
    if (noise_on_state(noise)) s = sw.time("state_noise", [&] { return inject_state_noise(s, noise); });
    if (unitary) s = sw.time("algorithm", [&] { return apply_unitary(*unitary, s); });
    return s;
  };

  std::optional<GrayImage> reference;
  std::optional<DecodeResult> result;
  switch (rep) {
    case Representation::frqi: {
      reference = source;
      auto fs = sw.time("encode", [&] { return frqi_encode(input); });
      FrqiState out(fs.n(), fs.q(), evolve(fs.state()));
      result = sw.time("measure_decode", [&] { return frqi_decode(out, mode); });
      break;
    }
    case Representation::neqr: {
      reference = source;
      auto ns = sw.time("encode", [&] { return neqr_encode(input); });
      NeqrState out(ns.n(), ns.q(), evolve(ns.state()));
      result = sw.time("measure_decode", [&] { return neqr_decode(out, mode, Readout::most_likely); });
      break;
    }
    case Representation::qubo: {
      const int plane = cfg.qubo_plane.value_or(q - 1);
      reference = source.bit_plane(plane).as_gray();
      auto qs = sw.time("encode", [&] { return qubo_encode(input, plane); });
      if (noise_on_state(noise) || unitary) {
        std::vector<Qubitd> qubits;
        qubits.reserve(qs.size());
        for (std::size_t i = 0; i < qs.size(); ++i) {
          StateVectord s = StateVectord::from_qubit(qs.qubits()[i]);
          if (noise_on_state(noise)) s = inject_state_noise(s, with_seed(noise, derive_seed(noise.seed, i)));
          if (unitary) s = apply_unitary(*unitary, s);
          qubits.emplace_back(s[0], s[1]);
        }
        qs = QuboState(qs.n(), std::move(qubits));
      }
      auto bits = sw.time("measure_decode", [&] { return qubo_decode(qs, mode, Readout::most_likely); });
      result = DecodeResult{bits.as_gray(), CoverageReport{bits.size(), {}}};
      break;
    }
  }

  auto err = image_error(*reference, result->image);
  auto map = noise_map(*reference, result->image);

  std::optional<TomographyResult> tomo;
  if (cfg.tomography.enabled) {
    tomo = sw.time("tomography", [&] {
      return run_tomography(rep, input, cfg.tomography, derive_seed(cfg.seed, kTomographyStream), noise);
    });
  }

  RunReport report{cfg,
                   budget,
                   register_qubits,
                   std::move(*reference),
                   std::move(result->image),
                   err,
                   std::move(map),
                   std::move(result->coverage),
                   std::move(tomo),
                   std::move(timings),
                   std::nullopt};
  if (!cfg.output_dir.empty()) {
    write_run_outputs(report, cfg.output_dir);
    report.decoded_path = cfg.output_dir / "decoded.pgm";
  }
  return report;
}

std::string metrics_csv_header() {
  return "representation,n,q,qubit_budget,register_qubits,shots,seed,noise_magnitude,mae,mse,psnr_db,"
         "max_pixel_error,positions_observed,positions_total,tomo_qubits,tomo_shots,tomo_max_pct_real,"
         "tomo_max_pct_imag,tomo_physical\n";
}

std::string metrics_csv_row(const RunReport& r) {
  const auto& c = r.config;
  std::string row;
  auto add = [&row](const std::string& v) {
    if (!row.empty()) row += ',';
    row += v;
  };
  add(std::string(to_string(c.representation)));
  add(std::to_string(r.reference.n()));
  add(std::to_string(r.reference.q()));
  add(std::to_string(r.qubit_budget));
  add(std::to_string(r.register_qubits));
  add(std::to_string(c.shots));
  add(std::to_string(c.seed));
  add(format_number(c.state_noise.magnitude));
  add(format_number(r.image_error.mae));
  add(format_number(r.image_error.mse));
  add(r.image_error.psnr.is_infinite() ? "inf" : format_number(r.image_error.psnr.db()));
  add(std::to_string(r.image_error.max_pixel_error));
  add(std::to_string(r.coverage.positions - r.coverage.missing.size()));
  add(std::to_string(r.coverage.positions));
  if (r.tomography) {
    add(std::to_string(r.tomography->qubits));
    add(std::to_string(r.tomography->shots));
    add(format_number(r.tomography->error.max_percentage_error_real));
    add(opt_number(r.tomography->error.max_percentage_error_imag));
    add(r.tomography->estimate.physical() ? "true" : "false");
  } else {
    add("");
    add("");
    add("");
    add("");
    add("");
  }
  return row + "\n";
}

CompareResult run_repr_compare(const ExperimentConfig& base) {
  CompareResult out;
  const Representation reps[] = {Representation::frqi, Representation::neqr, Representation::qubo};
  out.comparison_csv = metrics_csv_header();
  for (std::size_t i = 0; i < 3; ++i) {
    ExperimentConfig cfg = base;
    cfg.representation = reps[i];
    cfg.seed = derive_seed(base.seed, i);
    if (!base.output_dir.empty()) cfg.output_dir = base.output_dir / std::string(to_string(reps[i]));
    out.runs.push_back(run_pipeline(cfg));
    out.comparison_csv += metrics_csv_row(out.runs.back());
  }

  if (base.tomography.enabled) {
    const GrayImage img = base.image ? *base.image : read_pgm(base.image_path);
    out.sweep_csv = "representation,tomo_qubits,tomo_shots,max_pct_real,max_pct_imag,physical\n";
    for (std::size_t i = 0; i < 3; ++i) {
      for (int k = 1; k <= 3; ++k) {
        TomographyConfig tc = base.tomography;
        tc.qubits = k;
        const auto t = run_tomography(reps[i], img, tc, derive_seed(derive_seed(base.seed, i), 100 + k));
        out.sweep_csv += std::string(to_string(reps[i])) + "," + std::to_string(k) + "," + std::to_string(tc.shots) +
                         "," + format_number(t.error.max_percentage_error_real) + "," +
                         opt_number(t.error.max_percentage_error_imag) + "," +
                         (t.estimate.physical() ? "true" : "false") + "\n";
      }
    }
  }

  if (!base.output_dir.empty()) {
    std::filesystem::create_directories(base.output_dir);
    write_text_file(base.output_dir / "comparison.csv", out.comparison_csv);
    if (!out.sweep_csv.empty()) write_text_file(base.output_dir / "sweep.csv", out.sweep_csv);
  }
  return out;
}

std::string complexity_class(Representation r) {
  switch (r) {
    case Representation::frqi: return "O(2^{4n})";
    case Representation::neqr: return "O(qn2^{2n})";
    case Representation::qubo: return "O(2^{2n})";
  }
  return "";
}

std::string run_budget_report(int n_min, int n_max, int q, int max_qubits) {
  if (n_min < 0 || n_max < n_min) throw InvalidArgument("budget report needs 0 <= n_min <= n_max");
  std::string csv = "representation,n,q,qubit_budget,register_qubits,encode_ms,complexity\n";
  const Representation reps[] = {Representation::frqi, Representation::neqr, Representation::qubo};
  for (auto r : reps) {
    for (int n = n_min; n <= n_max; ++n) {
      const int reg = simulated_register_qubits(r, n, q);
      std::string ms;
      if (reg <= max_qubits) {
        const GrayImage img = synthetic_image(n, q);
        double best = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
          const auto start = std::chrono::steady_clock::now();
          switch (r) {
            case Representation::frqi: (void)frqi_encode(img); break;
            case Representation::neqr: (void)neqr_encode(img); break;
            case Representation::qubo: (void)qubo_encode(img); break;
          }
          const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
          best = rep == 0 ? dt.count() : std::min(best, dt.count());
        }
        ms = format_number(best);
      }
      csv += std::string(to_string(r)) + "," + std::to_string(n) + "," + std::to_string(q) + "," +
             std::to_string(qubit_budget(r, n, q)) + "," + std::to_string(reg) + "," + ms + "," + complexity_class(r) +
             "\n";
    }
  }
  return csv;
}

}  // namespace qil
