// qil: quantum image measurement-noise benchmark.
//
//   qil run        --image img.pgm --repr frqi --shots 10000 --seed 7 --out out/
//   qil compare    --image img.pgm --shots 10000 --seed 7 --tomo-qubits 2 --out out/
//   qil budget     --n-min 0 --n-max 6 --q 8
//   qil tomography --image img.pgm --repr frqi --qubits 2 --shots 1000 --out out/

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qil/pipeline.hpp"
#include "qil/report_io.hpp"

namespace {

struct CommonOptions {
  std::string image;
  std::string repr = "frqi";
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double noise_mag = 0.0;
  std::string noise_mode = "amplitude";
  std::string unitary;
  std::string out;
  int tomo_qubits = 0;
  std::uint64_t tomo_shots = 1000;
  int plane = -1;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_repr) {
  cmd->add_option("--image", o.image, "Input image (PGM, P2 or P5)")->required()->check(CLI::ExistingFile);
  if (with_repr) {
    cmd->add_option("--repr", o.repr, "Internal representation")
        ->check(CLI::IsMember({"frqi", "neqr", "qubo"}));
  }
  cmd->add_option("--shots", o.shots, "Full-register shots for readout (0 = exact)");
  cmd->add_option("--seed", o.seed, "Seed for every random stage");
  cmd->add_option("--noise-mag", o.noise_mag, "State noise magnitude (0 = off)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--noise-mode", o.noise_mode, "Where state noise enters")
      ->check(CLI::IsMember({"amplitude", "classical"}));
  cmd->add_option("--unitary", o.unitary, "Algorithm as a complex matrix CSV (identity when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--tomo-qubits", o.tomo_qubits, "Tomography register size (0 = off)")->check(CLI::Range(0, 3));
  cmd->add_option("--tomo-shots", o.tomo_shots, "Shots per tomography observable (0 = exact)");
  cmd->add_option("--plane", o.plane, "QuBo bit plane (default: MSB)");
}

qil::ExperimentConfig make_config(const CommonOptions& o) {
  qil::ExperimentConfig cfg;
  cfg.representation = qil::parse_representation(o.repr);
  cfg.image_path = o.image;
  cfg.shots = o.shots;
  cfg.seed = o.seed;
  if (!o.unitary.empty()) cfg.unitary_path = o.unitary;
  cfg.state_noise.magnitude = o.noise_mag;
  cfg.state_noise.mode = o.noise_mode == "classical" ? qil::StateNoiseMode::classical_pre_encode
                                                     : qil::StateNoiseMode::amplitude_perturbation;
  cfg.state_noise.seed = qil::derive_seed(o.seed, 0x5eed);
  cfg.tomography.enabled = o.tomo_qubits > 0;
  if (cfg.tomography.enabled) cfg.tomography.qubits = o.tomo_qubits;
  cfg.tomography.shots = o.tomo_shots;
  if (o.plane >= 0) cfg.qubo_plane = o.plane;
  cfg.output_dir = o.out;
  cfg.max_qubits = qil::max_qubits_from_env();
  return cfg;
}

void print_summary(const qil::RunReport& r) {
  std::cout << qil::to_string(r.config.representation) << ": qubits=" << r.qubit_budget
            << " mae=" << qil::format_number(r.image_error.mae) << " mse=" << qil::format_number(r.image_error.mse)
            << " psnr=" << r.image_error.psnr.to_string() << " coverage="
            << (r.coverage.positions - r.coverage.missing.size()) << "/" << r.coverage.positions;
  if (r.tomography) {
    std::cout << " tomo_max_pct_real=" << qil::format_number(r.tomography->error.max_percentage_error_real);
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum image representation measurement-noise benchmark"};
  app.require_subcommand(1);

  CommonOptions run_opts, cmp_opts;
  auto* run = app.add_subcommand("run", "Encode, measure and decode one image");
  add_common(run, run_opts, true);
  auto* compare = app.add_subcommand("compare", "Run FRQI, NEQR and QuBo on the same image and shot budget");
  add_common(compare, cmp_opts, false);

  int n_min = 0, n_max = 6, q = 8;
  std::string budget_out;
  auto* budget = app.add_subcommand("budget", "Qubit budget and encode timing per representation");
  budget->add_option("--n-min", n_min, "Smallest side exponent")->check(CLI::Range(0, 12));
  budget->add_option("--n-max", n_max, "Largest side exponent")->check(CLI::Range(0, 12));
  budget->add_option("--q", q, "Bit depth")->check(CLI::Range(1, 16));
  budget->add_option("--out", budget_out, "Output directory (stdout when omitted)");

  std::string tomo_image, tomo_repr = "frqi", tomo_out;
  int tomo_qubits = 2;
  std::uint64_t tomo_shots = 1000, tomo_seed = 0;
  auto* tomo = app.add_subcommand("tomography", "Linear-inversion tomography of a representation's register");
  tomo->add_option("--image", tomo_image, "Input image (PGM)")->required()->check(CLI::ExistingFile);
  tomo->add_option("--repr", tomo_repr, "Internal representation")->check(CLI::IsMember({"frqi", "neqr", "qubo"}));
  tomo->add_option("--qubits", tomo_qubits, "Register size")->check(CLI::Range(1, 3));
  tomo->add_option("--shots", tomo_shots, "Shots per observable (0 = exact)");
  tomo->add_option("--seed", tomo_seed, "Sampling seed");
  tomo->add_option("--out", tomo_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      print_summary(qil::run_pipeline(make_config(run_opts)));
    } else if (compare->parsed()) {
      const auto result = qil::run_repr_compare(make_config(cmp_opts));
      for (const auto& r : result.runs) print_summary(r);
    } else if (budget->parsed()) {
      const std::string csv = qil::run_budget_report(n_min, n_max, q, qil::max_qubits_from_env());
      if (budget_out.empty()) {
        std::cout << csv;
      } else {
        std::filesystem::create_directories(budget_out);
        qil::write_text_file(std::filesystem::path(budget_out) / "budget.csv", csv);
      }
    } else if (tomo->parsed()) {
      const auto img = qil::read_pgm(tomo_image);
      qil::TomographyConfig tc{true, tomo_qubits, tomo_shots};
      const auto t = qil::run_tomography(qil::parse_representation(tomo_repr), img, tc, tomo_seed);
      auto record = qil::tomography_record(t.estimate, t.ideal);
      record["representation"] = tomo_repr;
      record["shots_per_observable"] = tomo_shots;
      record["seed"] = tomo_seed;
      record["projected"] = qil::tomography_record(t.projected, t.ideal);
      if (tomo_out.empty()) {
        std::cout << record.dump(2) << "\n";
      } else {
        const std::filesystem::path dir(tomo_out);
        std::filesystem::create_directories(dir);
        qil::write_text_file(dir / "tomo_real.csv", qil::csv_grid(Eigen::MatrixXd(t.estimate.matrix().real())));
        qil::write_text_file(dir / "tomo_imag.csv", qil::csv_grid(Eigen::MatrixXd(t.estimate.matrix().imag())));
        qil::write_text_file(dir / "tomography.json", record.dump(2) + "\n");
      }
    }
  } catch (const qil::Error& e) {
    std::cerr << "qil: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "qil: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
