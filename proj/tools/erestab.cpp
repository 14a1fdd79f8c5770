// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Command-line front end.  Subcommands: classify, monodromy, index, trace,
// nh-surfaces, sweep, equal-mass, self-test.  Record outputs are JSON with
// the fixed key layout
//   {"params": {...}, "monodromy": [16 row-major], "spectrum": [[re,im]x4],
//    "indices": {"omega_plus1": [i,nu], "omega_minus1": [i,nu]},
//    "verdict": string, "normal_form": string}
// (subcommands emit the subset of keys they compute); tabular outputs are
// CSV with a versioned "#schema=" header line.  Exit codes: 0 success,
// 1 domain error, 2 numerical non-convergence, 64 usage error.
//
// A flat JSON config file (--config) supplies defaults for the invoked
// subcommand, keyed by long option names without dashes; explicit flags
// override it, unknown keys are rejected, and a "command" entry, when
// present, must match the subcommand.

#include "CLI11.hpp"
#include "json.hpp"

#include "erestab/common.hpp"
#include "erestab/curves.hpp"
#include "erestab/essential.hpp"
#include "erestab/galerkin.hpp"
#include "erestab/model.hpp"
#include "erestab/regions.hpp"
#include "erestab/scan.hpp"
#include "erestab/selftest.hpp"
#include "erestab/sympl.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace erestab;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot open output file: " + path);
  file << text;
}

ordered_json params_json(const EssentialParams& p) {
  return ordered_json{{"alpha", p.alpha},
                      {"beta", p.beta},
                      {"e", p.e},
                      {"alpha_tilde", p.alpha_tilde},
                      {"beta_tilde", p.beta_tilde}};
}

ordered_json matrix_json(const Eigen::Matrix4d& m) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.push_back(m(i, j));
  return out;
}

ordered_json spectrum_json(const std::array<complexd, 4>& s) {
  ordered_json out = ordered_json::array();
  for (const complexd& z : s) out.push_back({z.real(), z.imag()});
  return out;
}

ordered_json indices_json(const IndexPair& plus, const IndexPair& minus) {
  return ordered_json{{"omega_plus1", {plus.index, plus.nullity}},
                      {"omega_minus1", {minus.index, minus.nullity}}};
}

// Elliptic rotation angles of the normal form, NaN-padded to two entries.
std::array<double, 2> elliptic_angles(const SpectrumClass& cls) {
  std::array<double, 2> out{std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN()};
  std::size_t k = 0;
  for (const NormalFormBlock& b : cls.blocks)
    if (b.kind == BlockKind::R && k < out.size()) out[k++] = b.theta;
  return out;
}

// Per-subcommand config binding: long option name (without dashes) to the
// parsed CLI11 option and a setter invoked only when the flag was absent.
class ConfigBinding {
 public:
  void bind(const std::string& key, CLI::Option* opt,
            std::function<void(const nlohmann::json&)> set) {
    entries_[key] = {opt, std::move(set)};
  }

  void apply(const std::string& path, const std::string& command) const {
    if (path.empty()) return;
    std::ifstream file(path);
    if (!file) throw UsageError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
      file >> doc;
    } catch (const nlohmann::json::exception& ex) {
      throw UsageError(std::string("config is not valid JSON: ") + ex.what());
    }
    if (!doc.is_object())
      throw UsageError("config must be a flat JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (key == "command") {
        if (!value.is_string() || value.get<std::string>() != command)
          throw UsageError("config key 'command' does not match subcommand '" +
                           command + "'");
        continue;
      }
      const auto it = entries_.find(key);
      if (it == entries_.end())
        throw UsageError("unknown config key: " + key);
      if (it->second.first->count() > 0) continue;  // flags override config
      try {
        it->second.second(value);
      } catch (const nlohmann::json::exception&) {
        throw UsageError("config key '" + key + "' has the wrong type");
      }
    }
  }

 private:
  std::map<std::string,
           std::pair<CLI::Option*, std::function<void(const nlohmann::json&)>>>
      entries_;
};

void require_format(const std::string& format, const std::string& native,
                    const std::string& command) {
  if (format != "json" && format != "csv")
    throw UsageError("format must be 'json' or 'csv'");
  if (format != native)
    throw UsageError(command + " only emits " + native);
}

struct CsvWriter {
  std::ostringstream os;

  explicit CsvWriter(const std::string& schema) {
    os << "#schema=" << schema << "\n";
  }
  void field(double x) { os << format_double(x) << ','; }
  void field(int x) { os << x << ','; }
  void last(double x) { os << format_double(x) << '\n'; }
  void last(const std::string& s) { os << s << '\n'; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Linear stability of the essential part of elliptic relative "
      "equilibria: monodromy, boundary-condition indices, degenerate "
      "surfaces, parameter atlases."};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  int exit_code = 0;

  // ---- classify ----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "classify", "Full stability verdict and normal form at one point");
    auto alpha = std::make_shared<double>(0.0);
    auto beta = std::make_shared<double>(0.0);
    auto e = std::make_shared<double>(0.0);
    auto tol = std::make_shared<double>(1e-7);
    auto output = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    auto binding = std::make_shared<ConfigBinding>();
    binding->bind("alpha", sub->add_option("--alpha", *alpha, "mass parameter alpha"),
                  [alpha](const nlohmann::json& v) { *alpha = v.get<double>(); });
    binding->bind("beta", sub->add_option("--beta", *beta, "mass parameter beta"),
                  [beta](const nlohmann::json& v) { *beta = v.get<double>(); });
    binding->bind("e", sub->add_option("--e", *e, "eccentricity in [0, 1)"),
                  [e](const nlohmann::json& v) { *e = v.get<double>(); });
    binding->bind("tol", sub->add_option("--tol", *tol, "classification tolerance (default 1e-7)"),
                  [tol](const nlohmann::json& v) { *tol = v.get<double>(); });
    binding->bind("output", sub->add_option("--output", *output, "write to file instead of stdout"),
                  [output](const nlohmann::json& v) { *output = v.get<std::string>(); });
    binding->bind("format", sub->add_option("--format", *format, "output format (json)"),
                  [format](const nlohmann::json& v) { *format = v.get<std::string>(); });
    sub->add_option("--config", *config, "flat JSON config file");
    sub->callback([=] {
      binding->apply(*config, "classify");
      require_format(*format, "json", "classify");
      const EssentialParams p = make_params(*alpha, *beta, *e);
      const StabilityVerdict v = classify_general(p, *tol);
      ordered_json out;
      out["params"] = params_json(p);
      out["monodromy"] = matrix_json(v.monodromy.M);
      out["spectrum"] = spectrum_json(v.monodromy.spectrum);
      out["indices"] = indices_json(v.index_plus1, v.index_minus1);
      out["verdict"] = to_string(v.verdict);
      out["normal_form"] = v.normal_form.label();
      write_out(*output, out.dump(2) + "\n");
    });
  }

  // ---- monodromy ---------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "monodromy", "Monodromy matrix and its spectrum at one point");
    auto alpha = std::make_shared<double>(0.0);
    auto beta = std::make_shared<double>(0.0);
    auto e = std::make_shared<double>(0.0);
    auto tol = std::make_shared<double>(1e-11);
    auto output = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    auto binding = std::make_shared<ConfigBinding>();
    binding->bind("alpha", sub->add_option("--alpha", *alpha, "mass parameter alpha"),
                  [alpha](const nlohmann::json& v) { *alpha = v.get<double>(); });
    binding->bind("beta", sub->add_option("--beta", *beta, "mass parameter beta"),
                  [beta](const nlohmann::json& v) { *beta = v.get<double>(); });
    binding->bind("e", sub->add_option("--e", *e, "eccentricity in [0, 1)"),
                  [e](const nlohmann::json& v) { *e = v.get<double>(); });
    binding->bind("tol", sub->add_option("--tol", *tol, "integrator tolerance (default 1e-11)"),
                  [tol](const nlohmann::json& v) { *tol = v.get<double>(); });
    binding->bind("output", sub->add_option("--output", *output, "write to file instead of stdout"),
                  [output](const nlohmann::json& v) { *output = v.get<std::string>(); });
    binding->bind("format", sub->add_option("--format", *format, "output format (json)"),
                  [format](const nlohmann::json& v) { *format = v.get<std::string>(); });
    sub->add_option("--config", *config, "flat JSON config file");
    sub->callback([=] {
      binding->apply(*config, "monodromy");
      require_format(*format, "json", "monodromy");
      const EssentialParams p = make_params(*alpha, *beta, *e);
      const MonodromyResult mr = monodromy(p, *tol);
      ordered_json out;
      out["params"] = params_json(p);
      out["monodromy"] = matrix_json(mr.M);
      out["spectrum"] = spectrum_json(mr.spectrum);
      write_out(*output, out.dump(2) + "\n");
    });
  }

  // ---- index -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "index", "Boundary-condition Morse index and nullity at one point");
    auto alpha = std::make_shared<double>(0.0);
    auto beta = std::make_shared<double>(0.0);
    auto e = std::make_shared<double>(0.0);
    auto modes = std::make_shared<int>(64);
    auto tol = std::make_shared<double>(1e-8);
    auto output = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    auto binding = std::make_shared<ConfigBinding>();
    binding->bind("alpha", sub->add_option("--alpha", *alpha, "mass parameter alpha"),
                  [alpha](const nlohmann::json& v) { *alpha = v.get<double>(); });
    binding->bind("beta", sub->add_option("--beta", *beta, "mass parameter beta"),
                  [beta](const nlohmann::json& v) { *beta = v.get<double>(); });
    binding->bind("e", sub->add_option("--e", *e, "eccentricity in [0, 1)"),
                  [e](const nlohmann::json& v) { *e = v.get<double>(); });
    binding->bind("modes", sub->add_option("--modes", *modes, "Fourier modes per component (default 64)"),
                  [modes](const nlohmann::json& v) { *modes = v.get<int>(); });
    binding->bind("tol", sub->add_option("--tol", *tol, "null-eigenvalue tolerance (default 1e-8)"),
                  [tol](const nlohmann::json& v) { *tol = v.get<double>(); });
    binding->bind("output", sub->add_option("--output", *output, "write to file instead of stdout"),
                  [output](const nlohmann::json& v) { *output = v.get<std::string>(); });
    binding->bind("format", sub->add_option("--format", *format, "output format (json)"),
                  [format](const nlohmann::json& v) { *format = v.get<std::string>(); });
    sub->add_option("--config", *config, "flat JSON config file");
    sub->callback([=] {
      binding->apply(*config, "index");
      require_format(*format, "json", "index");
      const EssentialParams p = make_params(*alpha, *beta, *e);
      const IndexPair plus = index_and_nullity(assemble(p, +1, *modes), *tol);
      const IndexPair minus = index_and_nullity(assemble(p, -1, *modes), *tol);
      ordered_json out;
      out["params"] = params_json(p);
      out["indices"] = indices_json(plus, minus);
      write_out(*output, out.dump(2) + "\n");
    });
  }

  // ---- trace -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "trace", "Trace one degenerate surface ordinal across eccentricities");
    auto alpha = std::make_shared<double>(0.0);
    auto omega = std::make_shared<int>(1);
    auto ordinal = std::make_shared<int>(0);
    auto e_max = std::make_shared<double>(0.0);
    auto e_step = std::make_shared<double>(0.05);
    auto resolution = std::make_shared<double>(1e-9);
    auto output = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    auto binding = std::make_shared<ConfigBinding>();
    binding->bind("alpha", sub->add_option("--alpha", *alpha, "column abscissa alpha"),
                  [alpha](const nlohmann::json& v) { *alpha = v.get<double>(); });
    binding->bind("omega", sub->add_option("--omega", *omega, "boundary condition, +1 or -1"),
                  [omega](const nlohmann::json& v) { *omega = v.get<int>(); });
    binding->bind("n", sub->add_option("--n", *ordinal, "degeneracy ordinal (0-based, counted upward in beta)"),
                  [ordinal](const nlohmann::json& v) { *ordinal = v.get<int>(); });
    binding->bind("e-max", sub->add_option("--e-max", *e_max, "largest eccentricity (default 0)"),
                  [e_max](const nlohmann::json& v) { *e_max = v.get<double>(); });
    binding->bind("e-step", sub->add_option("--e-step", *e_step, "eccentricity step (default 0.05)"),
                  [e_step](const nlohmann::json& v) { *e_step = v.get<double>(); });
    binding->bind("resolution", sub->add_option("--resolution", *resolution, "bisection width in beta (default 1e-9)"),
                  [resolution](const nlohmann::json& v) { *resolution = v.get<double>(); });
    binding->bind("output", sub->add_option("--output", *output, "write to file instead of stdout"),
                  [output](const nlohmann::json& v) { *output = v.get<std::string>(); });
    binding->bind("format", sub->add_option("--format", *format, "output format (csv)"),
                  [format](const nlohmann::json& v) { *format = v.get<std::string>(); });
    sub->add_option("--config", *config, "flat JSON config file");
    sub->callback([=] {
      binding->apply(*config, "trace");
      require_format(*format, "csv", "trace");
      if (*omega != 1 && *omega != -1)
        throw UsageError("--omega must be +1 or -1");
      if (*ordinal < 0) throw UsageError("--n must be non-negative");
      if (!(*e_step > 0.0)) throw UsageError("--e-step must be positive");
      if (!(*e_max >= 0.0 && *e_max <= 0.9))
        throw UsageError("--e-max must lie in [0, 0.9]");
      CsvWriter csv("alpha,e,omega,n,beta,multiplicity,bracket_width");
      for (double ecc = 0.0; ecc <= *e_max + 1e-12; ecc += *e_step) {
        const DegenerateCurveSample s =
            degenerate_beta(*alpha, *omega, std::min(ecc, *e_max), *ordinal,
                            *resolution);
        csv.field(s.alpha);
        csv.field(s.e);
        csv.field(s.omega);
        csv.field(s.n);
        csv.field(s.beta);
        csv.field(s.multiplicity);
        csv.last(s.bracket_width);
      }
      write_out(*output, csv.os.str());
    });
  }

  // ---- nh-surfaces -------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "nh-surfaces",
        "Splitting ordinates of the non-hyperbolic strip at fixed "
        "sheared abscissa");
    auto alpha_tilde = std::make_shared<double>(0.0);
    auto e = std::make_shared<double>(0.0);
    auto e_max = std::make_shared<double>(-1.0);
    auto e_step = std::make_shared<double>(0.1);
    auto resolution = std::make_shared<double>(1e-8);
    auto output = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    auto binding = std::make_shared<ConfigBinding>();
    binding->bind("alpha-tilde", sub->add_option("--alpha-tilde", *alpha_tilde, "sheared abscissa alpha~ > 0"),
                  [alpha_tilde](const nlohmann::json& v) { *alpha_tilde = v.get<double>(); });
    binding->bind("e", sub->add_option("--e", *e, "eccentricity (default 0)"),
                  [e](const nlohmann::json& v) { *e = v.get<double>(); });
    binding->bind("e-max", sub->add_option("--e-max", *e_max, "sweep eccentricity up to this value"),
                  [e_max](const nlohmann::json& v) { *e_max = v.get<double>(); });
    binding->bind("e-step", sub->add_option("--e-step", *e_step, "eccentricity step for the sweep (default 0.1)"),
                  [e_step](const nlohmann::json& v) { *e_step = v.get<double>(); });
    binding->bind("resolution", sub->add_option("--resolution", *resolution, "bisection width in beta~ (default 1e-8)"),
                  [resolution](const nlohmann::json& v) { *resolution = v.get<double>(); });
    binding->bind("output", sub->add_option("--output", *output, "write to file instead of stdout"),
                  [output](const nlohmann::json& v) { *output = v.get<std::string>(); });
    binding->bind("format", sub->add_option("--format", *format, "output format (csv)"),
                  [format](const nlohmann::json& v) { *format = v.get<std::string>(); });
    sub->add_option("--config", *config, "flat JSON config file");
    sub->callback([=] {
      binding->apply(*config, "nh-surfaces");
      require_format(*format, "csv", "nh-surfaces");
      if (!(*e_step > 0.0)) throw UsageError("--e-step must be positive");
      CsvWriter csv("alpha_tilde,e,beta_s,beta_m,beta_k");
      const double last = *e_max < 0.0 ? *e : *e_max;
      for (double ecc = *e; ecc <= last + 1e-12; ecc += *e_step) {
        const NhSurfaces s =
            nh_surfaces(*alpha_tilde, std::min(ecc, last), *resolution);
        csv.field(s.alpha_tilde);
        csv.field(s.e);
        csv.field(s.beta_s);
        csv.field(s.beta_m);
        csv.last(s.beta_k);
      }
      write_out(*output, csv.os.str());
    });
  }

  // ---- sweep -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "sweep", "Classify a rectangular parameter grid into a CSV atlas");
    auto spec = std::make_shared<SweepSpec>();
    auto evec = std::make_shared<std::vector<double>>();
    auto output = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    auto binding = std::make_shared<ConfigBinding>();
    binding->bind("a-min", sub->add_option("--a-min", spec->a_min, "smallest abscissa"),
                  [spec](const nlohmann::json& v) { spec->a_min = v.get<double>(); });
    binding->bind("a-max", sub->add_option("--a-max", spec->a_max, "largest abscissa"),
                  [spec](const nlohmann::json& v) { spec->a_max = v.get<double>(); });
    binding->bind("a-step", sub->add_option("--a-step", spec->a_step, "abscissa step"),
                  [spec](const nlohmann::json& v) { spec->a_step = v.get<double>(); });
    binding->bind("b-min", sub->add_option("--b-min", spec->b_min, "smallest ordinate"),
                  [spec](const nlohmann::json& v) { spec->b_min = v.get<double>(); });
    binding->bind("b-max", sub->add_option("--b-max", spec->b_max, "largest ordinate"),
                  [spec](const nlohmann::json& v) { spec->b_max = v.get<double>(); });
    binding->bind("b-step", sub->add_option("--b-step", spec->b_step, "ordinate step"),
                  [spec](const nlohmann::json& v) { spec->b_step = v.get<double>(); });
    binding->bind("e", sub->add_option("--e", *evec, "eccentricity list, comma separated")->delimiter(','),
                  [evec](const nlohmann::json& v) { *evec = v.get<std::vector<double>>(); });
    binding->bind("tilde", sub->add_flag("--tilde", spec->tilde, "grid lives in sheared coordinates"),
                  [spec](const nlohmann::json& v) { spec->tilde = v.get<bool>(); });
    binding->bind("workers", sub->add_option("--workers", spec->workers, "worker threads (0 = hardware)"),
                  [spec](const nlohmann::json& v) { spec->workers = v.get<int>(); });
    binding->bind("tol", sub->add_option("--tol", spec->tol, "classification tolerance (default 1e-7)"),
                  [spec](const nlohmann::json& v) { spec->tol = v.get<double>(); });
    binding->bind("output", sub->add_option("--output", *output, "write to file instead of stdout"),
                  [output](const nlohmann::json& v) { *output = v.get<std::string>(); });
    binding->bind("format", sub->add_option("--format", *format, "output format (csv)"),
                  [format](const nlohmann::json& v) { *format = v.get<std::string>(); });
    sub->add_option("--config", *config, "flat JSON config file");
    sub->callback([=] {
      binding->apply(*config, "sweep");
      require_format(*format, "csv", "sweep");
      spec->eccentricities = evec->empty() ? std::vector<double>{0.0} : *evec;
      const std::vector<AtlasCell> cells = sweep(*spec);
      const double nan = std::numeric_limits<double>::quiet_NaN();
      CsvWriter csv(
          "alpha,beta,e,verdict,i1,nu1,im1,num1,theta1,theta2,symp_residual");
      for (const AtlasCell& cell : cells) {
        csv.field(cell.params.alpha);
        csv.field(cell.params.beta);
        csv.field(cell.params.e);
        if (!cell.error.empty()) {
          csv.os << "error,";
          for (int k = 0; k < 6; ++k) csv.field(nan);
          csv.last(nan);
          continue;
        }
        csv.os << to_string(cell.verdict.verdict) << ',';
        csv.field(cell.verdict.index_plus1.index);
        csv.field(cell.verdict.index_plus1.nullity);
        csv.field(cell.verdict.index_minus1.index);
        csv.field(cell.verdict.index_minus1.nullity);
        const std::array<double, 2> th =
            elliptic_angles(cell.verdict.normal_form);
        csv.field(th[0]);
        csv.field(th[1]);
        csv.last(cell.verdict.monodromy.symplectic_residual);
      }
      write_out(*output, csv.os.str());
    });
  }

  // ---- equal-mass --------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "equal-mass",
        "Two-equal-mass family: root table, classification at an "
        "ordinate, or the first instability transition");
    auto roots = std::make_shared<bool>(false);
    auto estar = std::make_shared<bool>(false);
    auto y = std::make_shared<double>(std::numeric_limits<double>::quiet_NaN());
    auto e = std::make_shared<double>(0.0);
    auto step = std::make_shared<double>(1e-3);
    auto resolution = std::make_shared<double>(1e-2);
    auto tol = std::make_shared<double>(1e-7);
    auto output = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    auto binding = std::make_shared<ConfigBinding>();
    binding->bind("roots", sub->add_flag("--roots", *roots, "emit the indicator root table"),
                  [roots](const nlohmann::json& v) { *roots = v.get<bool>(); });
    binding->bind("estar", sub->add_flag("--estar", *estar, "estimate the first instability-transition eccentricity"),
                  [estar](const nlohmann::json& v) { *estar = v.get<bool>(); });
    binding->bind("y", sub->add_option("--y", *y, "ordinate of the two equal masses"),
                  [y](const nlohmann::json& v) { *y = v.get<double>(); });
    binding->bind("e", sub->add_option("--e", *e, "eccentricity for --y classification (default 0)"),
                  [e](const nlohmann::json& v) { *e = v.get<double>(); });
    binding->bind("step", sub->add_option("--step", *step, "root-isolation scan step (default 1e-3)"),
                  [step](const nlohmann::json& v) { *step = v.get<double>(); });
    binding->bind("resolution", sub->add_option("--resolution", *resolution, "bisection width for --estar (default 1e-2)"),
                  [resolution](const nlohmann::json& v) { *resolution = v.get<double>(); });
    binding->bind("tol", sub->add_option("--tol", *tol, "classification tolerance (default 1e-7)"),
                  [tol](const nlohmann::json& v) { *tol = v.get<double>(); });
    binding->bind("output", sub->add_option("--output", *output, "write to file instead of stdout"),
                  [output](const nlohmann::json& v) { *output = v.get<std::string>(); });
    binding->bind("format", sub->add_option("--format", *format, "output format (json)"),
                  [format](const nlohmann::json& v) { *format = v.get<std::string>(); });
    sub->add_option("--config", *config, "flat JSON config file");
    sub->callback([=] {
      binding->apply(*config, "equal-mass");
      require_format(*format, "json", "equal-mass");
      const int modes = (*roots ? 1 : 0) + (*estar ? 1 : 0) +
                        (std::isnan(*y) ? 0 : 1);
      if (modes != 1)
        throw UsageError(
            "equal-mass needs exactly one of --roots, --estar, --y");
      ordered_json out;
      if (*roots) {
        const EqualMassRoots rr = equal_mass_roots(*step);
        out["y11"] = rr.y11;
        out["y12"] = rr.y12;
        out["y0"] = rr.y0;
        out["m0"] = rr.m0;
        out["y21"] = rr.y21;
        out["y22"] = rr.y22;
        out["y23"] = rr.y23;
        out["y24"] = rr.y24;
        out["ybar21"] = rr.ybar21;
        out["ybar22"] = rr.ybar22;
        out["sign_pattern"] = rr.sign_pattern;
      } else if (*estar) {
        out["e_star"] = equal_mass_estar(*resolution);
      } else {
        const EqualMassPoint pt = equal_mass_point(*y);
        const EssentialParams p = make_params(pt.alpha, pt.beta, *e);
        const StabilityVerdict v = classify_general(p, *tol);
        out["params"] = params_json(p);
        out["monodromy"] = matrix_json(v.monodromy.M);
        out["spectrum"] = spectrum_json(v.monodromy.spectrum);
        out["indices"] = indices_json(v.index_plus1, v.index_minus1);
        out["verdict"] = to_string(v.verdict);
        out["normal_form"] = v.normal_form.label();
      }
      write_out(*output, out.dump(2) + "\n");
    });
  }

  // ---- self-test ---------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "self-test", "Run the built-in acceptance suite (one line per "
                     "criterion)");
    auto workers = std::make_shared<int>(0);
    auto output = std::make_shared<std::string>();
    auto config = std::make_shared<std::string>();
    auto binding = std::make_shared<ConfigBinding>();
    binding->bind("workers", sub->add_option("--workers", *workers, "worker threads (0 = default pool)"),
                  [workers](const nlohmann::json& v) { *workers = v.get<int>(); });
    binding->bind("output", sub->add_option("--output", *output, "write the report to a file as well"),
                  [output](const nlohmann::json& v) { *output = v.get<std::string>(); });
    sub->add_option("--config", *config, "flat JSON config file");
    sub->callback([=, &exit_code] {
      binding->apply(*config, "self-test");
      const SelfTestReport report = run_selftest(*workers);
      const std::string text = format_report(report);
      std::fputs(text.c_str(), stdout);
      if (!output->empty()) write_out(*output, text);
      exit_code = report.all_pass ? 0 : 1;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 64;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
