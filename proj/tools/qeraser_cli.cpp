// qeraser command-line front end. Links only the C interface.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qeraser/qeraser.h"

namespace {

struct CircuitDeleter {
  void operator()(qe_circuit* c) const { qe_circuit_free(c); }
};
struct DiagnosticsDeleter {
  void operator()(qe_diagnostics* d) const { qe_diagnostics_free(d); }
};
struct ReportDeleter {
  void operator()(qe_report* r) const { qe_report_free(r); }
};
struct ImageDeleter {
  void operator()(qe_image* i) const { qe_image_free(i); }
};
struct StringDeleter {
  void operator()(char* s) const { qe_string_free(s); }
};

using CircuitPtr = std::unique_ptr<qe_circuit, CircuitDeleter>;
using ReportPtr = std::unique_ptr<qe_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

constexpr int kExitArgument = QE_ERR_ARGUMENT;

void error(const std::string& message) { std::cerr << "qeraser: " << message << "\n"; }

// Shortest round-trip-safe decimal (17 significant digits), locale-free.
std::string num(double v) {
  std::array<char, 40> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), r.ptr);
}

// Parses `file`; prints diagnostics and returns the exit code on failure.
int load(const std::string& file, CircuitPtr& out) {
  qe_circuit* c = nullptr;
  qe_diagnostics* raw = nullptr;
  const qe_status st = qe_circuit_load(file.c_str(), &c, &raw);
  std::unique_ptr<qe_diagnostics, DiagnosticsDeleter> diags(raw);
  if (st == QE_ERR_PARSE) {
    for (size_t k = 0; k < qe_diagnostics_count(diags.get()); ++k) {
      char* line = nullptr;
      if (qe_diagnostic_format(diags.get(), k, file.c_str(), &line) == QE_OK) {
        std::cerr << StringPtr(line).get() << "\n";
      }
    }
    return st;
  }
  if (st != QE_OK) {
    error(qe_last_error());
    return st;
  }
  out.reset(c);
  return 0;
}

// Writes to `path`, or stdout when empty.
int emit(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return std::cout ? 0 : QE_ERR_IO;
  }
  std::ofstream out(path, std::ios::binary);
  if (out) out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    error("cannot write " + path);
    return QE_ERR_IO;
  }
  return 0;
}

int print_report(const qe_report* r) {
  char* text = nullptr;
  if (qe_report_text(r, &text) != QE_OK) {
    error(qe_last_error());
    return QE_ERR_INTERNAL;
  }
  std::cout << StringPtr(text).get();
  return qe_report_passed(r) ? 0 : QE_ERR_VERIFY;
}

int apply_leakage(qe_circuit* c, double leakage) {
  if (qe_circuit_set_pbs_leakage(c, leakage) != QE_OK) {
    error(qe_last_error());
    return kExitArgument;
  }
  return 0;
}

struct SweepArgs {
  std::string file;
  double phi_from = 0.0;
  double phi_to = 2.0 * std::numbers::pi;
  std::int64_t steps = 256;
  std::string out;
  double leakage = 0.0;
};

int cmd_sweep(const SweepArgs& a) {
  if (a.steps < 2) {
    error("--steps must be at least 2");
    return kExitArgument;
  }
  CircuitPtr c;
  if (int rc = load(a.file, c)) return rc;
  if (!qe_circuit_has_sweep(c.get())) {
    error(a.file + ": no PHI sweep symbol in circuit");
    return kExitArgument;
  }
  if (int rc = apply_leakage(c.get(), a.leakage)) return rc;

  const auto n = static_cast<size_t>(a.steps);
  std::vector<double> phi(n);
  for (size_t k = 0; k < n; ++k) {
    phi[k] = a.phi_from + (a.phi_to - a.phi_from) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  phi.back() = a.phi_to;
  std::vector<double> ia(n);
  std::vector<double> ib(n);
  if (qe_sweep(c.get(), phi.data(), n, ia.data(), ib.data()) != QE_OK) {
    error(qe_last_error());
    return kExitArgument;
  }
  const bool polarized =
      qe_circuit_port_polarized(c.get(), QE_PORT_A) || qe_circuit_port_polarized(c.get(), QE_PORT_B);
  std::string csv = polarized ? "phi_rad,i_1,i_2\n" : "phi_rad,i_A,i_B\n";
  for (size_t k = 0; k < n; ++k) csv += num(phi[k]) + "," + num(ia[k]) + "," + num(ib[k]) + "\n";
  return emit(a.out, csv);
}

int cmd_eval(const std::string& file, double phi, double leakage) {
  CircuitPtr c;
  if (int rc = load(file, c)) return rc;
  if (int rc = apply_leakage(c.get(), leakage)) return rc;
  double ia = 0.0;
  double ib = 0.0;
  if (qe_evaluate(c.get(), phi, &ia, &ib) != QE_OK) {
    error(qe_last_error());
    return kExitArgument;
  }
  std::cout << "i_A=" << num(ia) << " i_B=" << num(ib) << "\n";
  return 0;
}

struct McArgs {
  std::string file;
  std::int64_t photons = 1000;
  std::int64_t bins = 64;
  std::uint64_t seed = 42;
  std::string out;
};

int cmd_mc(const McArgs& a) {
  if (a.photons < 1 || a.bins < 2) {
    error("--photons must be >= 1 and --bins >= 2");
    return kExitArgument;
  }
  CircuitPtr c;
  if (int rc = load(a.file, c)) return rc;
  std::vector<qe_mc_bin> bins(static_cast<size_t>(a.bins));
  if (qe_mc_sample(c.get(), bins.size(), static_cast<uint64_t>(a.photons), a.seed, bins.data()) != QE_OK) {
    error(qe_last_error());
    return kExitArgument;
  }
  std::cerr << "rng: " << qe_mc_rng_name() << " seed=" << a.seed << "\n";
  std::string csv = "phi_rad,clicks_1,clicks_2,expected_1,expected_2\n";
  for (const auto& b : bins) {
    csv += num(b.phi) + "," + std::to_string(b.clicks_1) + "," + std::to_string(b.clicks_2) + "," +
           num(b.expected_1) + "," + num(b.expected_2) + "\n";
  }
  return emit(a.out, csv);
}

struct ImageArgs {
  std::string file;
  qe_image_params params{};
  std::string port = "both";
  std::string out;
};

int cmd_image(const ImageArgs& a) {
  CircuitPtr c;
  if (int rc = load(a.file, c)) return rc;
  const qe_port port = a.port == "A" ? QE_PORT_A : a.port == "B" ? QE_PORT_B : QE_PORT_BOTH;
  qe_image* raw = nullptr;
  if (qe_render(c.get(), &a.params, port, &raw) != QE_OK) {
    error(qe_last_error());
    return kExitArgument;
  }
  std::unique_ptr<qe_image, ImageDeleter> img(raw);
  unsigned char* data = nullptr;
  size_t len = 0;
  if (qe_image_pgm(img.get(), &data, &len) != QE_OK) {
    error(qe_last_error());
    return QE_ERR_INTERNAL;
  }
  std::string bytes(reinterpret_cast<const char*>(data), len);
  qe_buffer_free(data);
  return emit(a.out, bytes);
}

int cmd_format(const std::string& file, const std::string& out) {
  CircuitPtr c;
  if (int rc = load(file, c)) return rc;
  char* text = nullptr;
  if (qe_circuit_format(c.get(), &text) != QE_OK) {
    error(qe_last_error());
    return QE_ERR_INTERNAL;
  }
  return emit(out, StringPtr(text).get());
}

int cmd_scenario(const std::string& name, bool list, bool netlist) {
  if (list) {
    for (size_t k = 0; k < qe_scenario_count(); ++k) {
      std::cout << qe_scenario_name(k) << "  " << qe_scenario_description(k) << "\n";
    }
    return 0;
  }
  if (name.empty()) {
    error("scenario name required (see --list)");
    return kExitArgument;
  }
  if (netlist) {
    char* text = nullptr;
    if (qe_scenario_netlist(name.c_str(), &text) != QE_OK) {
      error(qe_last_error());
      return kExitArgument;
    }
    std::cout << StringPtr(text).get();
    return 0;
  }
  qe_report* raw = nullptr;
  const qe_status st = qe_scenario_run(name.c_str(), &raw);
  if (st != QE_OK) {
    error(qe_last_error());
    return st == QE_ERR_ARGUMENT ? kExitArgument : st;
  }
  return print_report(ReportPtr(raw).get());
}

int cmd_verify(bool mutate) {
  qe_report* raw = nullptr;
  if (qe_verify(mutate ? 1 : 0, &raw) != QE_OK) {
    error(qe_last_error());
    return QE_ERR_INTERNAL;
  }
  return print_report(ReportPtr(raw).get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarization quantum-eraser interferometer simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qe_version()));

  std::string file;
  std::string out;
  double leakage = 0.0;

  auto* parse = app.add_subcommand("parse", "Validate a netlist (silent on success)");
  parse->add_option("file", file, "Netlist file")->required();

  auto* format = app.add_subcommand("format", "Print the canonical form of a netlist");
  format->add_option("file", file, "Netlist file")->required();
  format->add_option("-o,--out", out, "Output file (default stdout)");

  double phi = 0.0;
  auto* eval = app.add_subcommand("eval", "Port intensities at one phase");
  eval->add_option("file", file, "Netlist file")->required();
  eval->add_option("--phi", phi, "Value bound to PHI, radians");
  eval->add_option("--pbs-leakage", leakage, "PBS cross-talk fraction")->check(CLI::Range(0.0, 0.5));

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Tabulate port intensities over PHI as CSV");
  sweep->add_option("file", sw.file, "Netlist file")->required();
  sweep->add_option("--phi-from", sw.phi_from, "First phase, radians");
  sweep->add_option("--phi-to", sw.phi_to, "Last phase, radians (default 2 pi)");
  sweep->add_option("--steps", sw.steps, "Number of samples");
  sweep->add_option("-o,--out", sw.out, "Output CSV (default stdout)");
  sweep->add_option("--pbs-leakage", sw.leakage, "PBS cross-talk fraction")->check(CLI::Range(0.0, 0.5));

  std::string scenario_name;
  bool list = false;
  bool netlist = false;
  auto* scenario = app.add_subcommand("scenario", "Run a named preset through engine and oracle");
  scenario->add_option("name", scenario_name, "Preset name");
  scenario->add_flag("--list", list, "List presets");
  scenario->add_flag("--netlist", netlist, "Print the preset's netlist instead of running it");

  McArgs mc;
  auto* mcc = app.add_subcommand("mc", "Photon-counting Monte Carlo histogram as CSV");
  mcc->add_option("file", mc.file, "Netlist file")->required();
  mcc->add_option("--photons", mc.photons, "Photons per bin");
  mcc->add_option("--bins", mc.bins, "Phase bins over one period");
  mcc->add_option("--seed", mc.seed, "RNG seed");
  mcc->add_option("-o,--out", mc.out, "Output CSV (default stdout)");

  ImageArgs im;
  qe_image_params_default(&im.params);
  auto* image = app.add_subcommand("image", "Render screen images as binary PGM");
  image->add_option("file", im.file, "Netlist file")->required();
  image->add_option("--width", im.params.width, "Screen width, px");
  image->add_option("--height", im.params.height, "Screen height, px");
  image->add_option("--tilt-period", im.params.tilt_period, "Pixels per 2 pi of phase");
  image->add_option("--waist", im.params.beam_waist, "Beam waist, px");
  image->add_option("--phi0", im.params.phi0, "Phase at the left edge, radians");
  image->add_option("--port", im.port, "A, B or both (S2 left, S1 right)")
      ->check(CLI::IsMember({"A", "B", "both"}));
  image->add_option("-o,--out", im.out, "Output PGM (default stdout)");

  bool mutate = false;
  auto* verify = app.add_subcommand("verify", "Engine-vs-oracle and oracle self-consistency checks");
  verify->add_flag("--mutate-pbs-phase", mutate, "Flip the engine's PBS reflection phase (test hook)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitArgument;
  }

  if (parse->parsed()) {
    CircuitPtr c;
    return load(file, c);
  }
  if (format->parsed()) return cmd_format(file, out);
  if (eval->parsed()) return cmd_eval(file, phi, leakage);
  if (sweep->parsed()) return cmd_sweep(sw);
  if (scenario->parsed()) return cmd_scenario(scenario_name, list, netlist);
  if (mcc->parsed()) return cmd_mc(mc);
  if (image->parsed()) return cmd_image(im);
  if (verify->parsed()) return cmd_verify(mutate);
  return kExitArgument;
}
