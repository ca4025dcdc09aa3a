#include "qeraser/qeraser.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qeraser/coherence.hpp"
#include "qeraser/dualrail.hpp"
#include "qeraser/fringe.hpp"
#include "qeraser/montecarlo.hpp"
#include "qeraser/netlist.hpp"
#include "qeraser/scenarios.hpp"

struct qe_circuit {
  qeraser::Circuit circuit;
  qeraser::EngineOptions options;
};

struct qe_diagnostics {
  std::vector<qeraser::ParseError> errors;
  std::vector<std::string> codes;
};

struct qe_image {
  qeraser::ScreenImage image;
};

struct qe_report {
  qeraser::Report report;
};

namespace {

thread_local std::string g_last_error;

qe_status fail(qe_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, mapping exceptions onto status codes.
template <typename F>
qe_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const std::invalid_argument& e) {
    return fail(QE_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(QE_ERR_ARGUMENT, e.what());
  } catch (const std::logic_error& e) {
    return fail(QE_ERR_STATE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QE_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

qeraser::Lineshape lineshape(qe_lineshape s) {
  switch (s) {
    case QE_LORENTZIAN:
      return qeraser::Lineshape::Lorentzian;
    case QE_GAUSSIAN:
      return qeraser::Lineshape::Gaussian;
  }
  throw std::invalid_argument("unknown lineshape");
}

qeraser::ImageParams image_params(const qe_image_params* p) {
  qeraser::ImageParams out;
  if (p != nullptr) {
    out.width = p->width;
    out.height = p->height;
    out.tilt_period = p->tilt_period;
    out.beam_waist = p->beam_waist;
    out.phi0 = p->phi0;
  }
  return out;
}

qe_status parse_text(std::string_view text, qe_circuit** out, qe_diagnostics** diags) {
  if (out == nullptr) return fail(QE_ERR_ARGUMENT, "null output pointer");
  *out = nullptr;
  if (diags != nullptr) *diags = nullptr;
  auto result = qeraser::parse_netlist(text);
  if (auto* errors = std::get_if<std::vector<qeraser::ParseError>>(&result)) {
    const std::string first = errors->empty() ? "parse error" : errors->front().message;
    if (diags != nullptr) {
      auto* d = new qe_diagnostics;
      d->errors = std::move(*errors);
      for (const auto& e : d->errors) d->codes.emplace_back(qeraser::to_string(e.code));
      *diags = d;
    }
    return fail(QE_ERR_PARSE, first);
  }
  *out = new qe_circuit{std::move(std::get<qeraser::Circuit>(result)), {}};
  return QE_OK;
}

bool valid_port(qe_port port) { return port == QE_PORT_A || port == QE_PORT_B; }

qeraser::Port to_port(qe_port port) {
  return port == QE_PORT_A ? qeraser::Port::A : qeraser::Port::B;
}

}  // namespace

extern "C" {

const char* qe_version(void) { return "0.1.0"; }

const char* qe_last_error(void) { return g_last_error.c_str(); }

void qe_string_free(char* s) { std::free(s); }

void qe_buffer_free(unsigned char* data) { std::free(data); }

qe_status qe_circuit_parse(const char* text, size_t len, qe_circuit** out, qe_diagnostics** diags) {
  return guarded([&] {
    if (text == nullptr && len > 0) return fail(QE_ERR_ARGUMENT, "null text");
    return parse_text(std::string_view(text == nullptr ? "" : text, len), out, diags);
  });
}

qe_status qe_circuit_load(const char* path, qe_circuit** out, qe_diagnostics** diags) {
  return guarded([&] {
    if (out != nullptr) *out = nullptr;
    if (diags != nullptr) *diags = nullptr;
    if (path == nullptr) return fail(QE_ERR_ARGUMENT, "null path");
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(QE_ERR_IO, std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return fail(QE_ERR_IO, std::string("cannot read ") + path);
    return parse_text(buf.str(), out, diags);
  });
}

void qe_circuit_free(qe_circuit* c) { delete c; }

qe_status qe_circuit_format(const qe_circuit* c, char** out) {
  return guarded([&] {
    if (c == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    *out = dup_string(qeraser::format_netlist(c->circuit));
    return QE_OK;
  });
}

size_t qe_circuit_statement_count(const qe_circuit* c) {
  return c == nullptr ? 0 : c->circuit.statement_count();
}

int qe_circuit_has_sweep(const qe_circuit* c) { return c != nullptr && c->circuit.has_sweep(); }

int qe_circuit_has_merge(const qe_circuit* c) { return c != nullptr && c->circuit.has_merge(); }

int qe_circuit_port_polarized(const qe_circuit* c, qe_port port) {
  return c != nullptr && valid_port(port) && c->circuit.port_polarized(to_port(port));
}

int qe_circuit_equal(const qe_circuit* a, const qe_circuit* b) {
  return a != nullptr && b != nullptr && qeraser::structurally_equal(a->circuit, b->circuit);
}

qe_status qe_circuit_set_pbs_leakage(qe_circuit* c, double leakage) {
  if (c == nullptr) return fail(QE_ERR_ARGUMENT, "null circuit");
  if (!(leakage >= 0.0 && leakage <= 0.5)) return fail(QE_ERR_ARGUMENT, "leakage must be in [0, 0.5]");
  c->options.pbs_leakage = leakage;
  return QE_OK;
}

size_t qe_diagnostics_count(const qe_diagnostics* d) { return d == nullptr ? 0 : d->errors.size(); }

qe_status qe_diagnostic_get(const qe_diagnostics* d, size_t index, int* line, int* column,
                            const char** code, const char** message) {
  if (d == nullptr || index >= d->errors.size()) return fail(QE_ERR_ARGUMENT, "bad diagnostic index");
  const auto& e = d->errors[index];
  if (line != nullptr) *line = e.line;
  if (column != nullptr) *column = e.column;
  if (code != nullptr) *code = d->codes[index].c_str();
  if (message != nullptr) *message = e.message.c_str();
  return QE_OK;
}

qe_status qe_diagnostic_format(const qe_diagnostics* d, size_t index, const char* file, char** out) {
  return guarded([&] {
    if (d == nullptr || index >= d->errors.size() || out == nullptr) {
      return fail(QE_ERR_ARGUMENT, "bad diagnostic index");
    }
    *out = dup_string(qeraser::format_diagnostic(file == nullptr ? "<input>" : file, d->errors[index]));
    return QE_OK;
  });
}

void qe_diagnostics_free(qe_diagnostics* d) { delete d; }

qe_status qe_evaluate(const qe_circuit* c, double phi, double* i_a, double* i_b) {
  return guarded([&] {
    if (c == nullptr) return fail(QE_ERR_ARGUMENT, "null circuit");
    const auto i = qeraser::port_intensities(c->circuit, phi, c->options);
    if (i_a != nullptr) *i_a = i.a;
    if (i_b != nullptr) *i_b = i.b;
    return QE_OK;
  });
}

qe_status qe_sweep(const qe_circuit* c, const double* phi, size_t n, double* i_a, double* i_b) {
  return guarded([&] {
    if (c == nullptr || (n > 0 && (phi == nullptr || i_a == nullptr || i_b == nullptr))) {
      return fail(QE_ERR_ARGUMENT, "null argument");
    }
    for (size_t k = 0; k < n; ++k) {
      const auto i = qeraser::port_intensities(c->circuit, phi[k], c->options);
      i_a[k] = i.a;
      i_b[k] = i.b;
    }
    return QE_OK;
  });
}

qe_status qe_fringe_visibility(const double* phi, const double* y, size_t n, double* out) {
  return guarded([&] {
    if (phi == nullptr || y == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    *out = qeraser::estimate_visibility(std::span(phi, n), std::span(y, n));
    return QE_OK;
  });
}

qe_status qe_coherence_length(double linewidth_hz, qe_lineshape shape, double* out) {
  return guarded([&] {
    if (out == nullptr) return fail(QE_ERR_ARGUMENT, "null output pointer");
    qeraser::SourceSpec s;
    s.linewidth = linewidth_hz;
    s.lineshape = lineshape(shape);
    *out = qeraser::coherence_length(s);
    return QE_OK;
  });
}

qe_status qe_visibility_factor(double path_difference_m, double coherence_length_m,
                               qe_lineshape shape, double* out) {
  return guarded([&] {
    if (out == nullptr) return fail(QE_ERR_ARGUMENT, "null output pointer");
    *out = qeraser::visibility_factor({coherence_length_m, path_difference_m, lineshape(shape)});
    return QE_OK;
  });
}

const char* qe_mc_rng_name(void) { return qeraser::kRngName.data(); }

qe_status qe_mc_sample(const qe_circuit* c, size_t bins, uint64_t photons_per_bin, uint64_t seed,
                       qe_mc_bin* out) {
  return guarded([&] {
    if (c == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    const auto h = qeraser::sample_clicks(c->circuit, bins, photons_per_bin, seed, c->options);
    for (size_t k = 0; k < h.bins.size(); ++k) {
      const auto& b = h.bins[k];
      out[k] = {b.phi, b.clicks_1, b.clicks_2, b.expected_1, b.expected_2};
    }
    return QE_OK;
  });
}

qe_status qe_mc_visibility(const qe_mc_bin* bins, size_t n, uint64_t photons_per_bin, int channel,
                           double* out) {
  return guarded([&] {
    if (bins == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    qeraser::ClickHistogram h;
    h.photons_per_bin = photons_per_bin;
    for (size_t k = 0; k < n; ++k) {
      h.bins.push_back({bins[k].phi, bins[k].clicks_1, bins[k].clicks_2, bins[k].expected_1,
                        bins[k].expected_2});
    }
    *out = qeraser::estimate_visibility(h, channel);
    return QE_OK;
  });
}

void qe_image_params_default(qe_image_params* p) {
  if (p == nullptr) return;
  const qeraser::ImageParams d;
  *p = {d.width, d.height, d.tilt_period, d.beam_waist, d.phi0};
}

qe_status qe_render(const qe_circuit* c, const qe_image_params* p, qe_port port, qe_image** out) {
  return guarded([&] {
    if (c == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    const auto params = image_params(p);
    if (port == QE_PORT_BOTH) {
      *out = new qe_image{qeraser::render_screens(c->circuit, params, c->options)};
    } else if (valid_port(port)) {
      *out = new qe_image{qeraser::render_screen(c->circuit, to_port(port), params, c->options)};
    } else {
      return fail(QE_ERR_ARGUMENT, "unknown port");
    }
    return QE_OK;
  });
}

int qe_image_width(const qe_image* img) { return img == nullptr ? 0 : img->image.width; }

int qe_image_height(const qe_image* img) { return img == nullptr ? 0 : img->image.height; }

qe_status qe_image_contrast(const qe_image* img, const qe_image_params* p, double* out) {
  return guarded([&] {
    if (img == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    auto params = image_params(p);
    if (params.width != img->image.width || params.height != img->image.height) {
      return fail(QE_ERR_ARGUMENT, "contrast needs the parameters of a single-screen image");
    }
    *out = qeraser::column_contrast(img->image, params);
    return QE_OK;
  });
}

qe_status qe_image_pgm(const qe_image* img, unsigned char** data, size_t* len) {
  return guarded([&] {
    if (img == nullptr || data == nullptr || len == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    const std::string pgm = qeraser::encode_pgm(img->image);
    auto* buf = static_cast<unsigned char*>(std::malloc(pgm.size()));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, pgm.data(), pgm.size());
    *data = buf;
    *len = pgm.size();
    return QE_OK;
  });
}

void qe_image_free(qe_image* img) { delete img; }

size_t qe_scenario_count(void) { return qeraser::scenario_presets().size(); }

const char* qe_scenario_name(size_t index) {
  const auto all = qeraser::scenario_presets();
  return index < all.size() ? all[index].name.data() : nullptr;
}

const char* qe_scenario_description(size_t index) {
  const auto all = qeraser::scenario_presets();
  return index < all.size() ? all[index].description.data() : nullptr;
}

qe_status qe_scenario_netlist(const char* name, char** out) {
  return guarded([&] {
    if (name == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    const auto* preset = qeraser::find_preset(name);
    if (preset == nullptr) return fail(QE_ERR_ARGUMENT, std::string("unknown scenario ") + name);
    *out = dup_string(qeraser::scenario_netlist(preset->params, preset->description));
    return QE_OK;
  });
}

qe_status qe_scenario_run(const char* name, qe_report** out) {
  return guarded([&] {
    if (name == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    const auto* preset = qeraser::find_preset(name);
    if (preset == nullptr) return fail(QE_ERR_ARGUMENT, std::string("unknown scenario ") + name);
    *out = new qe_report{qeraser::run_scenario(*preset)};
    return QE_OK;
  });
}

qe_status qe_verify(int mutate_pbs_phase, qe_report** out) {
  return guarded([&] {
    if (out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    qeraser::VerifyOptions options;
    if (mutate_pbs_phase != 0) options.engine.pbs_reflect_12 = -qeraser::kI;
    *out = new qe_report{qeraser::run_verification(options)};
    return QE_OK;
  });
}

int qe_report_passed(const qe_report* r) { return r != nullptr && r->report.passed(); }

size_t qe_report_count(const qe_report* r) { return r == nullptr ? 0 : r->report.checks.size(); }

qe_status qe_report_check(const qe_report* r, size_t index, int* passed, const char** label,
                          const char** detail) {
  if (r == nullptr || index >= r->report.checks.size()) return fail(QE_ERR_ARGUMENT, "bad check index");
  const auto& c = r->report.checks[index];
  if (passed != nullptr) *passed = c.passed ? 1 : 0;
  if (label != nullptr) *label = c.label.c_str();
  if (detail != nullptr) *detail = c.detail.c_str();
  return QE_OK;
}

qe_status qe_report_text(const qe_report* r, char** out) {
  return guarded([&] {
    if (r == nullptr || out == nullptr) return fail(QE_ERR_ARGUMENT, "null argument");
    *out = dup_string(r->report.text());
    return QE_OK;
  });
}

void qe_report_free(qe_report* r) { delete r; }

}  // extern "C"
