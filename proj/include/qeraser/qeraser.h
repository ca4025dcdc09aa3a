#ifndef QERASER_H
#define QERASER_H

/* C interface to the qeraser library. All handles are opaque; every
 * function that can fail returns a qe_status and leaves a message for
 * qe_last_error() on the calling thread. Strings and buffers handed out by
 * the library are released with qe_string_free / qe_buffer_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QE_BUILDING_LIBRARY)
#define QE_API __declspec(dllexport)
#else
#define QE_API __declspec(dllimport)
#endif
#else
#define QE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum qe_status {
  QE_OK = 0,
  QE_ERR_VERIFY = 1,
  QE_ERR_PARSE = 2,
  QE_ERR_IO = 3,
  QE_ERR_ARGUMENT = 4,
  QE_ERR_STATE = 5,
  QE_ERR_INTERNAL = 6
} qe_status;

typedef enum qe_port { QE_PORT_A = 0, QE_PORT_B = 1, QE_PORT_BOTH = 2 } qe_port;

typedef enum qe_lineshape { QE_LORENTZIAN = 0, QE_GAUSSIAN = 1 } qe_lineshape;

typedef struct qe_circuit qe_circuit;
typedef struct qe_diagnostics qe_diagnostics;
typedef struct qe_image qe_image;
typedef struct qe_report qe_report;

QE_API const char* qe_version(void);
/* Message of the last failed call on this thread; "" if none. */
QE_API const char* qe_last_error(void);
QE_API void qe_string_free(char* s);
QE_API void qe_buffer_free(unsigned char* data);

/* ---- circuits ---- */

/* On QE_ERR_PARSE, *diags (if non-null) receives the diagnostics and *out
 * is null. On success *diags is set to null. */
QE_API qe_status qe_circuit_parse(const char* text, size_t len, qe_circuit** out,
                                  qe_diagnostics** diags);
/* As qe_circuit_parse, reading a file. QE_ERR_IO if it cannot be read. */
QE_API qe_status qe_circuit_load(const char* path, qe_circuit** out, qe_diagnostics** diags);
QE_API void qe_circuit_free(qe_circuit* c);

/* Canonical netlist text. */
QE_API qe_status qe_circuit_format(const qe_circuit* c, char** out);
QE_API size_t qe_circuit_statement_count(const qe_circuit* c);
QE_API int qe_circuit_has_sweep(const qe_circuit* c);
QE_API int qe_circuit_has_merge(const qe_circuit* c);
/* port: QE_PORT_A or QE_PORT_B. */
QE_API int qe_circuit_port_polarized(const qe_circuit* c, qe_port port);
QE_API int qe_circuit_equal(const qe_circuit* a, const qe_circuit* b);

/* PBS cross-talk fraction in [0, 0.5]; applies to later evaluations. */
QE_API qe_status qe_circuit_set_pbs_leakage(qe_circuit* c, double leakage);

QE_API size_t qe_diagnostics_count(const qe_diagnostics* d);
/* Borrowed pointers, valid until qe_diagnostics_free. */
QE_API qe_status qe_diagnostic_get(const qe_diagnostics* d, size_t index, int* line, int* column,
                                   const char** code, const char** message);
/* `file:line:col: CODE message` */
QE_API qe_status qe_diagnostic_format(const qe_diagnostics* d, size_t index, const char* file,
                                      char** out);
QE_API void qe_diagnostics_free(qe_diagnostics* d);

/* ---- evaluation ---- */

/* Port intensities (polarized where a polarizer is present) at PHI = phi. */
QE_API qe_status qe_evaluate(const qe_circuit* c, double phi, double* i_a, double* i_b);
/* Fills i_a[n] and i_b[n]. Requires a merge. */
QE_API qe_status qe_sweep(const qe_circuit* c, const double* phi, size_t n, double* i_a,
                          double* i_b);
/* Least-squares cosine visibility of y(phi); needs >= 8 samples over a period. */
QE_API qe_status qe_fringe_visibility(const double* phi, const double* y, size_t n, double* out);

/* ---- coherence ---- */

QE_API qe_status qe_coherence_length(double linewidth_hz, qe_lineshape shape, double* out);
QE_API qe_status qe_visibility_factor(double path_difference_m, double coherence_length_m,
                                      qe_lineshape shape, double* out);

/* ---- Monte Carlo ---- */

typedef struct qe_mc_bin {
  double phi;
  uint64_t clicks_1;
  uint64_t clicks_2;
  double expected_1;
  double expected_2;
} qe_mc_bin;

QE_API const char* qe_mc_rng_name(void);
/* out must hold `bins` entries. */
QE_API qe_status qe_mc_sample(const qe_circuit* c, size_t bins, uint64_t photons_per_bin,
                              uint64_t seed, qe_mc_bin* out);
/* Fitted visibility of channel 1 or 2; 0 below three standard errors. */
QE_API qe_status qe_mc_visibility(const qe_mc_bin* bins, size_t n, uint64_t photons_per_bin,
                                  int channel, double* out);

/* ---- screen images ---- */

typedef struct qe_image_params {
  int width;
  int height;
  double tilt_period;
  double beam_waist;
  double phi0;
} qe_image_params;

QE_API void qe_image_params_default(qe_image_params* p);
/* QE_PORT_BOTH composes S2 (port B) left of S1 (port A). */
QE_API qe_status qe_render(const qe_circuit* c, const qe_image_params* p, qe_port port,
                           qe_image** out);
QE_API int qe_image_width(const qe_image* img);
QE_API int qe_image_height(const qe_image* img);
/* Envelope-corrected column contrast of a single-screen image. */
QE_API qe_status qe_image_contrast(const qe_image* img, const qe_image_params* p, double* out);
QE_API qe_status qe_image_pgm(const qe_image* img, unsigned char** data, size_t* len);
QE_API void qe_image_free(qe_image* img);

/* ---- presets and verification ---- */

QE_API size_t qe_scenario_count(void);
QE_API const char* qe_scenario_name(size_t index);
QE_API const char* qe_scenario_description(size_t index);
/* QE_ERR_ARGUMENT for an unknown name. */
QE_API qe_status qe_scenario_netlist(const char* name, char** out);
QE_API qe_status qe_scenario_run(const char* name, qe_report** out);

/* mutate_pbs_phase flips the engine's path-1 -> path-2 PBS reflection phase. */
QE_API qe_status qe_verify(int mutate_pbs_phase, qe_report** out);

QE_API int qe_report_passed(const qe_report* r);
QE_API size_t qe_report_count(const qe_report* r);
QE_API qe_status qe_report_check(const qe_report* r, size_t index, int* passed, const char** label,
                                 const char** detail);
QE_API qe_status qe_report_text(const qe_report* r, char** out);
QE_API void qe_report_free(qe_report* r);

#ifdef __cplusplus
}
#endif

#endif
