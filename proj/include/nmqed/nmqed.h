/* nmqed — driven dissipative qubit-resonator simulator.
 *
 * C interface to the shared library. All entry points operate on an opaque
 * configuration handle and return a status code; buffers are caller-owned.
 * Status codes double as the CLI exit codes.
 */
#ifndef NMQED_H
#define NMQED_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nmqed_status {
  NMQED_OK = 0,
  NMQED_ERROR_CONFIG = 2,     /* bad keys/values/constraints/files */
  NMQED_ERROR_NUMERICS = 3,   /* trace drift, unmet decay-tail criterion,
                                 singular steady-state system */
  NMQED_ERROR_DEGENERATE = 4  /* closed forms undefined (e.g. |G| -> 0) */
} nmqed_status;

typedef struct nmqed_config nmqed_config;

/* Fresh configuration with the built-in defaults (resonant working point:
 * delta_a = delta_c = 1, g = 0.2, kappa = gamma = 0.004, xi = 0.02,
 * chi = 0.01, n_fock = 10; mode = spectrum-numeric). Returns NULL only on
 * allocation failure. */
nmqed_config *nmqed_config_create(void);
void nmqed_config_free(nmqed_config *cfg);

/* Flat `key = value` config text / file; # starts a comment. */
int nmqed_config_parse_text(nmqed_config *cfg, const char *text);
int nmqed_config_parse_file(nmqed_config *cfg, const char *path);

/* Apply a single key (same keys as the file format). Later calls win, so
 * command-line flags take precedence by being applied after the file. */
int nmqed_config_set(nmqed_config *cfg, const char *key, const char *value);

/* Canonical round-trippable serialization. Writes up to `cap` bytes
 * (NUL-terminated when cap > 0); *needed receives the full length
 * excluding the NUL. */
int nmqed_config_serialize(const nmqed_config *cfg, char *buf, size_t cap, size_t *needed);

/* Constraint checks; advisory warnings (one per line) are placed in buf. */
int nmqed_config_validate(const nmqed_config *cfg, char *warnings, size_t cap);

/* Execute the configured mode and write the output file(s). A human-readable
 * report (files written, peak table, diagnostics) is placed in `summary`.
 * Returns NMQED_ERROR_NUMERICS when the run completed but raised a
 * numerical diagnostic. */
int nmqed_run(const nmqed_config *cfg, char *summary, size_t cap);

/* Direct computations (no files). Arrays are caller-allocated. */

/* splitting = 2 Re G */
int nmqed_splitting(const nmqed_config *cfg, double *out);

/* out[6] = { Re G, Im G, Gamma_1, Gamma_2, omega_1, omega_2 } */
int nmqed_spectral_params(const nmqed_config *cfg, double out[6]);

/* out[4] = { Re rho_00_01, Im rho_00_01, Re rho_00_10, Im rho_00_10 } */
int nmqed_steady_elements(const nmqed_config *cfg, double out[4]);

/* Closed-form spectrum on a caller-supplied ascending grid. */
int nmqed_analytic_spectrum(const nmqed_config *cfg, const double *omega, size_t n, double *s);

/* Master-equation/regression spectrum on a caller-supplied ascending grid
 * (time grid per config overrides or defaults). */
int nmqed_numeric_spectrum(const nmqed_config *cfg, const double *omega, size_t n, double *s);

/* <V(tau)V(0)> on a caller-supplied uniform ascending grid starting at 0. */
int nmqed_emf_correlation(const nmqed_config *cfg, const double *tau, size_t n, double *re,
                          double *im);

/* Message for the most recent failing call on this thread; never NULL. */
const char *nmqed_last_error(void);

const char *nmqed_version(void);

#ifdef __cplusplus
}
#endif

#endif /* NMQED_H */
