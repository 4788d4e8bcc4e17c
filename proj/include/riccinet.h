/* riccinet: stock-market stability through discrete Ricci curvature on
 * correlation threshold networks, with a wavelet + LSTM hybrid forecaster.
 *
 * C interface over the C++ core. All functions return rn_status; on
 * failure rn_last_error_message() and rn_last_error_class() describe what
 * went wrong (thread-local). Handles are opaque and freed by their
 * matching destroy function.
 */
#ifndef RICCINET_H
#define RICCINET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RICCINET_API __declspec(dllexport)
#else
#define RICCINET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rn_status {
    RN_OK = 0,
    RN_ERROR_IO = 2,         /* unreadable/unwritable files, missing artifacts */
    RN_ERROR_VALIDATION = 3, /* bad config values, malformed or short inputs */
    RN_ERROR_NUMERIC = 4     /* divergence or solver failure */
} rn_status;

typedef struct rn_config rn_config;

RICCINET_API const char* rn_version(void);

/* Error details for the most recent failing call on this thread. The
 * class is one of: io, missing-artifact, validation, too-short, numeric. */
RICCINET_API const char* rn_last_error_message(void);
RICCINET_API const char* rn_last_error_class(void);

/* Configuration: starts at the built-in defaults. Keys are dotted
 * "section.name" pairs matching the INI file layout, e.g.
 * rn_config_set(cfg, "market-data.tau", "22"). */
RICCINET_API rn_status rn_config_create(rn_config** out);
RICCINET_API void rn_config_destroy(rn_config* cfg);
RICCINET_API rn_status rn_config_load(rn_config* cfg, const char* path);
RICCINET_API rn_status rn_config_save(const rn_config* cfg, const char* path);
RICCINET_API rn_status rn_config_set(rn_config* cfg, const char* key,
                                     const char* value);
/* Writes the value into buf (NUL-terminated, truncated to buflen). */
RICCINET_API rn_status rn_config_get(const rn_config* cfg, const char* key,
                                     char* buf, size_t buflen);

/* Pipeline. prices_csv/series_csv may be NULL to use the config's
 * market-data.input / <cli.out>/curvature.csv. */
RICCINET_API rn_status rn_analyze(const rn_config* cfg,
                                  const char* prices_csv,
                                  const char* out_dir);
RICCINET_API rn_status rn_forecast(const rn_config* cfg,
                                   const char* series_csv,
                                   const char* out_dir);
/* Writes <dir>/report.csv; *out_text receives the aligned text table
 * (free with rn_string_free). */
RICCINET_API rn_status rn_report(const char* dir, char** out_text);

/* One-factor synthetic price data for demos and tests. A regime of
 * regime_length return rows starting at regime_start gets a raised factor
 * loading (mean pairwise correlation about 0.8 instead of 0.3). Pass 0 for
 * n_stocks/n_days to keep the defaults (40 stocks, 1200 days). */
RICCINET_API rn_status rn_synth(const char* out_csv, size_t n_stocks,
                                size_t n_days, size_t regime_start,
                                size_t regime_length, uint64_t seed);

RICCINET_API void rn_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RICCINET_H */
