/* C interface to the throughcast forecasting engine.
 *
 * Conventions:
 *   - Every fallible call returns a tc_status; outputs are written through
 *     pointers only on TC_OK.
 *   - On failure, tc_last_error() / tc_last_error_kind() describe the
 *     problem for the calling thread until the next failing call.
 *   - Strings returned through char** are heap-allocated; release them
 *     with tc_string_free. Handles are released with their tc_*_free.
 */
#ifndef THROUGHCAST_H
#define THROUGHCAST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tc_status {
    TC_OK = 0,
    TC_ERR_USAGE = 1,
    TC_ERR_DATA = 2,
    TC_ERR_NUMERIC = 3
} tc_status;

typedef struct tc_series tc_series;
typedef struct tc_fit tc_fit;
typedef struct tc_forecast tc_forecast;
typedef struct tc_trace tc_trace;
typedef struct tc_pca tc_pca;

typedef struct tc_order {
    int p, d, q;
    int seasonal_p, seasonal_d, seasonal_q;
    int seasonal_period; /* 0 disables the seasonal part */
    int include_constant;
} tc_order;

const char* tc_version(void);
const char* tc_last_error(void);      /* message, never NULL */
const char* tc_last_error_kind(void); /* short stable identifier, never NULL */
void tc_string_free(char* s);

/* ---- series ---------------------------------------------------------- */

/* column: "Tpt_in" or "Tpt_out"; repair 0 = reject gaps, 1 = forward-fill
 * whole-hour gaps. */
tc_status tc_series_load_csv(const char* path, const char* column, int repair,
                             tc_series** out);

/* spec_json example:
 *   {"kind":"ar_process","ar_coeffs":[0.7]}
 *   {"kind":"sine","period":24,"amplitude":1}
 *   {"kind":"linear_trend","slope":2}
 * Supported kinds: white_noise, random_walk, ar_process, linear_trend,
 * sine, seasonal_arima (with "order":[p,d,q,P,D,Q,m] and coefficient
 * arrays "ar","ma","sar","sma","constant"). */
tc_status tc_series_synth(const char* spec_json, size_t n, uint64_t seed, double sigma,
                          tc_series** out);

size_t tc_series_size(const tc_series* s);
tc_status tc_series_value(const tc_series* s, size_t i, double* out);
tc_status tc_series_epoch_ms(const tc_series* s, size_t i, int64_t* out);

/* Writes subscriber-format CSV (the series occupies both throughput
 * columns) so generated data can be fed back to any command. */
tc_status tc_series_write_csv(const tc_series* s, const char* path);
void tc_series_free(tc_series* s);

/* ---- statistics ------------------------------------------------------ */

/* Full diagnostics for one file/column: text (or JSON) report plus
 * correlogram and Q-Q scatter CSVs for plotting. constant_flag is set to 1
 * when the column is constant and the report degrades to a notice. */
tc_status tc_stats_report(const char* path, const char* column, int repair, int as_json,
                          char** report_out, char** correlogram_csv_out, char** qq_csv_out,
                          int* constant_flag);

/* ---- ARIMA ----------------------------------------------------------- */

tc_status tc_fit_series(const tc_series* s, const tc_order* order, tc_fit** out);
/* Splits into k contiguous parts, fits each, averages the coefficients. */
tc_status tc_fit_series_partitioned(const tc_series* s, const tc_order* order, int k_parts,
                                    tc_fit** out);
tc_status tc_fit_summary(const tc_fit* f, int as_json, char** out);
double tc_fit_aic(const tc_fit* f);
double tc_fit_log_likelihood(const tc_fit* f);
double tc_fit_sigma2(const tc_fit* f);
int64_t tc_fit_n_effective(const tc_fit* f);
/* {"ar":[...],"ma":[...],"seasonal_ar":[...],"seasonal_ma":[...],
 *  "constant":c,"std_errors":[...]} */
tc_status tc_fit_coefficients_json(const tc_fit* f, char** out);
void tc_fit_free(tc_fit* f);

/* ---- stepwise order search ------------------------------------------- */

/* d < 0 selects the differencing order by repeated unit-root testing. */
tc_status tc_auto_search(const tc_series* s, int d, int max_p, int max_q, tc_trace** out);
tc_status tc_trace_text(const tc_trace* t, char** out);
tc_status tc_trace_best_order(const tc_trace* t, tc_order* out);
tc_status tc_trace_best_fit(const tc_trace* t, tc_fit** out);
void tc_trace_free(tc_trace* t);

/* ---- forecasting ----------------------------------------------------- */

tc_status tc_forecast_make(const tc_fit* f, const tc_series* s, int horizon, tc_forecast** out);
int tc_forecast_horizon(const tc_forecast* fc);
tc_status tc_forecast_row(const tc_forecast* fc, int i, int64_t* epoch_ms, double* mean,
                          double* lower_95, double* upper_95);
/* CSV header: epoch_ms,mean,lower_95,upper_95 */
tc_status tc_forecast_table(const tc_forecast* fc, int as_json, char** out);
/* epoch_ms,fitted rows of the in-sample one-step predictions. */
tc_status tc_fitted_csv(const tc_fit* f, const tc_series* s, char** out);
void tc_forecast_free(tc_forecast* fc);

/* ---- model comparison and speed bench -------------------------------- */

/* Splits 80/10/10, fits ARIMA and the convolutional model on the training
 * part, scores both against the test part. cnn_epochs <= 0 uses the
 * default (50). */
tc_status tc_compare(const tc_series* s, const tc_order* order, int cnn_epochs, uint64_t seed,
                     int as_json, char** out);

/* Times ARIMA against the convolutional model on seeded synthetic data at
 * each row count. format: 0 text, 1 csv, 2 json. cnn_epochs <= 0 uses the
 * default. */
tc_status tc_bench(const size_t* row_counts, size_t n_counts, uint64_t seed, int cnn_epochs,
                   int format, char** out);

/* ---- PCA ------------------------------------------------------------- */

/* Loads a tabular CSV, ordinal-encodes known categorical columns, fits
 * principal components on all rows. */
tc_status tc_pca_fit_csv(const char* path, tc_pca** out);
size_t tc_pca_n_features(const tc_pca* p);
tc_status tc_pca_model_json(const tc_pca* p, char** out);
/* CSV of the input projected onto the leading k components. */
tc_status tc_pca_transform_csv(const tc_pca* p, const char* path, int k, char** out);
tc_status tc_pca_explained_json(const tc_pca* p, char** out);
void tc_pca_free(tc_pca* p);

/* ---- tabular utilities ----------------------------------------------- */

/* Removes exact-duplicate rows; writes the result to out_path and returns
 * a one-line summary. */
tc_status tc_dedupe_csv(const char* in_path, const char* out_path, char** summary_out);

/* ---- plot data ------------------------------------------------------- */

/* what: "series", "differenced", "forecast_overlay", "acf", "qq",
 * "speed". Emits long-format CSV series_label,x,y. forecast_overlay and
 * speed read artifacts (forecast.csv, fitted.csv, speed.csv) from
 * artifact_dir. */
tc_status tc_plotdata(const char* what, const char* input_path, const char* column, int repair,
                      const char* artifact_dir, char** csv_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* THROUGHCAST_H */
