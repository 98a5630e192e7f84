/* C interface to the erratic-extremist simulation library.
 *
 * Every fallible call returns an erratic_status; on failure the message is
 * available from erratic_last_error() on the calling thread until the next
 * failing call. Handles are opaque and owned by the caller. Strings returned
 * through char** must be released with erratic_string_free. */
#ifndef ERRATIC_H
#define ERRATIC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ERRATIC_BUILDING)
#    define ERRATIC_API __declspec(dllexport)
#  else
#    define ERRATIC_API __declspec(dllimport)
#  endif
#else
#  define ERRATIC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum erratic_status {
  ERRATIC_OK = 0,
  ERRATIC_DOMAIN = 1,      /* parameter outside its mathematical domain */
  ERRATIC_VALIDATION = 2,  /* malformed input or configuration */
  ERRATIC_DEGENERATE = 3,  /* e.g. repeated fractional parts */
  ERRATIC_OVERFLOW = 4,
  ERRATIC_IO = 5,
  ERRATIC_INVARIANT = 6,   /* a simulation safety cap or invariant tripped */
  ERRATIC_INVALID_ARGUMENT = 7, /* null pointer or bad enum value */
  ERRATIC_INTERNAL = 8
} erratic_status;

typedef enum erratic_mode {
  ERRATIC_BILATERAL = 0,
  ERRATIC_UNILATERAL_RIGHT = 1,
  ERRATIC_UNILATERAL_LEFT = 2
} erratic_mode;

typedef struct erratic_summary {
  uint64_t count;
  double mean;
  double variance;
  double stddev;
  double stderr_mean;
} erratic_summary;

ERRATIC_API const char* erratic_version(void);
ERRATIC_API const char* erratic_last_error(void);
ERRATIC_API const char* erratic_status_string(erratic_status status);
ERRATIC_API void erratic_string_free(char* s);

/* ---- closed forms ---- */

ERRATIC_API erratic_status erratic_catalan(unsigned k, uint64_t* out);
ERRATIC_API erratic_status erratic_hit_minus_one_series(double epsilon, unsigned terms, double* out);
ERRATIC_API erratic_status erratic_prob_hit_minus_one(double epsilon, double* out);
ERRATIC_API erratic_status erratic_prob_hit_plus_one(double epsilon, double* out);
ERRATIC_API erratic_status erratic_expected_steps_to_minus_one(double epsilon, double* out);
ERRATIC_API erratic_status erratic_farthest_excursion_bound(double epsilon, double* out);
ERRATIC_API erratic_status erratic_stationary_pi(double epsilon, long long k, double* out);
ERRATIC_API erratic_status erratic_stationary_mean(double epsilon, double* out);
ERRATIC_API erratic_status erratic_tail_prob_single(double epsilon, long long k, double* out);
ERRATIC_API erratic_status erratic_tail_prob_sum(double epsilon, long long k, double* out);
ERRATIC_API erratic_status erratic_markov_span_bound(double epsilon, double k, double* out);
/* positions[0] is the beacon. */
ERRATIC_API erratic_status erratic_gathering_bound_unilateral(const double* positions, size_t n,
                                                              double epsilon, double* out);
ERRATIC_API erratic_status erratic_half_shrink_bound(long long n, double s0, double total_span0,
                                                     double epsilon, double* out);
ERRATIC_API erratic_status erratic_min_fractional_distance(const double* positions, size_t n,
                                                           double* out);
/* positions must be sorted. *already_gathered (optional) is set to 1 when the
 * core span is already <= 1, in which case *out is 0. */
ERRATIC_API erratic_status erratic_gathering_time_bound(const double* positions, size_t n,
                                                        double epsilon, double* out,
                                                        int* already_gathered);

typedef struct erratic_absorption {
  double p_left;
  double p_right;
  double expected_time;
} erratic_absorption;

ERRATIC_API erratic_status erratic_finite_chain_oracle(double epsilon, long long right_barrier,
                                                       long long left_target,
                                                       erratic_absorption* out);

/* ---- single-walker simulators ---- */

ERRATIC_API erratic_status erratic_walk_first_passage(double epsilon, uint64_t seed, uint64_t trials,
                                                      erratic_summary* steps,
                                                      erratic_summary* excursion);
/* Probability of reaching `upper` before `lower`, starting at 0. */
ERRATIC_API erratic_status erratic_walk_exit_probability(double epsilon, uint64_t seed,
                                                         uint64_t trials, long long upper,
                                                         long long lower, erratic_summary* out);
/* occupancy[j] receives the empirical mass of state j + 1 for j < max_state. */
ERRATIC_API erratic_status erratic_reflected_chain(double epsilon, uint64_t seed, uint64_t burn_in,
                                                   uint64_t samples, double* occupancy,
                                                   size_t max_state, double* total_variation,
                                                   double* mean, double* mean_stderr);

/* ---- one-dimensional swarm ---- */

typedef struct erratic_swarm1d erratic_swarm1d;

typedef struct erratic_metrics1d {
  double centroid;
  double variance;
  double core_span;
  double total_span;
} erratic_metrics1d;

typedef struct erratic_row1d {
  uint64_t t;
  double centroid;
  double core_span;
  double total_span;
  double x_first;
  double x_last;
} erratic_row1d;

typedef void (*erratic_row1d_fn)(const erratic_row1d* row, void* user);

typedef struct erratic_gathering {
  uint64_t t;
  int reached;
  uint64_t invariant_violations;
} erratic_gathering;

typedef struct erratic_sweep {
  uint64_t t;
  int finished;
  int in_window;
} erratic_sweep;

ERRATIC_API erratic_status erratic_swarm1d_create(const double* positions, size_t n, double epsilon,
                                                  uint64_t seed, erratic_mode mode,
                                                  erratic_swarm1d** out);
ERRATIC_API void erratic_swarm1d_destroy(erratic_swarm1d* swarm);
ERRATIC_API erratic_status erratic_swarm1d_clone(const erratic_swarm1d* swarm, erratic_swarm1d** out);
ERRATIC_API size_t erratic_swarm1d_size(const erratic_swarm1d* swarm);
ERRATIC_API uint64_t erratic_swarm1d_time(const erratic_swarm1d* swarm);
ERRATIC_API int erratic_swarm1d_coincident(const erratic_swarm1d* swarm);
/* Copies min(n, size) sorted positions. */
ERRATIC_API erratic_status erratic_swarm1d_positions(const erratic_swarm1d* swarm, double* out,
                                                     size_t n);
/* Advances `steps` ticks. */
ERRATIC_API erratic_status erratic_swarm1d_step(erratic_swarm1d* swarm, uint64_t steps);
ERRATIC_API erratic_status erratic_swarm1d_metrics(const erratic_swarm1d* swarm,
                                                   erratic_metrics1d* out);
/* Steps until the core span is <= 1; the handle is left in the final state.
 * `on_row` (optional) receives rows at t0, every `stride` ticks and the end. */
ERRATIC_API erratic_status erratic_swarm1d_run_until_gathered(erratic_swarm1d* swarm,
                                                              uint64_t max_steps, uint64_t stride,
                                                              erratic_row1d_fn on_row, void* user,
                                                              erratic_gathering* out);
/* Unilateral sweep against the beacon (leftmost for right mode). */
ERRATIC_API erratic_status erratic_swarm1d_run_unilateral_sweep(erratic_swarm1d* swarm,
                                                                uint64_t max_steps,
                                                                erratic_sweep* out);
/* n sorted uniform points for a nominal inner span S0. The stream is derived
 * from `seed` with purpose "placement", so passing the dynamics seed is safe. */
ERRATIC_API erratic_status erratic_uniform_placement(size_t n, double s0, uint64_t seed, double* out);

/* ---- planar swarm ---- */

typedef struct erratic_swarm2d erratic_swarm2d;

typedef struct erratic_row2d {
  uint64_t t;
  double cx;
  double cy;
  double diameter;
  size_t hull_count;
} erratic_row2d;

typedef void (*erratic_row2d_fn)(const erratic_row2d* row, void* user);

/* xy holds n interleaved (x, y) pairs. */
ERRATIC_API erratic_status erratic_swarm2d_create(const double* xy, size_t n, double epsilon,
                                                  uint64_t seed, erratic_swarm2d** out);
/* n points uniform on [0, side]^2; placement and dynamics use derived seeds. */
ERRATIC_API erratic_status erratic_swarm2d_create_uniform(size_t n, double side, double epsilon,
                                                          uint64_t seed, erratic_swarm2d** out);
ERRATIC_API void erratic_swarm2d_destroy(erratic_swarm2d* swarm);
ERRATIC_API size_t erratic_swarm2d_size(const erratic_swarm2d* swarm);
ERRATIC_API uint64_t erratic_swarm2d_time(const erratic_swarm2d* swarm);
ERRATIC_API erratic_status erratic_swarm2d_positions(const erratic_swarm2d* swarm, double* xy,
                                                     size_t n);
ERRATIC_API erratic_status erratic_swarm2d_step(erratic_swarm2d* swarm, uint64_t steps);
/* Runs `steps` ticks, emitting rows at t0 and every `stride` ticks. */
ERRATIC_API erratic_status erratic_swarm2d_run(erratic_swarm2d* swarm, uint64_t steps,
                                               uint64_t stride, erratic_row2d_fn on_row,
                                               void* user);
/* Copies up to `capacity` hull vertex indices in CCW order; *count gets the
 * hull size. */
ERRATIC_API erratic_status erratic_swarm2d_hull(const erratic_swarm2d* swarm, size_t* indices,
                                                size_t capacity, size_t* count);

/* ---- experiments ---- */

/* Parses and validates a JSON experiment config. *resolved (optional)
 * receives the config with every default filled in. */
ERRATIC_API erratic_status erratic_experiment_validate(const char* config_json, char** resolved);
/* Runs the experiment and writes results.csv / results.jsonl (per the
 * config's formats), histogram.csv for span distributions, and
 * manifest.json into out_dir, which must exist. *summary_json (optional)
 * receives {"incomplete", "diagnostics", "files", "rows"}. */
ERRATIC_API erratic_status erratic_experiment_run(const char* config_json, const char* out_dir,
                                                  char** summary_json);

#ifdef __cplusplus
}
#endif

#endif
