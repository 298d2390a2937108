#ifndef NETPUT_NETPUT_H
#define NETPUT_NETPUT_H

/*
 * C interface of the netput efficiency library.
 *
 * Vectors are plain double arrays of the technology dimension d unless a
 * length is passed. Matrices are row-major. Scores use IEEE infinities for
 * the -inf (outside the technology) and +inf (zero direction) conventions.
 * Every function returns a netput_status; on failure netput_last_error()
 * describes the problem for the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(NETPUT_BUILDING_LIBRARY)
#define NETPUT_API __attribute__((visibility("default")))
#else
#define NETPUT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum netput_status {
  NETPUT_OK = 0,
  NETPUT_ERR_DOMAIN = 1,
  NETPUT_ERR_DIMENSION = 2,
  NETPUT_ERR_INFEASIBLE = 3,
  NETPUT_ERR_UNSUPPORTED = 4,
  NETPUT_ERR_CONVEXITY_REQUIRED = 5,
  NETPUT_ERR_CONFIG = 6,
  NETPUT_ERR_SOLVER = 7,
  NETPUT_ERR_NONCONVERGENCE = 8,
  NETPUT_ERR_PARSE = 9,
  NETPUT_ERR_NULL_ARGUMENT = 10,
  NETPUT_ERR_INTERNAL = 99
} netput_status;

typedef enum netput_p_kind {
  NETPUT_P_NEG_INF = 0,
  NETPUT_P_FINITE = 1,
  NETPUT_P_POS_INF = 2
} netput_p_kind;

typedef struct netput_p {
  netput_p_kind kind;
  double value; /* finite orders only; 0 is the multiplicative case */
} netput_p;

typedef enum netput_efficiency {
  NETPUT_INFEASIBLE = 0,
  NETPUT_EFFICIENT = 1,
  NETPUT_WEAKLY_EFFICIENT = 2,
  NETPUT_INEFFICIENT = 3
} netput_efficiency;

typedef enum netput_utility_kind {
  NETPUT_UTILITY_PMEAN_PLAIN = 0,
  NETPUT_UTILITY_PMEAN_DIRECTIONAL = 1,
  NETPUT_UTILITY_COBB_DOUGLAS = 2
} netput_utility_kind;

/* Utility description; arrays have the technology dimension. */
typedef struct netput_utility {
  netput_utility_kind kind;
  netput_p p;                 /* p-mean kinds */
  const double* coefficients; /* plain p-mean and Cobb-Douglas */
  const double* exponents;    /* Cobb-Douglas */
  const double* direction;    /* directional p-mean */
  int normalized;             /* directional p-mean */
} netput_utility;

typedef struct netput_eval_info {
  double score;
  netput_efficiency status;
  int newton_steps;
  char method[32];
} netput_eval_info;

typedef struct netput_dual_info {
  double dual_value;
  double primal_value;
  double gap;
  double normalization_residual;
  int attained;
} netput_dual_info;

typedef enum netput_criterion {
  NETPUT_MINIMIZATION = 0,
  NETPUT_MAXIMIZATION = 1
} netput_criterion;

typedef enum netput_normalization {
  NETPUT_NORM_DOT_G = 0,
  NETPUT_NORM_MAX_WEIGHTED = 1,
  NETPUT_NORM_LQ = 2,
  NETPUT_NORM_PHI_Q = 3,
  NETPUT_NORM_GEO_MEAN = 4
} netput_normalization;

typedef struct netput_technology netput_technology;

NETPUT_API const char* netput_last_error(void);
NETPUT_API const char* netput_status_name(netput_status status);
NETPUT_API const char* netput_efficiency_name(netput_efficiency status);

/* ---- orders */
NETPUT_API netput_status netput_p_parse(const char* token, netput_p* out);
/* Writes "-inf", "inf" or a %.17g literal. */
NETPUT_API netput_status netput_p_format(netput_p p, char* buf, size_t len);
NETPUT_API const char* netput_distance_family(netput_p p);
NETPUT_API const char* netput_primal_method(netput_p p);
NETPUT_API netput_status netput_dual_regime(netput_p p, netput_criterion* criterion,
                                            netput_normalization* normalization, int* convexity_required);
NETPUT_API const char* netput_criterion_name(netput_criterion c);
NETPUT_API const char* netput_normalization_name(netput_normalization n);

/* ---- means */
NETPUT_API netput_status netput_phi_sum(netput_p p, const double* delta, size_t len, double* out);
NETPUT_API netput_status netput_utility_value(const netput_utility* u, size_t d, const double* delta, double* out);
NETPUT_API netput_status netput_indirect_utility(const netput_utility* u, size_t d, const double* w, double* out);
NETPUT_API netput_status netput_budget_line_argmax(const netput_utility* u, size_t d, const double* b, double c,
                                                   double* v_star, double* value);
NETPUT_API netput_status netput_normalization_value(netput_p p, size_t d, const double* g, const double* w,
                                                    double* out);

/* ---- technologies */
NETPUT_API netput_status netput_technology_create_vrs(size_t d, size_t n_points, const double* points,
                                                      netput_technology** out);
NETPUT_API netput_status netput_technology_create_fdh(size_t d, size_t n_points, const double* points,
                                                      netput_technology** out);
/* Halfspaces normals[i] . u <= rhs[i]. */
NETPUT_API netput_status netput_technology_create_hrep(size_t d, size_t n_rows, const double* normals,
                                                       const double* rhs, netput_technology** out);
NETPUT_API void netput_technology_destroy(netput_technology* tech);
NETPUT_API size_t netput_technology_dim(const netput_technology* tech);

NETPUT_API netput_status netput_contains(const netput_technology* tech, const double* z, int* out);
NETPUT_API netput_status netput_dominating_profit(const netput_technology* tech, const double* z, const double* w,
                                                  double* out);
NETPUT_API netput_status netput_restricted_profit(const netput_technology* tech, const double* z, const double* g,
                                                  const double* w, double* out);
/* witness_mask (optional, length d) marks the coordinates of K that cannot improve. */
NETPUT_API netput_status netput_classify(const netput_technology* tech, const double* z, const size_t* k_set,
                                         size_t k_len, netput_efficiency* out, unsigned char* witness_mask);

/* ---- primal measures; delta_star and projection are optional outputs of length d */
NETPUT_API netput_status netput_evaluate_p(const netput_technology* tech, const double* z, const double* g,
                                           netput_p p, netput_eval_info* info, double* delta_star,
                                           double* projection);
NETPUT_API netput_status netput_directional_distance(const netput_technology* tech, const double* z,
                                                     const double* g, netput_eval_info* info,
                                                     double* delta_star, double* projection);
NETPUT_API netput_status netput_asymmetric_distance(const netput_technology* tech, const double* z,
                                                    const double* g, netput_eval_info* info,
                                                    double* delta_star, double* projection);
NETPUT_API netput_status netput_evaluate_utility(const netput_technology* tech, const double* z,
                                                 const netput_utility* u, netput_eval_info* info,
                                                 double* delta_star, double* projection);
/* Inputs occupy the first m coordinates, outputs the remaining n = d - m. */
NETPUT_API netput_status netput_fare_lovell_input(const netput_technology* tech, const double* x, size_t m,
                                                  const double* y, double* out);
NETPUT_API netput_status netput_generalized_input_measure(const netput_technology* tech, const double* x,
                                                          size_t m, const double* y, netput_p p, double* out);
NETPUT_API netput_status netput_debreu_farrell(const netput_technology* tech, const double* x, size_t m,
                                               const double* y, double* out);

/* ---- duality; prices (optional, length d) */
NETPUT_API netput_status netput_dual_value(const netput_technology* tech, const double* z, const double* g,
                                           netput_p p, netput_dual_info* info, double* prices);
NETPUT_API netput_status netput_dual_value_utility(const netput_technology* tech, const double* z,
                                                   const netput_utility* u, netput_dual_info* info,
                                                   double* prices);
NETPUT_API netput_status netput_norm_dual_value(const netput_technology* tech, const double* z, netput_p p_norm,
                                                const double* weights, netput_dual_info* info, double* prices);
NETPUT_API netput_status netput_weak_duality_audit(const netput_technology* tech, const double* z,
                                                   const double* g, netput_p p, int samples, uint64_t seed,
                                                   double* worst_violation, double* primal_value);

/* ---- reference computations */
NETPUT_API netput_status netput_grid_search(const netput_technology* tech, const double* z, const double* g,
                                            const netput_utility* u, size_t resolution, double* lower_bound,
                                            double* upper_envelope, double* argmax);
NETPUT_API netput_status netput_fdh_closed_form(size_t d, size_t n_points, const double* points, const double* z,
                                                const double* g, netput_p p, double* out);
NETPUT_API netput_status netput_budget_line_max(const netput_utility* u, size_t d, const double* w, double c,
                                                size_t resolution, double* out);

#ifdef __cplusplus
}
#endif

#endif
