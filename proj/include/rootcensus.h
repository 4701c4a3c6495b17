/*
 * rootcensus - per-vertex rooted subgraph counts and densities in sparse
 * graphs, blockmodel sampling, exact count moments, and the bootstrap
 * goodness-of-fit / regression pipeline built on them.
 *
 * Stable C interface over the C++ core: opaque handles, integer status
 * codes, JSON strings for structured results. Every function returning
 * rcs_status leaves a human-readable message in rcs_last_error() on
 * failure. Returned handles must be released with the matching _free.
 */
#ifndef ROOTCENSUS_H
#define ROOTCENSUS_H

#include <stdint.h>

#if defined(_WIN32)
#define RCS_API __declspec(dllexport)
#else
#define RCS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rcs_status {
    RCS_OK = 0,
    RCS_ERROR_INVALID_ARGUMENT = 1,
    RCS_ERROR_IO = 2,
    RCS_ERROR_PARSE = 3,
    RCS_ERROR_DOMAIN = 4, /* degenerate input for the requested statistic */
    RCS_ERROR_OVERFLOW = 5,
    RCS_ERROR_INTERNAL = 6, /* broken invariant: report a bug */
} rcs_status;

typedef struct rcs_graph rcs_graph;
typedef struct rcs_kernel rcs_kernel;
typedef struct rcs_result rcs_result;

RCS_API const char* rcs_version(void);

/* Message describing the most recent failure on this thread. */
RCS_API const char* rcs_last_error(void);

/* Graphs: whitespace edge lists, '#' comments, ids remapped to 0..n-1 by
 * first appearance. Duplicate edges and self-loops are dropped (counted in
 * the census/report output). */
RCS_API rcs_status rcs_graph_load_file(const char* path, rcs_graph** out);
RCS_API rcs_status rcs_graph_parse(const char* text, rcs_graph** out);
RCS_API uint32_t rcs_graph_order(const rcs_graph* g);
RCS_API uint64_t rcs_graph_edge_count(const rcs_graph* g);
RCS_API void rcs_graph_free(rcs_graph* g);

/* Blockmodel kernels: JSON {"k":int, "B":[k*k row-major], "pi":[k]}. */
RCS_API rcs_status rcs_kernel_load_file(const char* path, rcs_kernel** out);
RCS_API rcs_status rcs_kernel_parse(const char* json, rcs_kernel** out);
RCS_API int rcs_kernel_blocks(const rcs_kernel* k);
RCS_API void rcs_kernel_free(rcs_kernel* k);

/* Results carry a JSON document; the pointer is owned by the result. */
RCS_API const char* rcs_result_json(const rcs_result* r);
RCS_API void rcs_result_free(rcs_result* r);

/*
 * Operations. `motifs` is a comma-separated list of catalog names
 * (edge, cherry, 2-star, triangle, square, diamond, bowtie, shovel,
 * tripod, 3-star), file paths, or inline JSON motif records
 * {"order":k,"root":r,"edges":[[a,b],...]}. `options_json` may be NULL or
 * "{}"; recognized keys are listed per call.
 */

/* options: {"workers": int} */
RCS_API rcs_status rcs_census_run(const rcs_graph* g, const char* motifs,
                                  const char* options_json, rcs_result** out);

/* Overlap family of two motifs with covering coefficients, computed by
 * both the direct and the inductive route (they must agree). */
RCS_API rcs_status rcs_overlap_run(const char* motif1, const char* motif2, rcs_result** out);

/* Product-identity sweep over random graphs.
 * options: {"graphs": int, "max_n": int, "seed": u64, "motifs": "csv"} */
RCS_API rcs_status rcs_verify_identity_run(const char* options_json, rcs_result** out);

/* Sample one graph from the kernel.
 * options: {"n": u32, "rho": double, "seed": u64, "latent_mode":
 *           "uniform"|"grid", "workers": int} */
RCS_API rcs_status rcs_simulate_run(const rcs_kernel* k, const char* options_json,
                                    rcs_result** out);

/* Bootstrap per-block density moments on the fixed latent grid.
 * options: {"n": u32, "replicates": int, "motifs": "csv", "seed": u64,
 *           "workers": int} */
RCS_API rcs_status rcs_moments_run(const rcs_kernel* k, const char* options_json,
                                   rcs_result** out);

/* Block-kernel fit (community detection + AIC scan).
 * options: {"seed": u64} */
RCS_API rcs_status rcs_fit_run(const rcs_graph* g, const char* options_json, rcs_result** out);

/* Full goodness-of-fit pipeline.
 * options: {"alpha": double, "moment_replicates": int,
 *           "critical_replicates": int, "seed": u64, "pooled": bool,
 *           "motifs": "csv", "workers": int} */
RCS_API rcs_status rcs_gof_run(const rcs_graph* g, const char* options_json, rcs_result** out);

/* Logistic regression of a binary vertex covariate on rooted densities.
 * covariates_text: delimited rows "vertex_id,label[,extra...]" with a
 * header; rows for vertices absent from the graph are dropped (counted).
 * options: {"motifs": "csv", "alpha": double, "workers": int} */
RCS_API rcs_status rcs_regress_run(const rcs_graph* g, const char* covariates_text,
                                   const char* options_json, rcs_result** out);

/* Named validation experiments: fig-c1-qq, level, power, subcritical,
 * avg-clt. options: {"n": u32, "replicates": int, "seed": u64,
 * "alpha": double, "workers": int}. QQ presets embed a delimited table
 * under result.qq_table. */
RCS_API rcs_status rcs_validate_run(const char* preset, const char* options_json,
                                    rcs_result** out);

/* Writes the bundled assets (worked counting example graph, reference
 * 3-block kernel, synthetic covariate dataset) into a directory. */
RCS_API rcs_status rcs_fixtures_write(const char* directory, rcs_result** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ROOTCENSUS_H */
