/* C interface to the fwlbp texture library.
 *
 * Every fallible call returns an fwlbp_status; on failure a message for the
 * calling thread is available from fwlbp_last_error() until the next call.
 * Objects are opaque handles released with the matching *_free function.
 * Strings returned through char** out-parameters are heap allocated and must
 * be released with fwlbp_string_free.
 */
#ifndef FWLBP_FWLBP_H_
#define FWLBP_FWLBP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FWLBP_BUILDING_LIBRARY)
#    define FWLBP_API __declspec(dllexport)
#  else
#    define FWLBP_API __declspec(dllimport)
#  endif
#else
#  define FWLBP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fwlbp_status {
  FWLBP_OK = 0,
  FWLBP_ERR_PARSE = 1,
  FWLBP_ERR_TRUNCATED = 2,
  FWLBP_ERR_UNSUPPORTED_FORMAT = 3,
  FWLBP_ERR_CONSTANT_IMAGE = 4,
  FWLBP_ERR_DEGENERATE_SIZE = 5,
  FWLBP_ERR_INVALID_PARAMETER = 6,
  FWLBP_ERR_IMAGE_TOO_SMALL = 7,
  FWLBP_ERR_INSUFFICIENT_LAYERS = 8,
  FWLBP_ERR_BORDER_VIOLATION = 9,
  FWLBP_ERR_SHAPE_MISMATCH = 10,
  FWLBP_ERR_DOMAIN = 11,
  FWLBP_ERR_INSUFFICIENT_SAMPLES = 12,
  FWLBP_ERR_UNKNOWN_CLASS = 13,
  FWLBP_ERR_EMPTY_MODEL = 14,
  FWLBP_ERR_IO = 15,
  FWLBP_ERR_EXISTS = 16,
  FWLBP_ERR_INVALID_ARGUMENT = 100, /* null handle or pointer */
  FWLBP_ERR_INTERNAL = 101
} fwlbp_status;

typedef struct fwlbp_image fwlbp_image;
typedef struct fwlbp_config fwlbp_config;
typedef struct fwlbp_dataset fwlbp_dataset;
typedef struct fwlbp_model fwlbp_model;

FWLBP_API const char* fwlbp_version(void);
FWLBP_API const char* fwlbp_status_name(fwlbp_status status);
FWLBP_API const char* fwlbp_last_error(void);
FWLBP_API void fwlbp_string_free(char* s);
/* FWLBP_JOBS if set, else the logical core count. */
FWLBP_API unsigned fwlbp_default_jobs(void);

/* ---- images ---- */

/* data holds width*height row-major samples; NULL gives a zero image. */
FWLBP_API fwlbp_status fwlbp_image_create(size_t width, size_t height,
                                          const double* data, fwlbp_image** out);
FWLBP_API fwlbp_status fwlbp_image_load(const char* path, fwlbp_image** out);
FWLBP_API fwlbp_status fwlbp_image_load_memory(const uint8_t* bytes, size_t size,
                                               fwlbp_image** out);
/* binary != 0 writes P5, else P2. */
FWLBP_API fwlbp_status fwlbp_image_save(const fwlbp_image* img, const char* path,
                                        int binary, unsigned maxval);
FWLBP_API void fwlbp_image_free(fwlbp_image* img);
FWLBP_API size_t fwlbp_image_width(const fwlbp_image* img);
FWLBP_API size_t fwlbp_image_height(const fwlbp_image* img);
/* Borrowed pointer, valid while img lives. */
FWLBP_API const double* fwlbp_image_data(const fwlbp_image* img);

FWLBP_API fwlbp_status fwlbp_image_normalize(const fwlbp_image* img, double mean,
                                             double stddev, fwlbp_image** out);
FWLBP_API fwlbp_status fwlbp_image_resample(const fwlbp_image* img, double factor,
                                            fwlbp_image** out);
FWLBP_API fwlbp_status fwlbp_image_rotate(const fwlbp_image* img, double degrees,
                                          fwlbp_image** out);
/* variance_power != 0 measures signal power as intensity variance instead
 * of mean square. */
FWLBP_API fwlbp_status fwlbp_image_add_noise(const fwlbp_image* img, double snr_db,
                                             uint64_t seed, int variance_power,
                                             fwlbp_image** out);

/* Per-pixel fractal dimension; linear != 0 selects the linear regression. */
FWLBP_API fwlbp_status fwlbp_fd_image(const fwlbp_image* img, int r_min, int r_max,
                                      int linear, fwlbp_image** out);

/* ---- configuration ---- */

FWLBP_API fwlbp_status fwlbp_config_create(fwlbp_config** out);
FWLBP_API fwlbp_status fwlbp_config_from_json(const char* json, fwlbp_config** out);
/* Keys present in json override the current values. */
FWLBP_API fwlbp_status fwlbp_config_update_json(fwlbp_config* cfg, const char* json);
FWLBP_API fwlbp_status fwlbp_config_to_json(const fwlbp_config* cfg, char** out);
FWLBP_API void fwlbp_config_free(fwlbp_config* cfg);

/* ---- descriptors ---- */

FWLBP_API fwlbp_status fwlbp_descriptor_length(const fwlbp_config* cfg, size_t* out);
/* Preprocesses per cfg and writes the L1-normalized descriptor into
 * out[0..length). */
FWLBP_API fwlbp_status fwlbp_extract(const fwlbp_image* img, const fwlbp_config* cfg,
                                     double* out, size_t length);
/* Descriptor CSV (header path,label,f0,...) for a list of PGM files; labels
 * may be NULL. Without keep_going the first failure aborts the batch. With
 * it, failing files are skipped and listed one per line in *errors (may be
 * NULL); the status is then the first failure's code, or OK. */
FWLBP_API fwlbp_status fwlbp_extract_files(const char* const* paths,
                                           const char* const* labels, size_t count,
                                           const fwlbp_config* cfg, unsigned jobs,
                                           int keep_going, char** csv, char** errors);

/* ---- datasets: root/<class>/<name>.pgm ---- */

FWLBP_API fwlbp_status fwlbp_dataset_load(const char* root, fwlbp_dataset** out);
FWLBP_API void fwlbp_dataset_free(fwlbp_dataset* ds);
FWLBP_API size_t fwlbp_dataset_size(const fwlbp_dataset* ds);
FWLBP_API size_t fwlbp_dataset_class_count(const fwlbp_dataset* ds);
FWLBP_API const char* fwlbp_dataset_class_name(const fwlbp_dataset* ds, size_t i);
FWLBP_API const char* fwlbp_dataset_sample_id(const fwlbp_dataset* ds, size_t i);
FWLBP_API int fwlbp_dataset_sample_label(const fwlbp_dataset* ds, size_t i);

/* ---- model bundles: pca.json, nsc.json, config.json ---- */

FWLBP_API fwlbp_status fwlbp_model_fit(const fwlbp_dataset* ds, const fwlbp_config* cfg,
                                       unsigned jobs, fwlbp_model** out);
/* Creates dir if needed; existing bundle files need force != 0. */
FWLBP_API fwlbp_status fwlbp_model_save(const fwlbp_model* model, const char* dir,
                                        int force);
FWLBP_API fwlbp_status fwlbp_model_load(const char* dir, fwlbp_model** out);
FWLBP_API void fwlbp_model_free(fwlbp_model* model);
FWLBP_API size_t fwlbp_model_class_count(const fwlbp_model* model);
/* {"label": name, "residuals": [{"class", "residual"}, ...]} with residuals
 * ascending. */
FWLBP_API fwlbp_status fwlbp_model_predict(const fwlbp_model* model,
                                           const fwlbp_image* img, char** json);
/* Same, for a raw descriptor of the bundle's descriptor length. */
FWLBP_API fwlbp_status fwlbp_model_predict_descriptor(const fwlbp_model* model,
                                                      const double* descriptor,
                                                      size_t length, char** json);
/* Copy of the bundle's configuration. */
FWLBP_API fwlbp_status fwlbp_model_config(const fwlbp_model* model, fwlbp_config** out);

/* ---- evaluation ---- */

/* Report JSON and, if table is non-NULL, a plain-text summary. */
FWLBP_API fwlbp_status fwlbp_eval_cv(const fwlbp_dataset* ds, const fwlbp_config* cfg,
                                     unsigned jobs, char** json, char** table);
/* JSON array of {"snr_db", "report"}. */
FWLBP_API fwlbp_status fwlbp_eval_noise(const fwlbp_dataset* ds, const fwlbp_config* cfg,
                                        const double* snr_db, size_t count,
                                        unsigned jobs, char** json);
/* JSON array of {"r_max", "report"} or {"r_max", "error"}. */
FWLBP_API fwlbp_status fwlbp_eval_rmax(const fwlbp_dataset* ds, const fwlbp_config* cfg,
                                       const int* r_max, size_t count, unsigned jobs,
                                       char** json);
/* CSV: transform,param,chi2_fwlbp,chi2_lbp. */
FWLBP_API fwlbp_status fwlbp_eval_invariance(const fwlbp_image* img,
                                             const fwlbp_config* cfg, char** csv);

/* ---- synthetic textures ---- */

/* kind: sinusoid, checker, fractal_noise or blob; params_json may be NULL. */
FWLBP_API fwlbp_status fwlbp_synth_texture(const char* kind, const char* params_json,
                                           size_t size, uint64_t seed,
                                           fwlbp_image** out);
/* Writes a dataset tree of 16-bit PGMs plus manifest.json under out_dir.
 * spec_json is a corpus description or a previous manifest (whose recorded
 * samples are then regenerated exactly). */
FWLBP_API fwlbp_status fwlbp_synth_corpus(const char* spec_json, const char* out_dir,
                                          int force, unsigned jobs, char** manifest);

#ifdef __cplusplus
}
#endif

#endif /* FWLBP_FWLBP_H_ */
