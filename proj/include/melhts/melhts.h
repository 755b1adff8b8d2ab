// include/melhts/melhts.h

// Copyright 2026  The melhts Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MELHTS_MELHTS_H_
#define MELHTS_MELHTS_H_

#include <stddef.h>

#if defined(_WIN32)
#define MELHTS_API __declspec(dllexport)
#else
#define MELHTS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes; also the exit codes of the melhts tool. */
typedef enum {
  MELHTS_OK = 0,
  MELHTS_ERR_CONFIG = 1, /* bad argument, config key or value */
  MELHTS_ERR_IO = 2,     /* missing or unreadable/unwritable file */
  MELHTS_ERR_DATA = 3    /* corrupt file, OOV word, too little data, ... */
} melhts_status;

typedef struct melhts_config melhts_config;
typedef struct melhts_synth melhts_synth;
typedef struct melhts_mel melhts_mel;

/* Receives one key=value log line (no trailing newline). */
typedef void (*melhts_log_fn)(const char *line, void *user);

MELHTS_API const char *melhts_version(void);

/* Message of the last failed call on this thread; "" after success. */
MELHTS_API const char *melhts_last_error(void);

/* ---- configuration ---- */

/* Loads an INI config. |overrides| holds |num_overrides| "section.key=value"
   strings applied after the file. */
MELHTS_API melhts_status melhts_config_load(const char *path,
                                            const char *const *overrides,
                                            size_t num_overrides,
                                            melhts_config **out);
MELHTS_API void melhts_config_free(melhts_config *config);
MELHTS_API void melhts_config_set_log(melhts_config *config, melhts_log_fn fn,
                                      void *user);
/* The effective config in INI form; valid until the handle is freed. */
MELHTS_API const char *melhts_config_dump(melhts_config *config);

/* ---- batch commands ---- */

MELHTS_API melhts_status melhts_extract(const melhts_config *config);
MELHTS_API melhts_status melhts_train(const melhts_config *config);
MELHTS_API melhts_status melhts_segment(const melhts_config *config);
MELHTS_API melhts_status melhts_align(const melhts_config *config);

/* Writes the mel for |text| to |mel_path|, and audio to |wav_path| when it
   is not NULL. |seconds| (may be NULL) receives the text-to-mel time. */
MELHTS_API melhts_status melhts_synth_command(const melhts_config *config,
                                              const char *text,
                                              const char *mel_path,
                                              const char *wav_path,
                                              double *seconds);

/* With zero sources and targets, fits generated against extracted mels of
   the corpus. |lut_path| may be NULL for <work_dir>/heq.lut. */
MELHTS_API melhts_status melhts_heq_fit(const melhts_config *config,
                                        const char *const *sources,
                                        size_t num_sources,
                                        const char *const *targets,
                                        size_t num_targets,
                                        const char *lut_path);
MELHTS_API melhts_status melhts_heq_apply(const melhts_config *config,
                                          const char *lut_path,
                                          const char *mel_in,
                                          const char *mel_out);
/* |iterations| < 0 uses the configured Griffin-Lim count. */
MELHTS_API melhts_status melhts_invert(const melhts_config *config,
                                       const char *mel_in, const char *wav_out,
                                       int iterations);

MELHTS_API melhts_status melhts_eval_mel(const char *mel_a, const char *mel_b,
                                         double *l1);
MELHTS_API melhts_status melhts_eval_labels(const char *reference,
                                            const char *hypothesis,
                                            double tolerance_ms,
                                            double *percent);

/* ---- in-process synthesis ---- */

MELHTS_API melhts_status melhts_synth_open(const melhts_config *config,
                                           melhts_synth **out);
MELHTS_API void melhts_synth_free(melhts_synth *synth);
MELHTS_API melhts_status melhts_synth_text(const melhts_synth *synth,
                                           const char *text, melhts_mel **out);

/* ---- mel spectrograms ---- */

MELHTS_API melhts_status melhts_mel_read(const char *path, melhts_mel **out);
MELHTS_API melhts_status melhts_mel_write(const melhts_mel *mel,
                                          const char *path);
MELHTS_API void melhts_mel_free(melhts_mel *mel);
MELHTS_API size_t melhts_mel_frames(const melhts_mel *mel);
MELHTS_API size_t melhts_mel_filters(const melhts_mel *mel);
MELHTS_API double melhts_mel_frame_shift_ms(const melhts_mel *mel);
MELHTS_API int melhts_mel_sample_rate(const melhts_mel *mel);
/* Row-major frames x filters, valid until the handle is freed. */
MELHTS_API const double *melhts_mel_data(const melhts_mel *mel);
MELHTS_API melhts_status melhts_mel_l1(const melhts_mel *a,
                                       const melhts_mel *b, double *out);

#ifdef __cplusplus
}
#endif

#endif  /* MELHTS_MELHTS_H_ */
