/*
 * Copyright 2026 The pricetree Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libpricetree.
 *
 * Every fallible call returns a pt_status. On failure, pt_last_error()
 * returns a message for the calling thread that stays valid until that
 * thread's next pt_* call. Strings returned through char** parameters are
 * owned by the caller and released with pt_string_free. Handles are released
 * with their matching *_free function; passing NULL to a free function is a
 * no-op.
 */

#ifndef PRICETREE_PRICETREE_H_
#define PRICETREE_PRICETREE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PT_API __declspec(dllexport)
#else
#define PT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pt_status {
  PT_OK = 0,
  PT_ERR_INVALID_CONFIG = 1,
  PT_ERR_PARSE = 2,
  PT_ERR_CERTIFICATION = 3,
  PT_ERR_NOT_FORWARD_SOLVABLE = 4,
  PT_ERR_TRANSPORT = 5,
  PT_ERR_IO = 6,
  PT_ERR_INTERNAL = 7,
  PT_ERR_INVALID_ARGUMENT = 8,
  PT_ERR_NOT_FOUND = 9
} pt_status;

/* A list of problem instances (answerable/unanswerable pairs). */
typedef struct pt_dataset pt_dataset;
/* A list of scored model responses. */
typedef struct pt_records pt_records;

PT_API const char* pt_version(void);
PT_API const char* pt_status_name(pt_status status);
PT_API const char* pt_last_error(void);
PT_API void pt_string_free(char* s);

/* ---- generation ---------------------------------------------------------- */

/* Generates from a key = value config file. seed_override may be NULL.
 * threads == 0 uses the hardware concurrency. */
PT_API pt_status pt_generate_from_config_file(const char* path, const uint64_t* seed_override,
                                              unsigned threads, pt_dataset** out);
PT_API pt_status pt_generate_from_config_text(const char* text, const uint64_t* seed_override,
                                              unsigned threads, pt_dataset** out);
/* name: "table-main", "fig-structure" or "fig-cutdepth". */
PT_API pt_status pt_generate_preset(const char* name, uint64_t seed, unsigned threads,
                                    pt_dataset** out);

/* ---- datasets ------------------------------------------------------------ */

PT_API pt_status pt_dataset_load(const char* path, pt_dataset** out);
/* Certifies every instance first; writes nothing on certification failure. */
PT_API pt_status pt_dataset_save(const pt_dataset* dataset, const char* path);
PT_API size_t pt_dataset_size(const pt_dataset* dataset);
/* JSONL record of the instance at `index`. */
PT_API pt_status pt_dataset_instance_json(const pt_dataset* dataset, size_t index, char** out);
PT_API void pt_dataset_free(pt_dataset* dataset);

typedef struct pt_certification {
  size_t instances;
  size_t certified;
  size_t answerable;
  size_t unanswerable;
  size_t pairs_checked;
  size_t failures;
} pt_certification;

/* Fills *summary and, if report is non-NULL, a text report listing failures.
 * Returns PT_ERR_CERTIFICATION when any instance or pair fails. */
PT_API pt_status pt_dataset_certify(const pt_dataset* dataset, pt_certification* summary,
                                    char** report);

/* Pretty-prints one instance (tree, formulas, text, gold solution). */
PT_API pt_status pt_dataset_render(const pt_dataset* dataset, const char* id, char** out);

/* ---- evaluation ---------------------------------------------------------- */

typedef struct pt_eval_options {
  const char* profile_path; /* JSON model profile */
  const char* mode;         /* "zero" or "few" */
  const char* transport;    /* "live", "replay:<file>" or "mock:<name>" */
  const pt_dataset* pool;   /* few-shot exemplars; NULL derives a held-out pool */
  const char* variant;      /* "answerable", "unanswerable" or NULL for both */
  uint64_t seed;            /* few-shot exemplar draws */
  int concurrency;          /* > 0 overrides the profile's bound */
} pt_eval_options;

PT_API pt_status pt_evaluate(const pt_dataset* dataset, const pt_eval_options* options,
                             pt_records** out);

PT_API pt_status pt_records_load(const char* path, pt_records** out);
PT_API pt_status pt_records_save(const pt_records* records, const char* path);
PT_API size_t pt_records_size(const pt_records* records);
PT_API void pt_records_free(pt_records* records);

typedef struct pt_eval_summary {
  size_t records;
  size_t excluded; /* transport failures */
  size_t unanswerable;
  size_t hallucinations;
  size_t answerable;
  size_t correct;
  size_t false_unanswerable;
} pt_eval_summary;

PT_API pt_status pt_records_summary(const pt_records* records, pt_eval_summary* out);

/* Writes metrics.{txt,json,csv}, fig_structure.csv and fig_cutdepth.csv to
 * out_dir. group_keys is a comma-separated list such as "ansDepth,cutDepth".
 * table may be NULL; otherwise receives the text table. */
PT_API pt_status pt_report(const pt_records* records, const char* group_keys, const char* out_dir,
                           char** table);

#ifdef __cplusplus
}
#endif

#endif /* PRICETREE_PRICETREE_H_ */
