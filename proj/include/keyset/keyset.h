/*
 * Copyright 2026 The Keyset Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * keyset — matrix-based key predistribution with per-user key sets.
 *
 * A trusted authority derives a symmetric key matrix K = X * Y over Z_p.
 * Each user holds one row of X (secret) and one column of Y (public
 * identifier), and the pair (i, j) can independently compute K_ij. This
 * library extends the single key to an indexed key set generated by a
 * public family of circulant matrices R with R * R^T = w * I (mod p), and
 * implements two pairwise agreement protocols on top:
 *
 *   - aligned: one party announces a family index, both evaluate at it;
 *   - randomized: each party publishes a rotating subset of identifiers
 *     and rescales its raw key by personal scale factors, so no index is
 *     ever sent on the wire.
 *
 * All big integers cross this API as decimal strings so that the modulus
 * p may be arbitrarily large. Strings returned through `char **` out
 * parameters are heap-allocated; release them with ks_string_free().
 * Handles are opaque; every ks_*_free() accepts NULL.
 *
 * Functions return KS_OK on success. On failure they return a status code
 * and leave a human-readable explanation in ks_last_error() (thread-local,
 * valid until the next failing call on the same thread).
 */

#ifndef KEYSET_KEYSET_H
#define KEYSET_KEYSET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(KS_BUILD_SHARED)
#define KS_API __declspec(dllexport)
#else
#define KS_API __declspec(dllimport)
#endif
#else
#define KS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ks_status {
  KS_OK = 0,

  /* usage */
  KS_ERR_NULL_ARGUMENT = 1,
  KS_ERR_BAD_PARAMETER = 2,
  KS_ERR_PARSE = 3,

  /* arithmetic substrate */
  KS_ERR_NOT_PRIME = 10,
  KS_ERR_ZERO_NOT_INVERTIBLE = 11,
  KS_ERR_DIMENSION_MISMATCH = 12,
  KS_ERR_MODULUS_MISMATCH = 13,
  KS_ERR_NOT_SQUARE = 14,

  /* trusted authority */
  KS_ERR_NOT_SYMMETRIC = 20,
  KS_ERR_ZERO_SCALE = 21,
  KS_ERR_DEGENERATE = 22,
  KS_ERR_INDEX_OUT_OF_RANGE = 23,

  /* circulant family */
  KS_ERR_EMPTY_ROW = 30,
  KS_ERR_SHIFT_OUT_OF_RANGE = 31,
  KS_ERR_NOT_ORTHOGONAL = 32,
  KS_ERR_ZERO_WEIGHT = 33,
  KS_ERR_NO_SOLUTION = 34,
  KS_ERR_SINGULAR = 35,

  /* protocol */
  KS_ERR_UNKNOWN_INDEX = 40,
  KS_ERR_DUPLICATE_INDEX = 41,
  KS_ERR_EMPTY_SUBSET = 42,
  KS_ERR_EXPIRED_BUNDLE = 43,

  /* simulation & verification */
  KS_ERR_PROVISIONING_FAILED = 50,
  KS_ERR_LEAK_DETECTED = 51,
  KS_ERR_VERIFY_FAILED = 52,

  KS_ERR_INTERNAL = 99
} ks_status;

/* Library version, e.g. "0.1.0". Static storage, do not free. */
KS_API const char *ks_version(void);

/* Stable identifier for a status code, e.g. "KS_ERR_NOT_PRIME". */
KS_API const char *ks_status_name(ks_status status);

/* Detail message for the most recent failing call on this thread. */
KS_API const char *ks_last_error(void);

/* Releases a string allocated by this library. NULL is a no-op. */
KS_API void ks_string_free(char *s);

typedef struct ks_ta ks_ta;         /* trusted-authority material + R family  */
typedef struct ks_user ks_user;     /* one user's provisioned key set         */
typedef struct ks_bundle ks_bundle; /* published (index, identifier) subset   */
typedef struct ks_sim ks_sim;       /* finished simulation run                */

/* ------------------------------------------------------------------ */
/* Trusted authority                                                   */
/* ------------------------------------------------------------------ */

/*
 * Generates fresh X, Y with K = X * Y symmetric and every diagonal entry
 * nonzero. Deterministic for a fixed seed. `users >= 2`, `key_len >= 1`,
 * `p_dec` must parse to a prime >= 3. The R family is initialized to the
 * identity row only; see ks_ta_set_family_auto / ks_ta_set_family.
 */
KS_API ks_status ks_ta_generate(const char *p_dec, uint32_t users,
                                uint32_t key_len, uint64_t seed, ks_ta **out);

/*
 * Builds a bundle from externally supplied matrices. `x_json` is an n x m
 * row-major array of arrays of decimal strings, `y_json` m x n. Rejected
 * unless X * Y is symmetric with a nonzero diagonal.
 */
KS_API ks_status ks_ta_load(const char *p_dec, const char *x_json,
                            const char *y_json, ks_ta **out);

KS_API ks_status ks_ta_from_json(const char *json, ks_ta **out);
KS_API ks_status ks_ta_to_json(const ks_ta *ta, char **out_json);
KS_API void ks_ta_free(ks_ta *ta);

/*
 * Replaces the R family with `family_size` rows discovered deterministically
 * for this modulus and key length (row 1 is always the identity).
 */
KS_API ks_status ks_ta_set_family_auto(ks_ta *ta, uint32_t family_size);

/*
 * Replaces the R family with explicit first rows (JSON array of arrays of
 * decimal strings). The identity row is prepended when not supplied first.
 * Every row must satisfy the orthogonality condition R * R^T = w * I, w != 0.
 */
KS_API ks_status ks_ta_set_family(ks_ta *ta, const char *rows_json);

KS_API uint32_t ks_ta_users(const ks_ta *ta);
KS_API uint32_t ks_ta_key_len(const ks_ta *ta);
KS_API uint32_t ks_ta_family_size(const ks_ta *ta);
KS_API ks_status ks_ta_modulus(const ks_ta *ta, char **out_dec);

/* Key scale of `user` (1-based): the diagonal entry K_{user,user}. */
KS_API ks_status ks_ta_scale(const ks_ta *ta, uint32_t user, char **out_dec);

/* ------------------------------------------------------------------ */
/* Provisioning                                                        */
/* ------------------------------------------------------------------ */

/*
 * Expands user `user` (1-based) into its full key set over the bundle's R
 * family and records `common_index` as the node-local normalization index.
 * The common index never appears in published bundles.
 */
KS_API ks_status ks_provision(const ks_ta *ta, uint32_t user,
                              uint32_t common_index, ks_user **out);

KS_API ks_status ks_user_from_json(const char *json, ks_user **out);
KS_API ks_status ks_user_to_json(const ks_user *user, char **out_json);
KS_API void ks_user_free(ks_user *user);

KS_API uint32_t ks_user_index(const ks_user *user);
KS_API uint32_t ks_user_common_index(const ks_user *user);
KS_API uint32_t ks_user_entries(const ks_user *user);
KS_API ks_status ks_user_scale(const ks_user *user, uint32_t family_index,
                               char **out_dec);

/* ------------------------------------------------------------------ */
/* Publication                                                         */
/* ------------------------------------------------------------------ */

/*
 * Publishes the listed family indices (distinct, nonempty) with validity
 * window [valid_from, valid_until) in integer seconds. The bundle carries
 * only public identifiers — never secrets or scales.
 */
KS_API ks_status ks_publish(const ks_user *user, const uint32_t *indices,
                            size_t count, uint64_t valid_from,
                            uint64_t valid_until, ks_bundle **out);

/* Like ks_publish with a seeded-uniform random subset of `count` indices. */
KS_API ks_status ks_publish_random(const ks_user *user, uint32_t count,
                                   uint64_t valid_from, uint64_t valid_until,
                                   uint64_t seed, ks_bundle **out);

KS_API ks_status ks_bundle_from_json(const char *json, ks_bundle **out);
KS_API ks_status ks_bundle_to_json(const ks_bundle *bundle, char **out_json);
KS_API void ks_bundle_free(ks_bundle *bundle);
KS_API uint32_t ks_bundle_items(const ks_bundle *bundle);

/* ------------------------------------------------------------------ */
/* Pairwise agreement                                                  */
/* ------------------------------------------------------------------ */

/*
 * Randomized protocol: picks one peer item (seeded-uniform), computes the
 * raw key from the own secret at that index, then normalizes by the own
 * scales at the common index and at the chosen index. Both parties obtain
 * w_common * K_ij without exchanging index choices. The bundle must be
 * valid at `clock_now`. Any of the three out parameters may be NULL.
 */
KS_API ks_status ks_agree_randomized(const ks_user *user,
                                     const ks_bundle *peer,
                                     uint64_t choice_seed, uint64_t clock_now,
                                     uint32_t *chosen_index, char **raw_key,
                                     char **final_key);

/*
 * Aligned protocol: both parties evaluate at the announced family index,
 * which must be present in the peer bundle; the result is w_index * K_ij.
 */
KS_API ks_status ks_agree_aligned(const ks_user *user,
                                  uint32_t announced_index,
                                  const ks_bundle *peer, uint64_t clock_now,
                                  char **key);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */
/* ------------------------------------------------------------------ */

typedef struct ks_sim_config {
  const char *p_dec;        /* prime modulus, decimal                      */
  uint32_t users;           /* node count, >= 2                            */
  uint32_t key_len;         /* m                                           */
  uint32_t family_size;     /* R-family size incl. the identity row        */
  uint32_t subset_size;     /* published indices per node, 1..family_size  */
  uint64_t rotation_period; /* seconds between subset re-draws, >= 1       */
  uint32_t sessions;        /* pairwise sessions; 0 = one per node pair    */
  uint64_t seed;            /* master seed; the run is a pure function     */
} ks_sim_config;

/*
 * Runs the deterministic in-memory simulation: provisioning, periodic
 * subset publication on a virtual clock, and round-robin pairwise
 * randomized agreements with transcript capture.
 */
KS_API ks_status ks_simulate(const ks_sim_config *config, ks_sim **out);

KS_API ks_status ks_sim_report(const ks_sim *sim, char **out_text);

/* Line-delimited log: "<time> <sender> <receiver|*> <base64 payload>". */
KS_API ks_status ks_sim_transcript(const ks_sim *sim, char **out_text);

KS_API uint32_t ks_sim_sessions(const ks_sim *sim);
KS_API uint32_t ks_sim_agreed(const ks_sim *sim);

/*
 * Scans a transcript for secret material from this run: serialized secret
 * vectors, labeled scale values, and labeled session-key values. Audits
 * `transcript_text` when non-NULL, else the run's own transcript. Returns
 * KS_OK when clean; KS_ERR_LEAK_DETECTED stores the offending 0-based
 * event index in `leak_event` (when non-NULL).
 */
KS_API ks_status ks_sim_audit(const ks_sim *sim, const char *transcript_text,
                              uint64_t *leak_event);

/* Secret key vector of one simulated node, as a JSON array of decimals. */
KS_API ks_status ks_sim_secret_json(const ks_sim *sim, uint32_t user,
                                    uint32_t family_index, char **out_json);

/* Agreed session key for the node pair (i, j), if the pair ran a session. */
KS_API ks_status ks_sim_pair_key(const ks_sim *sim, uint32_t i, uint32_t j,
                                 char **out_dec);

KS_API void ks_sim_free(ks_sim *sim);

/* ------------------------------------------------------------------ */
/* Reference vectors                                                   */
/* ------------------------------------------------------------------ */

/*
 * Replays the built-in reference vectors for the worked 5-user example over
 * Z_11 (base matrices, the 3x3 solution table, the transformed matrices,
 * both users' key-set tables, and the randomized-protocol walkthrough).
 * Writes one line per check to `out_report`. Returns KS_OK when every check
 * passes, KS_ERR_VERIFY_FAILED otherwise (the report shows both values).
 *
 * `list_only` prints the checklist without executing. `use_published_w`
 * asserts the published solution-table weight for the a = 9 row (5) instead
 * of the value demanded by the defining relation (9); the table entry is a
 * known misprint, so this mode is expected to fail.
 */
KS_API ks_status ks_verify_reference(int list_only, int use_published_w,
                                     char **out_report);

#ifdef __cplusplus
}
#endif

#endif /* KEYSET_KEYSET_H */
