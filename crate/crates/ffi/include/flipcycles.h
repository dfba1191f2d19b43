#ifndef FLIPCYCLES_H
#define FLIPCYCLES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum FcStatus {
  /**
   * Success.
   */
  FcOk = 0,
  /**
   * A required pointer argument was null.
   */
  FcNullArgument = 1,
  /**
   * Parameters outside the supported domain (order, r, m, kind).
   */
  FcInvalidArgument = 2,
  /**
   * The construction failed an internal consistency check.
   */
  FcConstructionFailed = 3,
  /**
   * The input text could not be parsed as an artifact.
   */
  FcParseFailed = 4,
  /**
   * The artifact replayed cleanly but failed verification.
   */
  FcVerificationFailed = 5,
  /**
   * A panic was caught at the language boundary.
   */
  FcInternalError = 6,
} FcStatus;

/**
 * Kinds of artifacts that can be generated.
 */
typedef enum FcKind {
  /**
   * Balanced Gray code on S_n, all transpositions.
   */
  FcPermAll = 0,
  /**
   * Balanced Gray code on S_n, cyclically adjacent transpositions.
   */
  FcPermCadj = 1,
  /**
   * 2- or 3-rainbow cycle under adjacent transpositions.
   */
  FcPermAdjRainbow = 2,
  /**
   * r-rainbow cycle on triangulations of the n-gon.
   */
  FcAssoc = 3,
} FcKind;

/**
 * Output text encodings.
 */
typedef enum FcFormat {
  FcText = 0,
  FcJson = 1,
} FcFormat;

/**
 * Opaque handle to a generated or parsed artifact.
 */
typedef struct FcArtifact FcArtifact;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Generates an artifact. Pass 0 for `r` or `m` when the parameter does not
 * apply. On success `*out` owns the new handle.
 */
enum FcStatus fc_generate(enum FcKind kind,
                          uint32_t n,
                          uint32_t r,
                          uint32_t m,
                          struct FcArtifact **out);

/**
 * Releases a handle. Null is ignored.
 */
void fc_artifact_free(struct FcArtifact *artifact);

/**
 * Number of flips in the artifact, or 0 for null.
 */
uint64_t fc_artifact_flip_count(const struct FcArtifact *artifact);

/**
 * Order parameter n of the artifact, or 0 for null.
 */
uint32_t fc_artifact_order(const struct FcArtifact *artifact);

/**
 * Color multiplicity r of the artifact; 0 when not applicable or null.
 */
uint32_t fc_artifact_multiplicity(const struct FcArtifact *artifact);

/**
 * Re-certifies the artifact with the verifier matching its kind.
 */
enum FcStatus fc_artifact_verify(const struct FcArtifact *artifact);

/**
 * Re-certifies the artifact and writes the full report to `*out` as an
 * owned string, regardless of pass or fail.
 */
enum FcStatus fc_artifact_verify_report(const struct FcArtifact *artifact, char **out);

/**
 * Serializes the artifact; `*out` receives an owned string.
 */
enum FcStatus fc_artifact_render(const struct FcArtifact *artifact,
                                 enum FcFormat format,
                                 char **out);

/**
 * Parses a serialized artifact (text or JSON, auto-detected). On success
 * `*out` owns the new handle.
 */
enum FcStatus fc_artifact_parse(const char *text, struct FcArtifact **out);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void fc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FLIPCYCLES_H */
