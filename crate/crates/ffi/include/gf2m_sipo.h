#ifndef GF2M_SIPO_H
#define GF2M_SIPO_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Gf2mStatus {
  GF2M_STATUS_OK = 0,
  GF2M_STATUS_NULL_POINTER = 1,
  GF2M_STATUS_INVALID_UTF8 = 2,
  GF2M_STATUS_INVALID_ARGUMENT = 3,
  GF2M_STATUS_FIELD_ERROR = 4,
  GF2M_STATUS_NETLIST_ERROR = 5,
  GF2M_STATUS_COST_ERROR = 6,
  GF2M_STATUS_PANIC = 7,
} Gf2mStatus;

typedef enum Gf2mEngine {
  GF2M_ENGINE_REFERENCE = 0,
  GF2M_ENGINE_SERIAL = 1,
  GF2M_ENGINE_SERIAL_NAND = 2,
  GF2M_ENGINE_GATE = 3,
} Gf2mEngine;

typedef enum Gf2mArch {
  GF2M_ARCH_PROPOSED = 0,
  GF2M_ARCH_REF29 = 1,
  GF2M_ARCH_REF25 = 2,
  GF2M_ARCH_REF8 = 3,
  GF2M_ARCH_REF22 = 4,
  GF2M_ARCH_REF33 = 5,
} Gf2mArch;

/**
 * Opaque irreducible-polynomial handle.
 */
typedef struct Gf2mField Gf2mField;

/**
 * Opaque netlist handle.
 */
typedef struct Gf2mNetlist Gf2mNetlist;

/**
 * Gate census of a netlist.
 */
typedef struct Gf2mCensus {
  size_t and2;
  size_t nand2;
  size_t nand3;
  size_t xor_xnor;
  size_t mux21;
  size_t dff;
} Gf2mCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *gf2m_last_error(void);

/**
 * Field with a NIST binary polynomial: "b163", "B-233", ...
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum Gf2mStatus gf2m_field_nist(const char *name, struct Gf2mField **out);

/**
 * Field GF(2^m) with reduction vector f(x) - x^m given in hex.
 *
 * # Safety
 * `reduction_hex` must be a NUL-terminated string; `out` must be writable.
 */
enum Gf2mStatus gf2m_field_new(size_t m, const char *reduction_hex, struct Gf2mField **out);

/**
 * Degree m of the field, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live handle.
 */
size_t gf2m_field_degree(const struct Gf2mField *field);

/**
 * # Safety
 * `field` must be null or a handle not yet freed.
 */
void gf2m_field_free(struct Gf2mField *field);

/**
 * Multiplies two hex-encoded elements. The product is written to `out` as
 * a lowercase hex string owned by the caller.
 *
 * # Safety
 * `field` must be a live handle, `a_hex`/`b_hex` NUL-terminated strings and
 * `out` writable.
 */
enum Gf2mStatus gf2m_mul_hex(const struct Gf2mField *field,
                             const char *a_hex,
                             const char *b_hex,
                             enum Gf2mEngine engine,
                             char **out);

/**
 * Multiplies elements of at most 64 bits given as integers (bit i is the
 * coefficient of x^i).
 *
 * # Safety
 * `field` must be a live handle and `out` writable.
 */
enum Gf2mStatus gf2m_mul_u64(const struct Gf2mField *field,
                             uint64_t a,
                             uint64_t b,
                             enum Gf2mEngine engine,
                             uint64_t *out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void gf2m_string_free(char *s);

/**
 * Builds the gate-level multiplier for `field`.
 *
 * # Safety
 * `field` must be a live handle and `out` writable.
 */
enum Gf2mStatus gf2m_netlist_build(const struct Gf2mField *field, struct Gf2mNetlist **out);

/**
 * # Safety
 * `netlist` must be a live handle and `out` writable.
 */
enum Gf2mStatus gf2m_netlist_census(const struct Gf2mNetlist *netlist, struct Gf2mCensus *out);

/**
 * Register-to-register critical path in picoseconds under the default
 * gate delays.
 *
 * # Safety
 * `netlist` must be a live handle and `out` writable.
 */
enum Gf2mStatus gf2m_netlist_critical_path_ps(const struct Gf2mNetlist *netlist, uint64_t *out);

/**
 * Netlist as a JSON document, owned by the caller.
 *
 * # Safety
 * `netlist` must be a live handle and `out` writable.
 */
enum Gf2mStatus gf2m_netlist_json(const struct Gf2mNetlist *netlist, char **out);

/**
 * # Safety
 * `netlist` must be null or a handle not yet freed.
 */
void gf2m_netlist_free(struct Gf2mNetlist *netlist);

/**
 * Closed-form transistor count of `arch` at degree `m` under the default
 * gate costs. `strict_nand3` prices 3-input NANDs separately.
 *
 * # Safety
 * `out` must be writable.
 */
enum Gf2mStatus gf2m_transistor_count(enum Gf2mArch arch,
                                      size_t m,
                                      bool strict_nand3,
                                      uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GF2M_SIPO_H */
