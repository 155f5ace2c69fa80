/* libwne - W-Nash-equilibrium realizability and verification for
 * deterministic multi-agent systems with reachability goals.
 *
 * All functions exchange documents as text in the library's line-oriented
 * formats (emas, cmas, etrans, ctrans, game, dtm, atm, verdict, report).
 * Every call returns a status code; on failure wne_last_error() on the same
 * engine handle describes what went wrong. Strings returned through out
 * parameters are owned by the caller and released with wne_string_free().
 */

#ifndef WNE_H
#define WNE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef WNE_API
#if defined(_WIN32)
#define WNE_API
#else
#define WNE_API __attribute__((visibility("default")))
#endif
#endif

enum wne_status {
    WNE_OK = 0,
    WNE_ERR_SYNTAX = 1,     /* malformed document text */
    WNE_ERR_VALIDATION = 2, /* well-formed but violates an invariant */
    WNE_ERR_CAP = 3,        /* an unfolding exceeded its row cap */
    WNE_ERR_USAGE = 4,      /* bad arguments to the call itself */
    WNE_ERR_INTERNAL = 5
};

typedef struct wne_engine wne_engine;

WNE_API wne_engine* wne_engine_new(void);
WNE_API void wne_engine_free(wne_engine* eng);

/* Message for the most recent failing call on this engine; empty string
 * when the last call succeeded. The pointer stays valid until the next
 * call on the same engine. */
WNE_API const char* wne_last_error(const wne_engine* eng);

WNE_API const char* wne_version(void);

WNE_API void wne_string_free(char* s);
WNE_API void wne_string_array_free(char** strings, size_t count);

/* Parses any document and returns its canonical serialization and kind. */
WNE_API int wne_canonicalize(wne_engine* eng, const char* text, char** out_text,
                             char** out_kind);

/* Validates a document of any kind. *out_valid is 1/0; the verdict document
 * lists each violation. Syntax errors fail the call instead. */
WNE_API int wne_validate(wne_engine* eng, const char* text, int* out_valid,
                         char** out_verdict);

/* Expands a circuit system document (cmas) into the explicit form (emas).
 * cap_rows <= 0 selects the default cap of 2^24 table rows. */
WNE_API int wne_unfold(wne_engine* eng, const char* cmas_text, int64_t cap_rows,
                       char** out_emas);

/* Solves a reachability game. *out_agent0_wins is 1/0 when the game has an
 * initial state and -1 otherwise; the verdict carries the full partition. */
WNE_API int wne_solve_game(wne_engine* eng, const char* game_text, int* out_agent0_wins,
                           char** out_verdict);

/* Decides W-NE realizability for an emas or cmas document. The coalition is
 * "none" or sorted comma-separated agent indices, e.g. "0,2". *out_answer is
 * 1 for YES, 0 for NO. with_certificate adds the checkable receipts to the
 * verdict document. */
WNE_API int wne_realize(wne_engine* eng, const char* system_text, const char* coalition,
                        int64_t cap_rows, int with_certificate, int* out_answer,
                        char** out_verdict);

/* Verifies a strategy profile. The profile documents must all be etrans for
 * an emas system or all ctrans for a cmas system, one per agent in agent
 * order. *out_answer is 1 when the profile is a W-NE. */
WNE_API int wne_verify(wne_engine* eng, const char* system_text,
                       const char* const* profile_texts, size_t profile_count,
                       const char* coalition, int* out_answer, char** out_verdict);

/* Test-case generators. a3 turns a game into a two-agent system whose
 * empty-coalition verdict mirrors the game winner; a4 encodes alternating
 * machine acceptance as a circuit system; a6 and a7 encode deterministic
 * machine acceptance as a system plus a strategy profile. */
WNE_API int wne_gen_a3(wne_engine* eng, const char* game_text, char** out_emas);
WNE_API int wne_gen_a4(wne_engine* eng, const char* atm_text, uint32_t n, char** out_cmas);
WNE_API int wne_gen_a6(wne_engine* eng, const char* dtm_text, uint32_t n, char** out_emas,
                       char*** out_etrans, size_t* out_count);
WNE_API int wne_gen_a7(wne_engine* eng, const char* dtm_text, uint32_t n, char** out_cmas,
                       char** out_ctrans);

/* Runs the brute-force cross-validation suite. *out_passed is 1 when every
 * comparison agreed; the report document carries the tallies. */
WNE_API int wne_oracle(wne_engine* eng, uint64_t seed, uint32_t count, int* out_passed,
                       char** out_report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WNE_H */
