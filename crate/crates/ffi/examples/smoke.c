/* Build: cargo build -p otx-ffi
 *        cc crates/ffi/examples/smoke.c -Icrates/ffi/include \
 *           target/debug/libotx_ffi.a -lpthread -ldl -lm -o smoke */
#include <stdio.h>

#include "otx.h"

int main(void) {
    OtxPattern *p = NULL;
    if (otx_pattern_parse("4 5 6 11 10 9 3 2 1 7 8", &p) != OTX_STATUS_OK) {
        fprintf(stderr, "parse failed: %s\n", otx_last_error());
        return 1;
    }
    uint64_t num = 0, den = 0;
    size_t modality = 0;
    otx_pattern_over_rotation(p, &num, &den);
    otx_pattern_modality(p, &modality);
    printf("period %zu orp (%llu, %llu) modality %zu\n", otx_pattern_period(p),
           (unsigned long long)num, (unsigned long long)den, modality);

    OtxVerdict verdict;
    if (otx_verify_overtwist(p, 1, &verdict, NULL) == OTX_STATUS_OK)
        printf("verdict %d\n", (int)verdict);

    char *json = NULL;
    if (otx_iet_json(p, true, &json) == OTX_STATUS_OK) {
        printf("%s\n", json);
        otx_string_free(json);
    }
    otx_pattern_free(p);

    if (otx_pattern_parse("2 2", &p) != OTX_STATUS_OK)
        printf("rejected: %s\n", otx_last_error());
    return 0;
}
