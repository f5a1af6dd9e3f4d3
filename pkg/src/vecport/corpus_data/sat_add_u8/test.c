#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void sat_add_u8(const uint8_t *a, const uint8_t *b, uint8_t *dst, size_t n);

static uint32_t rng_state = 0x9e3779b9u;
static uint32_t rng_next(void) {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 17;
    rng_state ^= rng_state << 5;
    return rng_state;
}

static int check(size_t n) {
    uint8_t *a = malloc(n + 1);
    uint8_t *b = malloc(n + 1);
    uint8_t *dst = malloc(n + 1);
    if (!a || !b || !dst) return 2;
    for (size_t i = 0; i < n; i++) {
        a[i] = (uint8_t)rng_next();
        b[i] = (uint8_t)rng_next();
        dst[i] = 0;
    }
    dst[n] = 0xa5;
    sat_add_u8(a, b, dst, n);
    int rc = 0;
    for (size_t i = 0; i < n; i++) {
        unsigned s = (unsigned)a[i] + (unsigned)b[i];
        uint8_t want = (uint8_t)(s > 255u ? 255u : s);
        if (dst[i] != want) {
            printf("mismatch at n=%zu i=%zu: got %u want %u (a=%u b=%u)\n",
                   n, i, dst[i], want, a[i], b[i]);
            rc = 1;
            break;
        }
    }
    if (rc == 0 && dst[n] != 0xa5) {
        printf("overwrote past the end at n=%zu\n", n);
        rc = 1;
    }
    free(a); free(b); free(dst);
    return rc;
}

int main(void) {
    size_t sizes[] = {0, 1, 2, 15, 16, 17, 31, 32, 33, 63, 64, 65, 127, 129, 1000};
    for (size_t k = 0; k < sizeof(sizes) / sizeof(sizes[0]); k++) {
        if (check(sizes[k]) != 0) return 1;
    }
    printf("ok\n");
    return 0;
}
