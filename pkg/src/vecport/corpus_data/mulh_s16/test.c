#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void mulh_s16(const int16_t *a, const int16_t *b, int16_t *dst, size_t n);

static uint32_t rng_state = 0x6c078965u;
static uint32_t rng_next(void) {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 17;
    rng_state ^= rng_state << 5;
    return rng_state;
}

static int check(size_t n) {
    int16_t *a = malloc((n + 1) * sizeof(int16_t));
    int16_t *b = malloc((n + 1) * sizeof(int16_t));
    int16_t *dst = malloc((n + 1) * sizeof(int16_t));
    if (!a || !b || !dst) return 2;
    for (size_t i = 0; i < n; i++) {
        a[i] = (int16_t)rng_next();
        b[i] = (int16_t)rng_next();
        dst[i] = 0;
    }
    dst[n] = 0x5a5a & 0x7fff;
    mulh_s16(a, b, dst, n);
    int rc = 0;
    for (size_t i = 0; i < n; i++) {
        int16_t want = (int16_t)(((int32_t)a[i] * (int32_t)b[i]) >> 16);
        if (dst[i] != want) {
            printf("mismatch at n=%zu i=%zu: got %d want %d (a=%d b=%d)\n",
                   n, i, dst[i], want, a[i], b[i]);
            rc = 1;
            break;
        }
    }
    if (rc == 0 && dst[n] != (0x5a5a & 0x7fff)) {
        printf("overwrote past the end at n=%zu\n", n);
        rc = 1;
    }
    free(a); free(b); free(dst);
    return rc;
}

int main(void) {
    size_t sizes[] = {0, 1, 3, 7, 8, 9, 15, 16, 17, 31, 33, 100, 1000};
    for (size_t k = 0; k < sizeof(sizes) / sizeof(sizes[0]); k++) {
        if (check(sizes[k]) != 0) return 1;
    }
    printf("ok\n");
    return 0;
}
