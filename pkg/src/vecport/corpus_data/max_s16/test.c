#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

int16_t max_s16(const int16_t *src, size_t n);

static uint32_t rng_state = 0x1f2e3d4cu;
static uint32_t rng_next(void) {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 17;
    rng_state ^= rng_state << 5;
    return rng_state;
}

static int check(size_t n) {
    int16_t *src = malloc(n * sizeof(int16_t));
    if (!src) return 2;
    int16_t want = INT16_MIN;
    for (size_t i = 0; i < n; i++) {
        src[i] = (int16_t)rng_next();
        if (src[i] > want) want = src[i];
    }
    int16_t got = max_s16(src, n);
    int rc = 0;
    if (got != want) {
        printf("mismatch at n=%zu: got %d want %d\n", n, got, want);
        rc = 1;
    }
    free(src);
    return rc;
}

int main(void) {
    size_t sizes[] = {1, 2, 3, 7, 8, 9, 15, 16, 17, 31, 33, 100, 1000};
    for (size_t k = 0; k < sizeof(sizes) / sizeof(sizes[0]); k++) {
        if (check(sizes[k]) != 0) return 1;
    }
    printf("ok\n");
    return 0;
}
