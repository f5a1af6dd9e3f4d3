#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void vec_add_s32(const int32_t *a, const int32_t *b, int32_t *c, size_t n);

static uint32_t rng_state = 0x12345678u;
static uint32_t rng_next(void) {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 17;
    rng_state ^= rng_state << 5;
    return rng_state;
}

static int check(size_t n) {
    int32_t *a = malloc((n + 1) * sizeof(int32_t));
    int32_t *b = malloc((n + 1) * sizeof(int32_t));
    int32_t *c = malloc((n + 1) * sizeof(int32_t));
    if (!a || !b || !c) return 2;
    for (size_t i = 0; i < n; i++) {
        a[i] = (int32_t)(rng_next() % 100000) - 50000;
        b[i] = (int32_t)(rng_next() % 100000) - 50000;
        c[i] = 0;
    }
    c[n] = (int32_t)0x5a5a5a5a; /* canary: detect overwrite past n */
    vec_add_s32(a, b, c, n);
    int rc = 0;
    for (size_t i = 0; i < n; i++) {
        if (c[i] != a[i] + b[i]) {
            printf("mismatch at n=%zu i=%zu: got %d want %d\n",
                   n, i, c[i], a[i] + b[i]);
            rc = 1;
            break;
        }
    }
    if (rc == 0 && c[n] != (int32_t)0x5a5a5a5a) {
        printf("overwrote past the end at n=%zu\n", n);
        rc = 1;
    }
    free(a); free(b); free(c);
    return rc;
}

int main(void) {
    size_t sizes[] = {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 31, 33, 64, 100, 1023};
    for (size_t k = 0; k < sizeof(sizes) / sizeof(sizes[0]); k++) {
        if (check(sizes[k]) != 0) return 1;
    }
    printf("ok\n");
    return 0;
}
