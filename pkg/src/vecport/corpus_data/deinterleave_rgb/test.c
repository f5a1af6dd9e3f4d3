#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void deinterleave_rgb_u8(const uint8_t *rgb, uint8_t *r, uint8_t *g, uint8_t *b, size_t n);

static uint32_t rng_state = 0x0badcafeu;
static uint32_t rng_next(void) {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 17;
    rng_state ^= rng_state << 5;
    return rng_state;
}

static int check(size_t n) {
    uint8_t *rgb = malloc(3 * n + 1);
    uint8_t *r = malloc(n + 1);
    uint8_t *g = malloc(n + 1);
    uint8_t *b = malloc(n + 1);
    if (!rgb || !r || !g || !b) return 2;
    for (size_t i = 0; i < 3 * n; i++) rgb[i] = (uint8_t)rng_next();
    r[n] = g[n] = b[n] = 0x77;
    deinterleave_rgb_u8(rgb, r, g, b, n);
    int rc = 0;
    for (size_t i = 0; i < n; i++) {
        if (r[i] != rgb[3 * i] || g[i] != rgb[3 * i + 1] || b[i] != rgb[3 * i + 2]) {
            printf("mismatch at n=%zu i=%zu\n", n, i);
            rc = 1;
            break;
        }
    }
    if (rc == 0 && (r[n] != 0x77 || g[n] != 0x77 || b[n] != 0x77)) {
        printf("overwrote past the end at n=%zu\n", n);
        rc = 1;
    }
    free(rgb); free(r); free(g); free(b);
    return rc;
}

int main(void) {
    size_t sizes[] = {0, 1, 2, 5, 15, 16, 17, 31, 32, 33, 64, 100, 999};
    for (size_t k = 0; k < sizeof(sizes) / sizeof(sizes[0]); k++) {
        if (check(sizes[k]) != 0) return 1;
    }
    printf("ok\n");
    return 0;
}
