#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void upsample2x_u8(const uint8_t *src, uint8_t *dst, size_t n);

static uint32_t rng_state = 0x87654321u;
static uint32_t rng_next(void) {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 17;
    rng_state ^= rng_state << 5;
    return rng_state;
}

static int check(size_t n) {
    uint8_t *src = malloc(n + 1);
    uint8_t *dst = malloc(2 * n + 1);
    if (!src || !dst) return 2;
    for (size_t i = 0; i < n; i++) src[i] = (uint8_t)rng_next();
    dst[2 * n] = 0x3c;
    upsample2x_u8(src, dst, n);
    int rc = 0;
    for (size_t i = 0; i < n; i++) {
        if (dst[2 * i] != src[i] || dst[2 * i + 1] != src[i]) {
            printf("mismatch at n=%zu i=%zu: got (%u,%u) want %u\n",
                   n, i, dst[2 * i], dst[2 * i + 1], src[i]);
            rc = 1;
            break;
        }
    }
    if (rc == 0 && dst[2 * n] != 0x3c) {
        printf("overwrote past the end at n=%zu\n", n);
        rc = 1;
    }
    free(src); free(dst);
    return rc;
}

int main(void) {
    size_t sizes[] = {0, 1, 2, 3, 15, 16, 17, 31, 32, 33, 63, 65, 100, 999};
    for (size_t k = 0; k < sizeof(sizes) / sizeof(sizes[0]); k++) {
        if (check(sizes[k]) != 0) return 1;
    }
    printf("ok\n");
    return 0;
}
