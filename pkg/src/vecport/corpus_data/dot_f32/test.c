#include <math.h>
#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

float dot_f32(const float *a, const float *b, size_t n);

static uint32_t rng_state = 0xdeadbeefu;
static uint32_t rng_next(void) {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 17;
    rng_state ^= rng_state << 5;
    return rng_state;
}

static int check(size_t n) {
    float *a = malloc((n ? n : 1) * sizeof(float));
    float *b = malloc((n ? n : 1) * sizeof(float));
    if (!a || !b) return 2;
    double ref = 0.0;
    for (size_t i = 0; i < n; i++) {
        a[i] = ((int32_t)(rng_next() % 2000) - 1000) / 128.0f;
        b[i] = ((int32_t)(rng_next() % 2000) - 1000) / 128.0f;
        ref += (double)a[i] * (double)b[i];
    }
    float got = dot_f32(a, b, n);
    /* summation order is implementation-defined: allow relative slack */
    double tol = 1e-3 * (fabs(ref) > 1.0 ? fabs(ref) : 1.0);
    int rc = 0;
    if (fabs((double)got - ref) > tol) {
        printf("mismatch at n=%zu: got %.6f want %.6f\n", n, got, ref);
        rc = 1;
    }
    free(a); free(b);
    return rc;
}

int main(void) {
    size_t sizes[] = {0, 1, 3, 4, 5, 7, 8, 9, 15, 16, 17, 64, 100, 1000};
    for (size_t k = 0; k < sizeof(sizes) / sizeof(sizes[0]); k++) {
        if (check(sizes[k]) != 0) return 1;
    }
    printf("ok\n");
    return 0;
}
