#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <time.h>

float dot_f32(const float *a, const float *b, size_t n);

int main(void) {
    const size_t n = 4096;
    const int iters = 2000;
    float *a = malloc(n * sizeof(float));
    float *b = malloc(n * sizeof(float));
    if (!a || !b) return 2;
    for (size_t i = 0; i < n; i++) {
        a[i] = (float)(i % 251) * 0.25f;
        b[i] = (float)(i % 127) * 0.5f;
    }
    volatile float sink = dot_f32(a, b, n); /* warm up */
    struct timespec t0, t1;
    clock_gettime(CLOCK_MONOTONIC, &t0);
    for (int r = 0; r < iters; r++) {
        sink += dot_f32(a, b, n);
    }
    clock_gettime(CLOCK_MONOTONIC, &t1);
    long long ns = (long long)(t1.tv_sec - t0.tv_sec) * 1000000000LL
                 + (t1.tv_nsec - t0.tv_nsec);
    if (ns <= 0) ns = 1; /* coarse clocks must still yield a usable cost */
    printf("checksum %f\n", (double)sink);
    printf("%lld\n", ns);
    return 0;
}
