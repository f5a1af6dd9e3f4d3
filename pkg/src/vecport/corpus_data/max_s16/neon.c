#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

int16_t max_s16(const int16_t *src, size_t n) {
    int16_t best = INT16_MIN;
    size_t i = 0;
    if (n >= 8) {
        int16x8_t vmax = vld1q_s16(src);
        i = 8;
        for (; i + 8 <= n; i += 8) {
            int16x8_t v = vld1q_s16(src + i);
            vmax = vmaxq_s16(vmax, v);
        }
        best = vmaxvq_s16(vmax);
    }
    for (; i < n; i++) {
        if (src[i] > best) best = src[i];
    }
    return best;
}
