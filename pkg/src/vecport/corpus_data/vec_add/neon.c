#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

void vec_add_s32(const int32_t *a, const int32_t *b, int32_t *c, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        int32x4_t va = vld1q_s32(a + i);
        int32x4_t vb = vld1q_s32(b + i);
        vst1q_s32(c + i, vaddq_s32(va, vb));
    }
    for (; i < n; i++) {
        c[i] = a[i] + b[i];
    }
}
