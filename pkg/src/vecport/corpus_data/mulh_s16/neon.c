#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

/* High 16 bits of the 32-bit product, the building block of Q15 arithmetic. */
void mulh_s16(const int16_t *a, const int16_t *b, int16_t *dst, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        int16x8_t va = vld1q_s16(a + i);
        int16x8_t vb = vld1q_s16(b + i);
        int32x4_t lo = vmull_s16(vget_low_s16(va), vget_low_s16(vb));
        int32x4_t hi = vmull_s16(vget_high_s16(va), vget_high_s16(vb));
        int16x8_t out = vcombine_s16(vshrn_n_s32(lo, 16), vshrn_n_s32(hi, 16));
        vst1q_s16(dst + i, out);
    }
    for (; i < n; i++) {
        dst[i] = (int16_t)(((int32_t)a[i] * (int32_t)b[i]) >> 16);
    }
}
