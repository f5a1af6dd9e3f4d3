#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

/* Nearest-neighbor 2x horizontal upsample: dst[2i] = dst[2i+1] = src[i]. */
void upsample2x_u8(const uint8_t *src, uint8_t *dst, size_t n) {
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t s = vld1q_u8(src + i);
        uint8x16x2_t z = vzipq_u8(s, s);
        vst1q_u8(dst + 2 * i, z.val[0]);
        vst1q_u8(dst + 2 * i + 16, z.val[1]);
    }
    for (; i < n; i++) {
        dst[2 * i] = src[i];
        dst[2 * i + 1] = src[i];
    }
}
