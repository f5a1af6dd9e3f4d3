#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

void sat_add_u8(const uint8_t *a, const uint8_t *b, uint8_t *dst, size_t n) {
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t va = vld1q_u8(a + i);
        uint8x16_t vb = vld1q_u8(b + i);
        vst1q_u8(dst + i, vqaddq_u8(va, vb));
    }
    for (; i < n; i++) {
        unsigned s = (unsigned)a[i] + (unsigned)b[i];
        dst[i] = (uint8_t)(s > 255u ? 255u : s);
    }
}
