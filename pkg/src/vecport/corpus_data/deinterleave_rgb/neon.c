#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

void deinterleave_rgb_u8(const uint8_t *rgb, uint8_t *r, uint8_t *g, uint8_t *b, size_t n) {
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16x3_t pix = vld3q_u8(rgb + 3 * i);
        vst1q_u8(r + i, pix.val[0]);
        vst1q_u8(g + i, pix.val[1]);
        vst1q_u8(b + i, pix.val[2]);
    }
    for (; i < n; i++) {
        r[i] = rgb[3 * i + 0];
        g[i] = rgb[3 * i + 1];
        b[i] = rgb[3 * i + 2];
    }
}
