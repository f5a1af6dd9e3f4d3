#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

void deinterleave_rgb_u8(const uint8_t *rgb, uint8_t *r, uint8_t *g, uint8_t *b, size_t n) {
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e8m2(n);
        vuint8m2x3_t pix = __riscv_vlseg3e8_v_u8m2x3(rgb, vl);
        vuint8m2_t vr = __riscv_vget_v_u8m2x3_u8m2(pix, 0);
        vuint8m2_t vg = __riscv_vget_v_u8m2x3_u8m2(pix, 1);
        vuint8m2_t vb = __riscv_vget_v_u8m2x3_u8m2(pix, 2);
        __riscv_vse8_v_u8m2(r, vr, vl);
        __riscv_vse8_v_u8m2(g, vg, vl);
        __riscv_vse8_v_u8m2(b, vb, vl);
        rgb += 3 * vl;
        r += vl;
        g += vl;
        b += vl;
        n -= vl;
    }
}
