#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

void upsample2x_u8(const uint8_t *src, uint8_t *dst, size_t n) {
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e8m1(n);
        size_t vl2 = 2 * vl;
        vuint8m1_t s = __riscv_vle8_v_u8m1(src, vl);
        vuint8m2_t wide = __riscv_vlmul_ext_v_u8m1_u8m2(s);
        vuint8m2_t idx = __riscv_vid_v_u8m2(vl2);
        vuint8m2_t half = __riscv_vsrl_vx_u8m2(idx, 1, vl2);
        vuint8m2_t out = __riscv_vrgather_vv_u8m2(wide, half, vl2);
        __riscv_vse8_v_u8m2(dst, out, vl2);
        src += vl;
        dst += vl2;
        n -= vl;
    }
}
