#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

void mulh_s16(const int16_t *a, const int16_t *b, int16_t *dst, size_t n) {
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e16m2(n);
        vint16m2_t va = __riscv_vle16_v_i16m2(a, vl);
        vint16m2_t vb = __riscv_vle16_v_i16m2(b, vl);
        vint16m2_t vh = __riscv_vmulh_vv_i16m2(va, vb, vl);
        __riscv_vse16_v_i16m2(dst, vh, vl);
        a += vl;
        b += vl;
        dst += vl;
        n -= vl;
    }
}
