#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

int16_t max_s16(const int16_t *src, size_t n) {
    vint16m1_t acc = __riscv_vmv_s_x_i16m1(INT16_MIN, 1);
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e16m2(n);
        vint16m2_t v = __riscv_vle16_v_i16m2(src, vl);
        acc = __riscv_vredmax_vs_i16m2_i16m1(v, acc, vl);
        src += vl;
        n -= vl;
    }
    return __riscv_vmv_x_s_i16m1_i16(acc);
}
