#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

void vec_add_s32(const int32_t *a, const int32_t *b, int32_t *c, size_t n) {
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e32m2(n);
        vint32m2_t va = __riscv_vle32_v_i32m2(a, vl);
        vint32m2_t vb = __riscv_vle32_v_i32m2(b, vl);
        vint32m2_t vc = __riscv_vadd_vv_i32m2(va, vb, vl);
        __riscv_vse32_v_i32m2(c, vc, vl);
        a += vl;
        b += vl;
        c += vl;
        n -= vl;
    }
}
