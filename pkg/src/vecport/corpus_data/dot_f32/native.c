#include <riscv_vector.h>
#include <stddef.h>

float dot_f32(const float *a, const float *b, size_t n) {
    size_t vlmax = __riscv_vsetvlmax_e32m2();
    vfloat32m2_t acc = __riscv_vfmv_v_f_f32m2(0.0f, vlmax);
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e32m2(n);
        vfloat32m2_t va = __riscv_vle32_v_f32m2(a, vl);
        vfloat32m2_t vb = __riscv_vle32_v_f32m2(b, vl);
        acc = __riscv_vfmacc_vv_f32m2_tu(acc, va, vb, vl);
        a += vl;
        b += vl;
        n -= vl;
    }
    vfloat32m1_t zero = __riscv_vfmv_s_f_f32m1(0.0f, 1);
    vfloat32m1_t red = __riscv_vfredusum_vs_f32m2_f32m1(acc, zero, vlmax);
    return __riscv_vfmv_f_s_f32m1_f32(red);
}
