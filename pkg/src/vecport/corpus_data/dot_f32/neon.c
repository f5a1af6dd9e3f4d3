#include <arm_neon.h>
#include <stddef.h>

float dot_f32(const float *a, const float *b, size_t n) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float32x4_t va = vld1q_f32(a + i);
        float32x4_t vb = vld1q_f32(b + i);
        acc = vmlaq_f32(acc, va, vb);
    }
    float sum = vaddvq_f32(acc);
    for (; i < n; i++) {
        sum += a[i] * b[i];
    }
    return sum;
}
