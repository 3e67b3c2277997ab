#include "parabolic/simd/kernels.hpp"

#include <atomic>

namespace parabolic::simd {

namespace {

struct Table {
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  double (*dot_reversed)(const double*, const double*, std::size_t) noexcept;
  void (*scale)(double, double*, std::size_t) noexcept;
  double (*max_abs)(const double*, std::size_t) noexcept;
};

constexpr Table scalar_table{scalar::axpy, scalar::dot, scalar::dot_reversed, scalar::scale,
                             scalar::max_abs};
#if defined(PARABOLIC_HAVE_AVX2)
constexpr Table avx2_table{avx2::axpy, avx2::dot, avx2::dot_reversed, avx2::scale, avx2::max_abs};
#endif

Isa probe() noexcept {
#if defined(PARABOLIC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
  return Isa::scalar;
}

const Table* table_for(Isa isa) noexcept {
#if defined(PARABOLIC_HAVE_AVX2)
  if (isa == Isa::avx2) return &avx2_table;
#else
  (void)isa;
#endif
  return &scalar_table;
}

std::atomic<const Table*>& current() noexcept {
  static std::atomic<const Table*> t{table_for(detected_isa())};
  return t;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() noexcept { return current().load() == &scalar_table ? Isa::scalar : Isa::avx2; }

Isa force_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  current().store(table_for(isa));
  return isa;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  current().load(std::memory_order_relaxed)->axpy(alpha, x, y, n);
}
double dot(const double* x, const double* y, std::size_t n) noexcept {
  return current().load(std::memory_order_relaxed)->dot(x, y, n);
}
double dot_reversed(const double* x, const double* y, std::size_t n) noexcept {
  return current().load(std::memory_order_relaxed)->dot_reversed(x, y, n);
}
void scale(double alpha, double* x, std::size_t n) noexcept {
  current().load(std::memory_order_relaxed)->scale(alpha, x, n);
}
double max_abs(const double* x, std::size_t n) noexcept {
  return current().load(std::memory_order_relaxed)->max_abs(x, n);
}

}  // namespace parabolic::simd
