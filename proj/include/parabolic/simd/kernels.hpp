#pragma once

// Double-precision inner loops of the float series and jet arithmetic.
//
// Each kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant. The variant is chosen once at startup from the CPU feature bits
// and may be pinned with force_isa() (the equivalence tests do this).

#include <cstddef>
#include <string_view>

namespace parabolic::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best instruction set this binary and this CPU both support.
Isa detected_isa() noexcept;

/// Currently selected variant.
Isa active_isa() noexcept;

/// Pins the dispatch; requesting an unsupported ISA falls back to scalar.
/// Returns the ISA actually selected.
Isa force_isa(Isa isa) noexcept;

/// y[i] += alpha * x[i] for i < n.
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;

/// sum_i x[i] * y[i].
double dot(const double* x, const double* y, std::size_t n) noexcept;

/// sum_i x[i] * y[n-1-i]; the Cauchy-product inner loop.
double dot_reversed(const double* x, const double* y, std::size_t n) noexcept;

/// x[i] *= alpha.
void scale(double alpha, double* x, std::size_t n) noexcept;

/// max_i |x[i]|.
double max_abs(const double* x, std::size_t n) noexcept;

namespace scalar {
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double dot_reversed(const double* x, const double* y, std::size_t n) noexcept;
void scale(double alpha, double* x, std::size_t n) noexcept;
double max_abs(const double* x, std::size_t n) noexcept;
}  // namespace scalar

#if defined(PARABOLIC_HAVE_AVX2)
namespace avx2 {
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double dot_reversed(const double* x, const double* y, std::size_t n) noexcept;
void scale(double alpha, double* x, std::size_t n) noexcept;
double max_abs(const double* x, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace parabolic::simd
