#pragma once

// Reduction kernels over double spans.
//
// Every variant accumulates in four interleaved lanes (element i goes to
// lane i % 4 for the blocked prefix), folds lanes as (l0 + l1) + (l2 + l3),
// then adds the remainder elements in order. The scalar reference follows
// the same order, so all variants return bitwise identical results.

#include <span>
#include <string_view>

namespace bdh::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    /// sum_i x[i]
    double (*sum)(std::span<const double> x);
    /// sum_i (first + i) * w[i]
    double (*index_moment)(std::span<const double> w, double first);
    /// sum_i (first + i - center)^2 * w[i]
    double (*centered_square_moment)(std::span<const double> w, double first, double center);
    /// max_i |a[i] - b[i]|, 0 for empty input; sizes must match.
    double (*max_abs_diff)(std::span<const double> a, std::span<const double> b);
};

/// Table for a specific ISA; throws std::runtime_error if the ISA was not
/// compiled in or is not supported by this CPU.
const KernelTable& table_for(Isa isa);

/// Best supported table. BDH_KERNELS=scalar in the environment forces the
/// scalar reference.
const KernelTable& active();

bool supported(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace bdh::kernels
