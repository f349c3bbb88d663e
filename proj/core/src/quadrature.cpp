#include "darboux_lab/quadrature.hpp"

namespace dlab {
namespace {

template <typename T>
T simpson_impl(std::span<const T> y, double h) {
    const std::size_t n = y.size();
    if (n < 2) return T{};
    if (n == 2) return 0.5 * h * (y[0] + y[1]);
    const std::size_t intervals = n - 1;
    const std::size_t simpson_end = (intervals % 2 == 0) ? n - 1 : n - 4;
    T sum{};
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        sum += h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
    }
    if (intervals % 2 == 1) {
        const std::size_t k = n - 4;
        sum += 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
    }
    return sum;
}

}  // namespace

double simpson_samples(std::span<const double> y, double h) { return simpson_impl(y, h); }

std::complex<double> simpson_samples(std::span<const std::complex<double>> y, double h) {
    return simpson_impl(y, h);
}

}  // namespace dlab
