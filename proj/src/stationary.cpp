#include "znr/stationary.hpp"

namespace znr {

Distribution<double> stationary_power(const FloatMatrix& p, double tol, std::size_t max_iter)
{
    if (!(tol > 0.0) || max_iter == 0) {
        fail(ErrorKind::validation, "stationary_power needs tol > 0 and max_iter > 0");
    }
    const std::size_t n = p.size();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    auto residual_of = [&](const std::vector<double>& v, std::vector<double>& image) {
        image = left_multiply<double>(v, p.entries());
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r += std::abs(image[i] - v[i]);
        }
        return r;
    };
    std::vector<double> image;
    double residual = residual_of(x, image);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        if (residual <= tol) {
            return Distribution<double>::normalized(std::move(x));
        }
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 0.5 * (x[i] + image[i]);
            total += x[i];
        }
        for (auto& v : x) {
            v /= total;
        }
        residual = residual_of(x, image);
    }
    if (residual <= tol) {
        return Distribution<double>::normalized(std::move(x));
    }
    throw MaxIterExceeded(std::move(x), residual, max_iter);
}

} // namespace znr
