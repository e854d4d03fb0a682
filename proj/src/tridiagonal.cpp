#include "ratingfbp/tridiagonal.hpp"

#include <string>

namespace ratingfbp {

void thomas_solve(std::span<const double> lower,
                  std::span<const double> diag,
                  std::span<const double> upper,
                  std::span<const double> rhs,
                  std::span<double> solution,
                  std::span<double> scratch)
{
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n || solution.size() != n ||
        scratch.size() < n)
        throw std::invalid_argument("thomas_solve: size mismatch");
    if (n == 0)
        return;

    // scratch holds the modified upper band c'; solution holds d' until back substitution
    double pivot = diag[0];
    if (pivot == 0.0)
        throw ZeroPivotError(0, "thomas_solve: zero pivot in row 0");
    scratch[0] = n > 1 ? upper[0] / pivot : 0.0;
    solution[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * scratch[i - 1];
        if (pivot == 0.0)
            throw ZeroPivotError(i, "thomas_solve: zero pivot in row " + std::to_string(i));
        scratch[i] = (i + 1 < n) ? upper[i] / pivot : 0.0;
        solution[i] = (rhs[i] - lower[i] * solution[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;)
        solution[i] -= scratch[i] * solution[i + 1];
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys)
{
    std::vector<double> x(sys.size());
    std::vector<double> scratch(sys.size());
    thomas_solve(sys.lower, sys.diag, sys.upper, sys.rhs, x, scratch);
    return x;
}

}  // namespace ratingfbp
