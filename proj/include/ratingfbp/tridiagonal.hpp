#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace ratingfbp {

/// Row j reads lower[j] x[j-1] + diag[j] x[j] + upper[j] x[j+1] = rhs[j].
/// All four vectors have length n; lower[0] and upper[n-1] are ignored.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    explicit TridiagonalSystem(std::size_t n = 0)
        : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0) {}

    std::size_t size() const noexcept { return diag.size(); }
};

class ZeroPivotError : public std::runtime_error {
public:
    ZeroPivotError(std::size_t row, const std::string& what)
        : std::runtime_error(what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Thomas elimination without pivoting; O(n).
///
/// `scratch` must hold at least n values. Throws ZeroPivotError if a pivot
/// vanishes, which cannot happen for diagonally dominant systems.
void thomas_solve(std::span<const double> lower,
                  std::span<const double> diag,
                  std::span<const double> upper,
                  std::span<const double> rhs,
                  std::span<double> solution,
                  std::span<double> scratch);

std::vector<double> thomas_solve(const TridiagonalSystem& sys);

}  // namespace ratingfbp
