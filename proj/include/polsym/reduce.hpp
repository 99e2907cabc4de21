#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace polsym {

// Deterministic reductions. Terms are summed in fixed-size blocks with
// Neumaier compensation, and the block partials are combined serially in
// block order. The block shape does not depend on the thread count, so the
// result is bit-identical for any OMP_NUM_THREADS.

inline constexpr std::size_t kReduceBlock = 2048;

/// Compensated running sum.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (abs_ge(sum_, x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }
    double sum() const { return sum_; }
    double compensation() const { return comp_; }

private:
    static bool abs_ge(double a, double b) { return (a < 0 ? -a : a) >= (b < 0 ? -b : b); }
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double deterministic_sum(std::span<const double> terms);

/// Sums term(i) for i in [0, n) with the blocked schedule above; term must
/// be safe to call concurrently.
template <typename Term>
double deterministic_sum(std::size_t n, Term&& term) {
    const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
    // Each block keeps its running sum and compensation separately; folding
    // them early would round the compensation away against a large sum.
    std::vector<double> partial(2 * blocks, 0.0);
    const auto nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < nb; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kReduceBlock;
        const std::size_t end = begin + kReduceBlock < n ? begin + kReduceBlock : n;
        NeumaierSum s;
        for (std::size_t i = begin; i < end; ++i) s.add(term(i));
        partial[2 * static_cast<std::size_t>(b)] = s.sum();
        partial[2 * static_cast<std::size_t>(b) + 1] = s.compensation();
    }
    NeumaierSum total;
    for (std::size_t b = 0; b < blocks; ++b) total.add(partial[2 * b]);
    for (std::size_t b = 0; b < blocks; ++b) total.add(partial[2 * b + 1]);
    return total.value();
}

}  // namespace polsym
