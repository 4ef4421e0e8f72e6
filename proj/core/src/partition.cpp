#include "fvol/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fvol {

Partition::Partition(std::vector<double> times, bool regular)
    : times_(std::move(times)), regular_(regular) {
    for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
        norm_ = std::max(norm_, times_[i + 1] - times_[i]);
    }
}

Partition Partition::regular(std::size_t cells) {
    if (cells == 0) {
        throw std::invalid_argument("Partition::regular: need at least one cell");
    }
    std::vector<double> times(cells + 1);
    const double h = kTwoPi / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        times[i] = -kPi + h * static_cast<double>(i);
    }
    times[cells] = kPi;
    return Partition(std::move(times), true);
}

Partition Partition::explicit_times(std::vector<double> times) {
    if (times.size() < 2) {
        throw std::invalid_argument("Partition::explicit_times: need at least two points");
    }
    if (times.front() != -kPi || times.back() != kPi) {
        throw std::invalid_argument("Partition::explicit_times: grid must start at -pi and end at pi");
    }
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (!(times[i] < times[i + 1])) {
            throw std::invalid_argument("Partition::explicit_times: times not strictly increasing at index " +
                                        std::to_string(i + 1));
        }
    }
    return Partition(std::move(times), false);
}

std::size_t Partition::left_index(double t) const {
    if (regular_) {
        const double h = kTwoPi / static_cast<double>(cells());
        auto guess = static_cast<std::ptrdiff_t>(std::floor((t + kPi) / h));
        guess = std::clamp<std::ptrdiff_t>(guess, 0, static_cast<std::ptrdiff_t>(cells()));
        auto i = static_cast<std::size_t>(guess);
        // the division can land one cell off near grid points
        while (i > 0 && times_[i] > t) --i;
        while (i + 1 < times_.size() && times_[i + 1] <= t) ++i;
        return i;
    }
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return 0;
    return static_cast<std::size_t>(std::distance(times_.begin(), it) - 1);
}

std::vector<double> linspace_grid(std::size_t k) {
    if (k == 0) throw std::invalid_argument("linspace_grid: need at least one point");
    if (k == 1) return {0.0};
    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(k - 1);
    }
    out.back() = kPi;
    return out;
}

}  // namespace fvol
