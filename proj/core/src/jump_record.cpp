#include "fvol/jump_record.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fvol/partition.hpp"

namespace fvol {

JumpRecord::JumpRecord(std::vector<JumpEvent> events) : events_(std::move(events)) {
    for (std::size_t i = 0; i < events_.size(); ++i) {
        const auto& e = events_[i];
        if (!(e.time >= -kPi && e.time <= kPi)) {
            throw std::invalid_argument("JumpRecord: jump time outside [-pi, pi] at index " + std::to_string(i));
        }
        if (e.size == 0.0 || !std::isfinite(e.size)) {
            throw std::invalid_argument("JumpRecord: jump size must be finite and nonzero at index " +
                                        std::to_string(i));
        }
        if (i > 0 && !(events_[i - 1].time < e.time)) {
            throw std::invalid_argument("JumpRecord: jump times not strictly increasing at index " +
                                        std::to_string(i));
        }
    }
}

double JumpRecord::quadratic_variation() const {
    double sum = 0.0;
    for (const auto& e : events_) sum += e.size * e.size;
    return sum;
}

double JumpRecord::squared_jump_at(double t) const {
    auto it = std::lower_bound(events_.begin(), events_.end(), t,
                               [](const JumpEvent& e, double x) { return e.time < x; });
    if (it != events_.end() && it->time == t) return it->size * it->size;
    return 0.0;
}

}  // namespace fvol
