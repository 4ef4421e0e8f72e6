#pragma once

#include <span>
#include <vector>

namespace fvol {

struct JumpEvent {
    double time = 0.0;
    double size = 0.0;
};

/// Exact (off-grid) jump times and sizes of a path on [-pi, pi].
/// Times are strictly increasing and sizes are nonzero.
class JumpRecord {
public:
    JumpRecord() = default;
    explicit JumpRecord(std::vector<JumpEvent> events);

    std::span<const JumpEvent> events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    /// Sum of squared jump sizes.
    double quadratic_variation() const;

    /// Squared size of the jump at exactly t, 0 when there is none.
    double squared_jump_at(double t) const;

private:
    std::vector<JumpEvent> events_;
};

}  // namespace fvol
