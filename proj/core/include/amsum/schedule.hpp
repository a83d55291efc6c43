#ifndef AMSUM_SCHEDULE_HPP
#define AMSUM_SCHEDULE_HPP

#include <string>

namespace amsum {

enum class ScheduleKind { kLinear, kExponential, kInverseSigmoid, kConstant };

/// Probability of feeding the gold token at a given training step.
///   linear:           max(eps_min, k - c*i)
///   exponential:      k^i
///   inverse sigmoid:  k / (k + exp(i / k))
///   constant:         k
/// The result is clamped to [eps_min, 1].
struct DecaySchedule {
    ScheduleKind kind = ScheduleKind::kInverseSigmoid;
    double k = 70.0;
    double c = 0.0;      // linear slope only
    double eps_min = 0.05;
};

/// Throws ScheduleError for parameters that would make epsilon grow:
/// exponential needs k <= 1, linear needs c >= 0, inverse sigmoid needs
/// k > 0; eps_min must lie in [0, 1].
void validate_schedule(const DecaySchedule& schedule);

double epsilon_at(const DecaySchedule& schedule, long long step);

ScheduleKind schedule_kind_from_name(const std::string& name);
std::string schedule_kind_name(ScheduleKind kind);

}  // namespace amsum

#endif  // AMSUM_SCHEDULE_HPP
