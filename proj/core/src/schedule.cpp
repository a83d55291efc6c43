#include "amsum/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "amsum/errors.hpp"

namespace amsum {

void validate_schedule(const DecaySchedule& s) {
    if (s.eps_min < 0.0 || s.eps_min > 1.0)
        throw ScheduleError("eps_min must lie in [0, 1], got " + std::to_string(s.eps_min));
    switch (s.kind) {
        case ScheduleKind::kLinear:
            if (s.c < 0.0)
                throw ScheduleError("linear schedule slope must be non-negative, got " +
                                    std::to_string(s.c));
            break;
        case ScheduleKind::kExponential:
            if (s.k > 1.0)
                throw ScheduleError("exponential schedule needs k <= 1 to decay, got " +
                                    std::to_string(s.k));
            if (s.k < 0.0)
                throw ScheduleError("exponential schedule needs k >= 0, got " +
                                    std::to_string(s.k));
            break;
        case ScheduleKind::kInverseSigmoid:
            if (s.k <= 0.0)
                throw ScheduleError("inverse sigmoid schedule needs k > 0, got " +
                                    std::to_string(s.k));
            break;
        case ScheduleKind::kConstant:
            break;
    }
}

double epsilon_at(const DecaySchedule& s, long long step) {
    validate_schedule(s);
    if (step < 0) throw ScheduleError("schedule step must be non-negative");
    const double i = static_cast<double>(step);
    double eps = 0.0;
    switch (s.kind) {
        case ScheduleKind::kLinear:
            eps = s.k - s.c * i;
            break;
        case ScheduleKind::kExponential:
            eps = std::pow(s.k, i);
            break;
        case ScheduleKind::kInverseSigmoid:
            eps = s.k / (s.k + std::exp(i / s.k));
            break;
        case ScheduleKind::kConstant:
            eps = s.k;
            break;
    }
    return std::clamp(eps, s.eps_min, 1.0);
}

ScheduleKind schedule_kind_from_name(const std::string& name) {
    if (name == "linear") return ScheduleKind::kLinear;
    if (name == "exponential" || name == "exp") return ScheduleKind::kExponential;
    if (name == "inverse-sigmoid" || name == "invsig") return ScheduleKind::kInverseSigmoid;
    if (name == "constant" || name == "const") return ScheduleKind::kConstant;
    throw ScheduleError("unknown schedule kind: " + name);
}

std::string schedule_kind_name(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::kLinear: return "linear";
        case ScheduleKind::kExponential: return "exponential";
        case ScheduleKind::kInverseSigmoid: return "inverse-sigmoid";
        case ScheduleKind::kConstant: return "constant";
    }
    return "unknown";
}

}  // namespace amsum
