#pragma once

namespace loopmode {

// Ai, Bi and first derivatives at one real argument.
// Invariant: ai*bip - aip*bi == 1/pi (Wronskian).
struct AiryValues {
    double ai;
    double bi;
    double aip;
    double bip;
};

// Maclaurin series (compensated double-double accumulation) for
// |x| <= kAirySwitch, standard asymptotic expansions beyond.  The switch
// is placed where the optimally truncated asymptotic series is below
// 1e-12 relative, so both methods meet the 1e-10 accuracy target there.
inline constexpr double kAirySwitch = 7.4;

// Certified argument range; outside it a std::domain_error is thrown.
inline constexpr double kAiryMinArg = -100.0;
inline constexpr double kAiryMaxArg = 100.0;

AiryValues airy_eval(double x);

}  // namespace loopmode
