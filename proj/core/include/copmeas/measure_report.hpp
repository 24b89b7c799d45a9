#pragma once

#include <string>

namespace copmeas {

enum class CopulaFamilyTag { Pi, Min, W, Bernstein, Shuffle };
enum class MeasureSource { ClosedForm, Oracle };

/// Bundle of the five association measures for one copula, tagged with the
/// family it came from and whether it was computed in closed form or by the
/// numeric oracle.
struct MeasureReport {
    double rho_s = 0.0;
    double tau = 0.0;
    double xi = 0.0;
    double lambda_lower = 0.0;
    double lambda_upper = 0.0;
    CopulaFamilyTag family = CopulaFamilyTag::Pi;
    MeasureSource source = MeasureSource::ClosedForm;
};

inline std::string family_name(CopulaFamilyTag tag) {
    switch (tag) {
        case CopulaFamilyTag::Pi: return "pi";
        case CopulaFamilyTag::Min: return "min";
        case CopulaFamilyTag::W: return "w";
        case CopulaFamilyTag::Bernstein: return "bernstein";
        case CopulaFamilyTag::Shuffle: return "shuffle";
    }
    return "?";
}

inline std::string source_name(MeasureSource source) {
    return source == MeasureSource::ClosedForm ? "closed-form" : "oracle";
}

}  // namespace copmeas
