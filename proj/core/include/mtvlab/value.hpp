#pragma once

#include <string>

namespace mtvlab {

enum class Method { direct_tail, accelerated, closed_form, quadrature };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::direct_tail: return "direct-tail";
        case Method::accelerated: return "accelerated";
        case Method::closed_form: return "closed-form";
        case Method::quadrature: return "quadrature";
    }
    return "?";
}

// Numeric result with an error estimate. The estimate is exactly that -- an
// estimate -- except for method direct_tail, where it is the analytic tail
// bound (with its safety factor).
struct ValueWithError {
    double value = 0.0;
    double error_estimate = 0.0;
    long long terms_used = 0;
    Method method = Method::closed_form;
};

}  // namespace mtvlab
