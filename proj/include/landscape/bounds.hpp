#pragma once

#include <string>
#include <vector>

#include "landscape/topology.hpp"

namespace landscape {

/// Pass/fail record for the counting bounds of an order-n potential:
///   per component   N <= 4n + k - 6   (asserted for n >= 2 only),
///   globally        M <= 2n - 2,
///   per component   k <= n + 1,
///   per component   S - M = k - 2.
/// With degenerate points present the verdicts are reported, not asserted.
struct BoundVerdicts {
    int order = 0;
    bool morse_ok = false;
    bool total_bound_ok = false;   // N <= 4n + k - 6
    bool total_bound_applies = false;
    bool maxima_bound_ok = false;  // M <= 2n - 2
    bool connectivity_bound_ok = false; // k <= n + 1
    bool degenerate_present = false;
    std::vector<std::string> failures;

    // With degenerate points the verdicts are informational only.
    bool asserted() const { return !degenerate_present; }
    bool all_ok() const {
        if (!asserted()) return true;
        return morse_ok && maxima_bound_ok && connectivity_bound_ok &&
               (!total_bound_applies || total_bound_ok);
    }
};

inline BoundVerdicts bounds_report(const RLPotential& p, const TopologyCensus& c) {
    BoundVerdicts v;
    v.order = p.order();
    const int n = v.order;
    v.degenerate_present = !c.all_nondegenerate();

    v.morse_ok = true;
    v.total_bound_ok = true;
    v.connectivity_bound_ok = true;
    v.total_bound_applies = n >= 2;
    for (const auto& comp : c.components) {
        const int N = comp.maxima + comp.saddles + comp.degenerate;
        if (comp.degenerate == 0 && comp.saddles - comp.maxima != comp.connectivity - 2) {
            v.morse_ok = false;
            v.failures.push_back("component " + std::to_string(comp.component_id) +
                                 ": S - M != k - 2");
        }
        if (n >= 2 && N > 4 * n + comp.connectivity - 6) {
            v.total_bound_ok = false;
            v.failures.push_back("component " + std::to_string(comp.component_id) +
                                 ": N exceeds 4n + k - 6");
        }
        if (comp.connectivity > n + 1) {
            v.connectivity_bound_ok = false;
            v.failures.push_back("component " + std::to_string(comp.component_id) +
                                 ": k exceeds n + 1");
        }
    }
    v.maxima_bound_ok = c.global_maxima <= 2 * n - 2 || n < 1;
    if (!v.maxima_bound_ok) v.failures.push_back("M exceeds 2n - 2");
    return v;
}

} // namespace landscape
