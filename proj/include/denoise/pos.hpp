// Price of stability: how much welfare, accuracy and data quality the
// self-interested equilibrium gives up relative to the social optimum.

#pragma once

#include "denoise/ne.hpp"
#include "denoise/swm.hpp"

namespace denoise {

struct PosReport {
    SwmReport swm;
    NeReport ne;
    double pos_welfare = 1.0;   ///< SW(swm) / SW(ne), >= 1
    double accuracy_gap = 0.0;  ///< A(swm) - A(ne), >= 0
    double noise_gap = 0.0;     ///< xbar(ne) - xbar(swm), >= 0
};

/// Solves both problems and assembles the comparison.
/// Throws RatioUndefined if the equilibrium welfare is not positive.
PosReport compare(const GameInstance& instance, double mu = kDefaultMu, const NeOptions& ne_options = {});

}  // namespace denoise
