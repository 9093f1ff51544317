#include "denoise/pos.hpp"

#include <string>

#include "denoise/errors.hpp"

namespace denoise {

PosReport compare(const GameInstance& instance, double mu, const NeOptions& ne_options) {
    PosReport report;
    report.swm = solve_swm(instance, mu);
    report.ne = solve_ne(instance, ne_options);

    if (!(report.ne.welfare > 0.0))
        throw RatioUndefined("equilibrium welfare " + std::to_string(report.ne.welfare) +
                                 " is not positive; welfare ratio undefined (optimum " +
                                 std::to_string(report.swm.welfare) + ")",
                             report.swm.welfare, report.ne.welfare);

    report.pos_welfare = report.swm.welfare / report.ne.welfare;
    report.accuracy_gap = report.swm.accuracy - report.ne.accuracy;
    report.noise_gap = report.ne.avg_noise - report.swm.avg_noise;
    return report;
}

}  // namespace denoise
