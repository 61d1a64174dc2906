#include "pesim/stats.h"

namespace pesim {

MeanEstimate estimate_mean(std::span<const double> samples) {
    MeanEstimate est;
    est.count = samples.size();
    if (samples.empty()) {
        return est;
    }
    CompensatedSum sum;
    for (double x : samples) {
        sum.add(x);
    }
    est.mean = sum.value() / (double)samples.size();
    if (samples.size() < 2) {
        return est;
    }
    CompensatedSum sq;
    for (double x : samples) {
        double d = x - est.mean;
        sq.add(d * d);
    }
    double var = sq.value() / (double)(samples.size() - 1);
    est.sem = std::sqrt(var / (double)samples.size());
    est.has_sem = true;
    return est;
}

}  // namespace pesim
