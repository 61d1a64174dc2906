#ifndef PESIM_STATS_H
#define PESIM_STATS_H

#include <cmath>
#include <cstddef>
#include <span>

namespace pesim {

/// Neumaier-compensated running sum.
class CompensatedSum {
   public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    void merge(const CompensatedSum &other) {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const {
        return sum_ + comp_;
    }

   private:
    double sum_ = 0;
    double comp_ = 0;
};

struct MeanEstimate {
    double mean = 0;
    /// Standard error of the mean; zero (and has_sem false) with fewer than two samples.
    double sem = 0;
    size_t count = 0;
    bool has_sem = false;
};

/// Sample mean and standard error, accumulated in index order.
MeanEstimate estimate_mean(std::span<const double> samples);

}  // namespace pesim

#endif
