#include "wentzell/stats.hpp"

#include <cmath>

namespace wentzell {

MCEstimate estimate(const std::vector<double>& samples, std::uint64_t master_seed) {
    MCEstimate e;
    e.n = static_cast<long>(samples.size());
    e.master_seed = master_seed;
    if (samples.empty()) return e;
    double sum = 0.0;
    for (double v : samples) sum += v;
    e.mean = sum / e.n;
    if (e.n > 1) {
        double ss = 0.0;
        for (double v : samples) ss += (v - e.mean) * (v - e.mean);
        e.std_error = std::sqrt(ss / (e.n - 1) / e.n);
    }
    return e;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double binomial_stderr(double p, long n) { return n > 0 ? std::sqrt(std::max(0.0, p * (1.0 - p)) / n) : 0.0; }

}  // namespace wentzell
