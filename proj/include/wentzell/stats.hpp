#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace wentzell {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n = 0;
    std::uint64_t master_seed = 0;
};

MCEstimate estimate(const std::vector<double>& samples, std::uint64_t master_seed);

// sup_x |F_n(x) - F(x)|
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

double binomial_stderr(double p, long n);

// results[i] = fn(i), computed on up to hardware_concurrency threads; the output
// order, and hence any reduction over it, does not depend on the thread count.
template <class T, class Fn>
std::vector<T> parallel_map(long n, Fn fn) {
    std::vector<T> out(static_cast<std::size_t>(n));
    const long workers = std::max(1L, std::min<long>(n, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (long w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (long i = w; i < n; i += workers) out[i] = fn(i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace wentzell
