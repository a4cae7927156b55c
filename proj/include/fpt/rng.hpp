#pragma once

#include <cmath>
#include <cstdint>

namespace fpt {

/// Counter-based random stream: the i-th output is a pure function of
/// (seed, path, i), so results are identical no matter how paths are
/// scheduled across threads. The output function is the SplitMix64 finalizer
/// applied to key + i * odd-gamma.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t path)
        : key_(mix(seed ^ mix(path + 0x9e3779b97f4a7c15ULL))) {}

    /// Uniform in the open interval (0, 1).
    double uniform() {
        const std::uint64_t x = mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL);
        return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
    }

    /// Standard normal via the inverse-CDF transform (Acklam's rational
    /// approximation, |rel err| < 1.2e-9) -- deterministic and portable.
    double normal() { return inverse_normal_cdf(uniform()); }

    static double inverse_normal_cdf(double u);

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

inline double CounterRng::inverse_normal_cdf(double u) {
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (u < p_low) {
        const double q = std::sqrt(-2.0 * std::log(u));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (u > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - u));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = u - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace fpt
