#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace locspan {

/// Run configuration. n is the node count of the original graph and is used
/// in every budget formula at every level; delta and epsilon are derived.
/// Logarithms in budget formulas are base 2 throughout.
struct Params {
    std::uint64_t n = 0;
    std::uint32_t k = 1; ///< level count, 1 <= k (<= log2 log2 n for the guarantees)
    std::uint32_t h = 1; ///< trial parameter, 1 <= h (<= log2 n for the guarantees)
    double c = 1.0;      ///< success-probability constant, > 0
    std::uint64_t seed = 0;
    double budget_scale = 1.0; ///< scales samples_per_trial only; != 1 is non-faithful mode

    /// Test hook: forces the center-marking probability at every level.
    std::optional<double> center_prob_override;

    void validate() const {
        if (n < 1) throw std::invalid_argument("params: n must be >= 1");
        if (k < 1 || k > 30) throw std::invalid_argument("params: k must be in [1, 30]");
        if (h < 1) throw std::invalid_argument("params: h must be >= 1");
        if (!(c > 0.0)) throw std::invalid_argument("params: c must be > 0");
        if (!(budget_scale > 0.0)) throw std::invalid_argument("params: budget_scale must be > 0");
    }

    double delta() const {
        return 1.0 / static_cast<double>((std::uint64_t{1} << (k + 1)) - 1);
    }
    double epsilon() const { return 1.0 / static_cast<double>(h); }
    double log2_n() const { return std::log2(static_cast<double>(n)); }
    double exp_n(double x) const { return std::pow(static_cast<double>(n), x); }
    /// 2^j * delta
    double level_exponent(std::uint32_t j) const { return std::ldexp(delta(), static_cast<int>(j)); }
    /// p_j = n^(-2^j delta)
    double center_prob(std::uint32_t j) const { return exp_n(-level_exponent(j)); }
    /// p-hat_j = prod_{i<=j} p_i
    double center_prob_prefix(std::uint32_t j) const {
        double p = 1.0;
        for (std::uint32_t i = 0; i <= j; ++i) p *= center_prob(i);
        return p;
    }
};

struct LevelBudgets {
    std::uint32_t level = 0;
    std::uint32_t trial_count = 0;        ///< 2h
    std::uint64_t samples_per_trial = 0;  ///< ceil(budget_scale * c^2 * n^(2^j d + e) * log2(n)^3)
    std::uint64_t neighbor_threshold = 0; ///< ceil(c * n^(2^j d) * log2 n)
    double center_prob = 1.0;             ///< n^(-2^j d), or the override
    /// When samples_per_trial >= |X_v| the trial queries every remaining edge
    /// deterministically instead of sampling with replacement. Off only in
    /// tests that exercise the pure-sampling distribution.
    bool full_scan_shortcut = true;
};

inline LevelBudgets derive_budgets(const Params& p, std::uint32_t level) {
    if (level > p.k) throw std::invalid_argument("derive_budgets: level out of range");
    const double log_n = p.log2_n();
    const double ex = p.level_exponent(level);
    LevelBudgets b;
    b.level = level;
    b.trial_count = 2 * p.h;
    const double samples =
        std::ceil(p.budget_scale * p.c * p.c * p.exp_n(ex + p.epsilon()) * log_n * log_n * log_n);
    const double threshold = std::ceil(p.c * p.exp_n(ex) * log_n);
    constexpr double kCap = 4.6e18;
    b.samples_per_trial = static_cast<std::uint64_t>(std::min(samples, kCap));
    b.neighbor_threshold = static_cast<std::uint64_t>(std::min(threshold, kCap));
    b.center_prob = p.center_prob_override.value_or(p.center_prob(level));
    return b;
}

/// Stretch bound of the constructed spanner: 2 * 3^k - 1.
inline std::uint32_t stretch_bound_for(std::uint32_t k) {
    std::uint32_t pow3 = 1;
    for (std::uint32_t i = 0; i < k; ++i) pow3 *= 3;
    return 2 * pow3 - 1;
}

inline std::uint32_t pow3(std::uint32_t j) {
    std::uint32_t r = 1;
    for (std::uint32_t i = 0; i < j; ++i) r *= 3;
    return r;
}

} // namespace locspan
