#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "clair/errors.hpp"
#include "clair/numeric.hpp"
#include "clair/rng.hpp"

namespace clair {

// Observed counts indexed 1..n. File format: one count per line.
class EmpiricalDistribution {
  public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> counts) : counts_(std::move(counts)) {
        if (counts_.empty()) throw invalid_parameter("distribution needs at least one bin");
        for (double c : counts_)
            if (c < 0) throw invalid_parameter("distribution counts must be nonnegative");
    }

    static EmpiricalDistribution read_from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open distribution file: " + path);
        std::vector<double> counts;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ss(line);
            double v;
            if (!(ss >> v)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                throw parse_error("distribution line is not a number", lineno);
            }
            counts.push_back(v);
        }
        return EmpiricalDistribution(std::move(counts));
    }

    void write_to_file(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw io_error("cannot write distribution file: " + path);
        for (double c : counts_) out << format_number(c) << "\n";
    }

    std::size_t count() const { return counts_.size(); }
    const std::vector<double>& counts() const { return counts_; }
    double at(std::size_t index_1based) const { return counts_.at(index_1based - 1); }

  private:
    std::vector<double> counts_;
};

struct FitResult {
    double c_hat;
    double alpha_hat;
};

struct RegressionResult {
    double intercept;
    double slope;
    double r;  // Pearson correlation
};

inline RegressionResult linear_regression(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw insufficient_data("linear_regression needs at least two points");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    double n = static_cast<double>(points.size());
    double mx = sx / n, my = sy / n;
    double sxx = 0, syy = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw degenerate_matrix("linear_regression: x values are all equal");
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double r = syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
    return {intercept, slope, r};
}

inline RegressionResult linear_regression(const std::map<double, double>& points) {
    std::vector<std::pair<double, double>> v(points.begin(), points.end());
    return linear_regression(v);
}

// Least squares on (ln i, ln counts[i]) over the positive entries;
// counts[i] = 0 contributes no point (its log is undefined).
inline FitResult pl_estimate(const std::vector<double>& observed) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < observed.size(); ++i)
        if (observed[i] > 0)
            pts.emplace_back(std::log(static_cast<double>(i + 1)), std::log(observed[i]));
    if (pts.size() < 2) throw insufficient_data("pl_estimate needs two positive bins");
    auto fit = linear_regression(pts);
    return {std::exp(fit.intercept), fit.slope};
}

inline FitResult pl_estimate(const EmpiricalDistribution& d) { return pl_estimate(d.counts()); }

// counts[i] = c * i^alpha for i in 1..n.
inline std::vector<double> gen_pl(double c, double alpha, std::size_t n) {
    if (c <= 0) throw invalid_parameter("gen_pl: c must be positive");
    if (n < 1) throw invalid_parameter("gen_pl: n must be at least 1");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c * std::pow(static_cast<double>(i + 1), alpha);
    return out;
}

// Pearson chi-square between observed and expected bin counts. The first
// n_params + 1 cells are consumed by the fitted parameters and the total,
// leaving df = bins - 1 - n_params summed cells; p is the upper tail of
// the chi-square distribution with df degrees of freedom. A zero-expected
// cell inside the window pools its observed count into the next usable
// cell.
inline std::pair<int, double> compare_chi_square(const std::vector<double>& observed,
                                                 const std::vector<double>& expected,
                                                 int n_params) {
    if (observed.size() != expected.size())
        throw invalid_parameter("compare_chi_square: length mismatch");
    if (n_params < 0) throw invalid_parameter("compare_chi_square: negative parameter count");
    int df = static_cast<int>(observed.size()) - 1 - n_params;
    if (df <= 0) throw invalid_parameter("compare_chi_square: no degrees of freedom left");
    double chi = 0;
    double pooled_obs = 0, pooled_exp_tail = 0;
    for (std::size_t i = static_cast<std::size_t>(n_params) + 1; i < observed.size(); ++i) {
        if (expected[i] <= 0) {
            pooled_obs += observed[i];
            continue;
        }
        double o = observed[i] + pooled_obs;
        pooled_obs = 0;
        chi += (o - expected[i]) * (o - expected[i]) / expected[i];
        pooled_exp_tail = expected[i];
    }
    if (pooled_obs > 0 && pooled_exp_tail > 0)
        chi += pooled_obs * pooled_obs / pooled_exp_tail;
    return {df, chi_square_tail(df, chi)};
}

inline std::pair<int, double> compare_chi_square(const EmpiricalDistribution& observed,
                                                 const std::vector<double>& expected,
                                                 int n_params) {
    return compare_chi_square(observed.counts(), expected, n_params);
}

// Inverse-transform Poisson draws.
inline long poisson_draw(double lambda, Rng& rng) {
    if (lambda <= 0) throw invalid_parameter("poisson_draw: lambda must be positive");
    double u = rng.uniform();
    double p = std::exp(-lambda);
    double cum = p;
    long k = 0;
    while (u > cum && k < 100000) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cum += p;
    }
    return k;
}

inline std::vector<long> gen_pois(double lambda, std::size_t n_samples, Rng& rng) {
    if (lambda <= 0) throw invalid_parameter("gen_pois: lambda must be positive");
    std::vector<long> out(n_samples);
    for (auto& v : out) v = poisson_draw(lambda, rng);
    return out;
}

// Sample mean of the index-count mass, indexes 1-based.
inline double pois_estimate(const std::vector<double>& observed) {
    double total = 0, weighted = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        total += observed[i];
        weighted += static_cast<double>(i + 1) * observed[i];
    }
    if (total <= 0) throw insufficient_data("pois_estimate: empty distribution");
    return weighted / total;
}

// Upper tail P(T_df > t) of Student's t distribution.
inline double t_dist_prob(int df, double t) {
    if (df < 1) throw invalid_parameter("t_dist_prob: df must be at least 1");
    if (t == 0.0) return 0.5;
    double x = static_cast<double>(df) / (static_cast<double>(df) + t * t);
    double half_tail = 0.5 * regularized_beta(static_cast<double>(df) / 2.0, 0.5, x);
    return t > 0 ? half_tail : 1.0 - half_tail;
}

// ---- index-drawing distributions over 1..size ------------------------------

// Normalized mass over indexes 1..size; draw_index inverts the CDF.
class IndexDistribution {
  public:
    explicit IndexDistribution(std::vector<double> weights) {
        if (weights.empty()) throw invalid_parameter("distribution needs at least one weight");
        double total = 0;
        for (double w : weights) {
            if (w < 0 || !std::isfinite(w))
                throw invalid_parameter("distribution weights must be nonnegative");
            total += w;
        }
        if (total <= 0) throw invalid_parameter("distribution weights must have positive sum");
        mass_ = std::move(weights);
        for (double& m : mass_) m /= total;
        cdf_.resize(mass_.size());
        double cum = 0;
        for (std::size_t i = 0; i < mass_.size(); ++i) {
            cum += mass_[i];
            cdf_[i] = cum;
        }
        cdf_.back() = 1.0;
    }

    std::size_t size() const { return mass_.size(); }
    double mass(std::size_t index_1based) const { return mass_.at(index_1based - 1); }
    const std::vector<double>& masses() const { return mass_; }

    std::size_t draw_index(Rng& rng) const {
        double u = rng.uniform();
        std::size_t lo = 0, hi = cdf_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cdf_[mid] < u)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo + 1;
    }

  private:
    std::vector<double> mass_;
    std::vector<double> cdf_;
};

inline IndexDistribution zipfian_distribution(double alpha, std::size_t size) {
    if (alpha <= 0) throw invalid_parameter("zipfian: alpha must be positive");
    std::vector<double> w(size);
    for (std::size_t i = 0; i < size; ++i)
        w[i] = std::pow(static_cast<double>(i + 1), -alpha);
    return IndexDistribution(std::move(w));
}

inline IndexDistribution gaussian_distribution(double mean, double variance, std::size_t size) {
    if (variance <= 0) throw invalid_parameter("gaussian: variance must be positive");
    std::vector<double> w(size);
    for (std::size_t i = 0; i < size; ++i) {
        double x = static_cast<double>(i + 1);
        w[i] = std::exp(-(x - mean) * (x - mean) / (2.0 * variance));
    }
    return IndexDistribution(std::move(w));
}

inline IndexDistribution lognormal_distribution(double mean, double std_dev, std::size_t size) {
    if (std_dev <= 0) throw invalid_parameter("lognormal: std_dev must be positive");
    std::vector<double> w(size);
    for (std::size_t i = 0; i < size; ++i) {
        double x = static_cast<double>(i + 1);
        double z = (std::log(x) - mean) / std_dev;
        w[i] = std::exp(-0.5 * z * z) / x;
    }
    return IndexDistribution(std::move(w));
}

inline IndexDistribution poisson_distribution(double lambda, std::size_t size) {
    if (lambda <= 0) throw invalid_parameter("poisson: lambda must be positive");
    std::vector<double> w(size);
    double log_lambda = std::log(lambda);
    for (std::size_t i = 0; i < size; ++i) {
        double k = static_cast<double>(i + 1);
        w[i] = std::exp(k * log_lambda - lambda - std::lgamma(k + 1.0));
    }
    return IndexDistribution(std::move(w));
}

inline IndexDistribution distribution_from_weights(std::vector<double> weights) {
    return IndexDistribution(std::move(weights));
}

// Geometric over 1.. with success probability p; unbounded support, drawn
// by inverting the CDF.
class GeometricDistribution {
  public:
    explicit GeometricDistribution(double p) : p_(p) {
        if (p <= 0 || p > 1) throw invalid_parameter("geometric: p must be in (0, 1]");
    }

    double mass(std::size_t index_1based) const {
        return p_ * std::pow(1.0 - p_, static_cast<double>(index_1based - 1));
    }

    std::size_t draw_index(Rng& rng) const {
        if (p_ >= 1.0) return 1;
        double u = rng.uniform_pos();
        double k = std::floor(std::log(u) / std::log1p(-p_));
        return static_cast<std::size_t>(k) + 1;
    }

    double p() const { return p_; }

  private:
    double p_;
};

}  // namespace clair
