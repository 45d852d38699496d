#pragma once

// Covariance matrices, PSD determinants, Gaussian-vector entropy and the
// fractional Gaussian noise covariance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace infomeasures {

inline constexpr double kSymmetryTol = 1e-14;
inline constexpr double kPivotFloor = 1e-12;
inline constexpr double kSingularRatio = 1e-13;

struct DetResult {
    double value = 0;       // 0 when flagged singular
    double log_value = 0;   // -inf when the numerical rank is deficient
    std::size_t rank = 0;
    bool singular = false;
    double min_pivot = 0;   // smallest accepted pivot
    double pivot_product = 0;
};

namespace gauss_detail {

// Symmetric elimination with diagonal pivoting, in long double. Stops when
// the largest remaining pivot drops below the relative floor; the remaining
// Schur complement is then treated as zero.
inline DetResult factor(std::size_t n, std::vector<long double> w, double scale) {
    auto at = [&](std::size_t i, std::size_t j) -> long double& { return w[i * n + j]; };
    const long double floor = kPivotFloor * scale;
    DetResult r;
    long double log_det = 0, product = 1;
    long double min_pivot = std::numeric_limits<long double>::infinity();
    std::size_t k = 0;
    for (; k < n; ++k) {
        std::size_t best = k;
        for (std::size_t j = k + 1; j < n; ++j) {
            if (at(j, j) > at(best, best)) best = j;
        }
        if (best != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(best, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(at(j, k), at(j, best));
        }
        const long double d = at(k, k);
        if (d <= floor) break;
        log_det += std::log(d);
        product *= d;
        min_pivot = std::min(min_pivot, d);
        for (std::size_t i = k + 1; i < n; ++i) {
            const long double f = at(i, k) / d;
            if (f == 0) continue;
            for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    for (std::size_t i = k; i < n; ++i) {
        if (at(i, i) < -floor) {
            throw NotPositiveSemidefinite("covariance: negative pivot " +
                                          std::to_string(static_cast<double>(at(i, i))));
        }
    }
    r.rank = k;
    r.pivot_product = k == n ? static_cast<double>(product) : 0.0;
    r.min_pivot = k > 0 ? static_cast<double>(min_pivot) : 0.0;
    r.log_value = k == n ? static_cast<double>(log_det)
                         : -std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace gauss_detail

/// Symmetric positive semidefinite matrix with a strictly positive diagonal.
class CovMatrix {
public:
    CovMatrix(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
        if (n_ == 0) throw InvalidParameter("covariance: dimension must be >= 1");
        if (a_.size() != n_ * n_) throw InvalidParameter("covariance: expected n*n entries");
        double scale = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double d = (*this)(i, i);
            if (!(d > 0) || !std::isfinite(d)) {
                throw InvalidParameter("covariance: diagonal entries must be finite and > 0");
            }
            scale = std::max(scale, d);
        }
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                if (!std::isfinite((*this)(i, j)) ||
                    std::abs((*this)(i, j) - (*this)(j, i)) > kSymmetryTol * scale) {
                    throw InvalidParameter("covariance: matrix is not symmetric");
                }
            }
        }
        scale_ = scale;
        std::vector<long double> w(a_.begin(), a_.end());
        factored_ = gauss_detail::factor(n_, std::move(w), scale_);
    }

    static CovMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        std::vector<double> flat;
        for (const auto& row : rows) {
            if (row.size() != rows.size()) throw InvalidParameter("covariance: rows must be square");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return CovMatrix(rows.size(), std::move(flat));
    }

    static CovMatrix diagonal(std::span<const double> diag) {
        std::vector<double> flat(diag.size() * diag.size(), 0.0);
        for (std::size_t i = 0; i < diag.size(); ++i) flat[i * diag.size() + i] = diag[i];
        return CovMatrix(diag.size(), std::move(flat));
    }

    std::size_t n() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<double>& entries() const noexcept { return a_; }
    double scale() const noexcept { return scale_; }

    double diagonal_product() const {
        long double p = 1;
        for (std::size_t i = 0; i < n_; ++i) p *= (*this)(i, i);
        return static_cast<double>(p);
    }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (i != j && (*this)(i, j) != 0) return false;
            }
        }
        return true;
    }

    const DetResult& factorization() const noexcept { return factored_; }

private:
    std::size_t n_;
    std::vector<double> a_;
    double scale_ = 0;
    DetResult factored_;
};

/// Determinant via the pivoted factorization. Values below 1e-13·∏a_ii, or
/// a deficient numerical rank, are reported as 0 with `singular` set.
inline DetResult det_psd(const CovMatrix& a) {
    DetResult r = a.factorization();
    const double prod = a.diagonal_product();
    const double det = r.pivot_product;
    r.singular = r.rank < a.n() || det < kSingularRatio * prod;
    r.value = r.singular ? 0.0 : det;
    return r;
}

/// (n/2)(1 + log 2π) + (1/2) log det A.
inline double gaussian_entropy(const CovMatrix& a) {
    const DetResult r = det_psd(a);
    if (r.singular) throw SingularCovariance("gaussian entropy: covariance is singular");
    constexpr double kLog2Pi = 1.8378770664093454835606594728112352797;
    return 0.5 * static_cast<double>(a.n()) * (1 + kLog2Pi) + 0.5 * r.log_value;
}

/// ∏a_ii − det A, nonnegative up to rounding.
inline double hadamard_gap(const CovMatrix& a) {
    return a.diagonal_product() - det_psd(a).value;
}

// ---------------------------------------------------------------------------
// Fractional Gaussian noise

/// Lag-k autocovariance ½(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H}), with 0^{2H} = 0
/// also at H = 0, which makes the lag-0 value 1 for every H.
inline double fgn_autocovariance(std::size_t lag, double hurst) {
    if (!(hurst >= 0 && hurst <= 1)) throw InvalidParameter("fgn: Hurst index must lie in [0, 1]");
    const double two_h = 2 * hurst;
    auto pw = [two_h](double x) { return x == 0 ? 0.0 : std::pow(x, two_h); };
    const double k = static_cast<double>(lag);
    return 0.5 * (pw(k + 1) - 2 * pw(k) + pw(std::abs(k - 1)));
}

inline CovMatrix fgn_covariance(std::size_t n, double hurst) {
    if (n == 0) throw InvalidParameter("fgn: n must be >= 1");
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(k, hurst);
    std::vector<double> flat(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = gamma[i > j ? i - j : j - i];
    }
    return CovMatrix(n, std::move(flat));
}

struct FgnSweepRow {
    double hurst;
    double det;
    double log_det;
    bool singular;
    std::optional<double> entropy;  // empty when singular
};

inline std::vector<FgnSweepRow> fgn_det_sweep(std::size_t n, std::span<const double> hurst_grid) {
    std::vector<FgnSweepRow> rows;
    rows.reserve(hurst_grid.size());
    for (double h : hurst_grid) {
        const CovMatrix a = fgn_covariance(n, h);
        const DetResult r = det_psd(a);
        FgnSweepRow row{h, r.value, r.log_value, r.singular, std::nullopt};
        if (!r.singular) row.entropy = gaussian_entropy(a);
        rows.push_back(row);
    }
    return rows;
}

/// Covariance of (s_1 √a_11 ξ, …, s_n √a_nn ξ) for a single standard ξ.
inline CovMatrix rank1_extremal_vector(std::span<const double> diag, std::span<const int> signs) {
    if (diag.size() != signs.size()) {
        throw InvalidParameter("rank1_extremal_vector: diag and signs differ in length");
    }
    const std::size_t n = diag.size();
    std::vector<double> root(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(diag[i] > 0)) throw InvalidParameter("rank1_extremal_vector: diag must be > 0");
        if (signs[i] != 1 && signs[i] != -1) {
            throw InvalidParameter("rank1_extremal_vector: signs must be +1 or -1");
        }
        root[i] = std::sqrt(diag[i]);
    }
    std::vector<double> flat(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            flat[i * n + j] = i == j ? diag[i] : signs[i] * signs[j] * root[i] * root[j];
        }
    }
    return CovMatrix(n, std::move(flat));
}

}  // namespace infomeasures
