#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "lattice.hpp"
#include "random.hpp"

namespace latfour {

/// Fundamental parallelotope Omega_P = { A t : t in [0,1)^d }.
class Parallelotope {
public:
    explicit Parallelotope(const Lattice& lat) : lattice_(lat) {}

    const Lattice& lattice() const { return lattice_; }

    bool membership(const Vector& x) const {
        // A^{-1} = dual generator transposed, cached in the lattice.
        Vector t = lattice_.dual_generator().transpose() * x;
        for (int i = 0; i < t.size(); ++i)
            if (!(t(i) >= 0.0 && t(i) < 1.0)) return false;
        return true;
    }

    double measure() const { return lattice_.covolume(); }

private:
    Lattice lattice_;
};

/// Zonotope corner bounds of A [0,1]^d, per ambient coordinate.
namespace detail {
inline void parallelotope_box(const Matrix& gen, Vector& lo, Vector& hi) {
    lo = gen.cwiseMin(0.0).rowwise().sum();
    hi = gen.cwiseMax(0.0).rowwise().sum();
}
} // namespace detail

/// Representative of x modulo the lattice inside the fundamental
/// parallelotope. Fractional parts within 1e-12 of 1 are snapped to 0 so the
/// map is idempotent under rounding.
inline Vector reduce(const Parallelotope& dom, const Vector& x) {
    const Matrix& gen = dom.lattice().generator();
    Vector t = dom.lattice().dual_generator().transpose() * x;
    for (int i = 0; i < t.size(); ++i) {
        double f = t(i) - std::floor(t(i));
        if (f >= 1.0 - 1e-12) f = 0.0;
        t(i) = f;
    }
    return gen * t;
}

/// Fundamental domain of A_d in the zero-sum hyperplane of R^{d+1}:
/// t with sum(t) = 0 and -1 < t_i - t_j <= 1 for all i < j.
/// Regular hexagon for d = 2.
class HexDomainAd {
public:
    explicit HexDomainAd(int d) : d_(d) {
        if (d < 1) throw Error("HexDomainAd: d must be >= 1");
    }

    int d() const { return d_; }

    bool membership(const Vector& t) const {
        if (t.size() != d_ + 1) return false;
        if (std::abs(t.sum()) > 1e-9) return false;
        for (int i = 0; i <= d_; ++i)
            for (int j = i + 1; j <= d_; ++j) {
                const double diff = t(i) - t(j);
                if (!(diff > -1.0 && diff <= 1.0)) return false;
            }
        return true;
    }

    double measure() const { return std::sqrt(double(d_ + 1)); }

private:
    int d_;
};

inline double measure(const Parallelotope& dom) { return dom.measure(); }
inline double measure(const HexDomainAd& dom) { return dom.measure(); }

struct TilingReport {
    std::string domain_id;
    std::int64_t n_samples = 0;
    double fraction_exactly_one = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

/// Shared tiling kernel. Samples x = frame * u with u uniform in
/// [lo, hi]^rank, counts lattice shifts m in [-shift_radius, shift_radius]^rank
/// with x + G m inside the domain, and reports the fraction of samples whose
/// count is exactly one. A zero count is only accepted as a genuine gap when
/// the search box provably covers every shift that could reach the domain;
/// otherwise InsufficientShiftRadius is thrown.
template <class Membership>
TilingReport tiling_check_impl(std::string domain_id, Membership inside,
                               const Matrix& gen, const Matrix& frame,
                               const Vector& lo, const Vector& hi,
                               double domain_circumradius, std::int64_t n_samples,
                               int shift_radius, std::uint64_t seed) {
    if (n_samples < 1) throw Error("tiling_check: n_samples must be >= 1");
    if (shift_radius < 0) throw Error("tiling_check: shift_radius must be >= 0");
    const int rank = int(gen.cols());
    Eigen::JacobiSVD<Matrix> svd(gen);
    const double sigma_min = svd.singularValues()(rank - 1);

    rng::Stream stream(seed);
    std::int64_t exactly_one = 0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        Vector u(rank);
        for (int i = 0; i < rank; ++i) u(i) = stream.uniform(lo(i), hi(i));
        Vector x = frame * u;

        int count = 0;
        IVector m = IVector::Constant(rank, -shift_radius);
        do {
            if (inside(x + gen * m.cast<double>())) ++count;
        } while (advance_index(m, shift_radius));

        if (count == 0) {
            const int m_needed =
                int(std::ceil((x.norm() + domain_circumradius) / sigma_min)) + 1;
            if (shift_radius < m_needed)
                throw InsufficientShiftRadius(
                    "tiling_check: sample not covered within shift_radius " +
                    std::to_string(shift_radius) + ", need " + std::to_string(m_needed));
        }
        if (count == 1) ++exactly_one;
    }
    return {std::move(domain_id), n_samples,
            double(exactly_one) / double(n_samples), seed};
}

} // namespace detail

/// Shift radius large enough for tiling_check to decide every sample drawn
/// from its default bounding box.
inline int suggested_shift_radius(const Lattice& lat) {
    Vector lo, hi;
    detail::parallelotope_box(lat.generator(), lo, hi);
    const double reach = lo.cwiseAbs().cwiseMax(hi.cwiseAbs()).norm();
    Eigen::JacobiSVD<Matrix> svd(lat.generator());
    const double smin = svd.singularValues()(lat.dim() - 1);
    return int(std::ceil(2.0 * reach / smin)) + 1;
}

inline int suggested_shift_radius(const EmbeddedLattice& lat) {
    const int d = lat.dim();
    const double r = double(d) / std::sqrt(double(d + 1));
    Eigen::JacobiSVD<Matrix> svd(lat.generator());
    const double smin = svd.singularValues()(d - 1);
    return int(std::ceil((std::sqrt(double(d)) + 1.0) * r / smin)) + 1;
}

/// Tiling check for the fundamental parallelotope of lat.
inline TilingReport tiling_check(const Parallelotope& dom, const Lattice& lat,
                                 std::int64_t n_samples, int shift_radius,
                                 std::uint64_t seed,
                                 std::string domain_id = "parallelotope") {
    Vector lo, hi;
    detail::parallelotope_box(lat.generator(), lo, hi);
    const double circum = std::max(lo.norm(), hi.norm());
    return detail::tiling_check_impl(
        std::move(domain_id), [&dom](const Vector& x) { return dom.membership(x); },
        lat.generator(), Matrix::Identity(lat.dim(), lat.dim()), lo, hi, circum,
        n_samples, shift_radius, seed);
}

/// Tiling check for a membership predicate over the zero-sum hyperplane
/// against the embedded A_d lattice. Samples span an orthonormal frame of the
/// hyperplane so room around the domain is covered, not just the domain.
template <class Membership>
TilingReport tiling_check(std::string domain_id, Membership inside,
                          const EmbeddedLattice& lat, std::int64_t n_samples,
                          int shift_radius, std::uint64_t seed) {
    const int d = lat.dim();
    Eigen::HouseholderQR<Matrix> qr(lat.generator());
    Matrix frame = qr.householderQ() * Matrix::Identity(d + 1, d);
    const double r = double(d) / std::sqrt(double(d + 1));
    Vector lo = Vector::Constant(d, -r);
    Vector hi = Vector::Constant(d, r);
    return detail::tiling_check_impl(std::move(domain_id), inside, lat.generator(),
                                     frame, lo, hi, r, n_samples, shift_radius, seed);
}

inline TilingReport tiling_check(const HexDomainAd& dom, const EmbeddedLattice& lat,
                                 std::int64_t n_samples, int shift_radius,
                                 std::uint64_t seed) {
    return tiling_check(
        "hex_a" + std::to_string(dom.d()),
        [&dom](const Vector& t) { return dom.membership(t); }, lat, n_samples,
        shift_radius, seed);
}

/// Monte Carlo measure of the A_d fundamental domain, sampled in an
/// orthonormal frame of the hyperplane (area element is preserved).
inline double mc_measure(const HexDomainAd& dom, std::int64_t n_samples,
                         std::uint64_t seed) {
    const int d = dom.d();
    EmbeddedLattice lat = a_d_lattice(d);
    Eigen::HouseholderQR<Matrix> qr(lat.generator());
    Matrix frame = qr.householderQ() * Matrix::Identity(d + 1, d);
    const double r = double(d) / std::sqrt(double(d + 1));
    rng::Stream stream(seed);
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        Vector u(d);
        for (int i = 0; i < d; ++i) u(i) = stream.uniform(-r, r);
        if (dom.membership(frame * u)) ++hits;
    }
    return std::pow(2.0 * r, d) * double(hits) / double(n_samples);
}

} // namespace latfour
