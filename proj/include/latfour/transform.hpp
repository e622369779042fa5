#pragma once

#include <fftw3.h>

#include <complex>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <vector>

#include "lattice.hpp"
#include "random.hpp"

namespace latfour {

using Complex = std::complex<double>;

namespace detail {

inline std::int64_t pow_int(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

/// Row-major flat offset of a multi-index with per-axis extent `extent`,
/// first component slowest. Components must already be shifted to [0, extent).
inline std::int64_t flat_offset(const IVector& j, int extent) {
    std::int64_t f = 0;
    for (int i = 0; i < j.size(); ++i) f = f * extent + j(i);
    return f;
}

/// Odometer advance over [0, extent)^d in row-major order.
inline bool advance_grid(IVector& j, int extent) {
    for (int i = int(j.size()) - 1; i >= 0; --i) {
        if (j(i) < extent - 1) {
            ++j(i);
            for (int t = i + 1; t < int(j.size()); ++t) j(t) = 0;
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Samples of a function on the lattice-adapted grid: sample at multi-index j
/// holds f(A (j/N)), j in [0,N)^d, stored row-major with j_1 slowest.
class GridFunction {
public:
    GridFunction(const Lattice& lat, int n_per_axis, std::vector<Complex> samples)
        : lattice_(lat), n_(n_per_axis), samples_(std::move(samples)) {
        if (n_ < 1) throw Error("GridFunction: N must be >= 1");
        const auto expect = std::size_t(detail::pow_int(n_, lattice_.dim()));
        if (samples_.size() != expect)
            throw Error("GridFunction: expected " + std::to_string(expect) +
                        " samples, got " + std::to_string(samples_.size()));
        for (const Complex& v : samples_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw Error("GridFunction: non-finite sample");
    }

    static GridFunction zero(const Lattice& lat, int n_per_axis) {
        return GridFunction(
            lat, n_per_axis,
            std::vector<Complex>(std::size_t(detail::pow_int(n_per_axis, lat.dim()))));
    }

    const Lattice& lattice() const { return lattice_; }
    int dim() const { return lattice_.dim(); }
    int n_per_axis() const { return n_; }
    std::size_t size() const { return samples_.size(); }
    const std::vector<Complex>& samples() const { return samples_; }
    std::vector<Complex>& samples() { return samples_; }

    /// Grid point A (j/N) for multi-index j.
    Vector point(const IVector& j) const {
        return lattice_.generator() * (j.cast<double>() / double(n_));
    }

private:
    Lattice lattice_;
    int n_;
    std::vector<Complex> samples_;
};

/// Truncated spectrum on the centered band k in [-K,K]^d; entry order is
/// lexicographic by index, aligned with points().
class Spectrum {
public:
    Spectrum(const Lattice& lat, int band, std::vector<Complex> entries)
        : lattice_(lat), band_(band), entries_(std::move(entries)) {
        if (band_ < 0) throw Error("Spectrum: band must be >= 0");
        const auto expect =
            std::size_t(detail::pow_int(2 * std::int64_t(band_) + 1, lattice_.dim()));
        if (entries_.size() != expect)
            throw Error("Spectrum: expected " + std::to_string(expect) +
                        " entries, got " + std::to_string(entries_.size()));
        const int d = lattice_.dim();
        points_.reserve(entries_.size());
        IVector k = IVector::Constant(d, -band_);
        do {
            points_.push_back({k, lattice_.dual_generator() * k.cast<double>()});
        } while (detail::advance_index(k, band_));
    }

    static Spectrum zero(const Lattice& lat, int band) {
        return Spectrum(
            lat, band,
            std::vector<Complex>(
                std::size_t(detail::pow_int(2 * std::int64_t(band) + 1, lat.dim()))));
    }

    const Lattice& lattice() const { return lattice_; }
    int band() const { return band_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<DualPoint>& points() const { return points_; }
    const std::vector<Complex>& entries() const { return entries_; }
    std::vector<Complex>& entries() { return entries_; }

    /// Flat position of band index k (components in [-K,K]).
    std::size_t position(const IVector& k) const {
        std::int64_t f = 0;
        for (int i = 0; i < k.size(); ++i) {
            if (k(i) < -band_ || k(i) > band_)
                throw Error("Spectrum: index outside band");
            f = f * (2 * std::int64_t(band_) + 1) + (k(i) + band_);
        }
        return std::size_t(f);
    }

    const Complex& operator[](const IVector& k) const { return entries_[position(k)]; }
    Complex& operator[](const IVector& k) { return entries_[position(k)]; }

private:
    Lattice lattice_;
    int band_;
    std::vector<Complex> entries_;
    std::vector<DualPoint> points_;
};

namespace detail {

/// FFTW planner calls are not thread-safe; executions are.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

inline void run_fftw(int dim, int n, std::vector<Complex>& buf_in,
                     std::vector<Complex>& buf_out, int sign) {
    std::vector<int> dims(std::size_t(dim), n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft(dim, dims.data(),
                             reinterpret_cast<fftw_complex*>(buf_in.data()),
                             reinterpret_cast<fftw_complex*>(buf_out.data()), sign,
                             FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
}

} // namespace detail

/// Forward transform: entries[k] = (1/N^d) sum_j samples[j] e^{-2 pi i k.j/N}
/// for k in [-K,K]^d. Exact for trigonometric polynomials with frequencies
/// inside the band whenever 2K+1 <= N.
inline Spectrum forward(const GridFunction& f, int band) {
    const int n = f.n_per_axis();
    const int d = f.dim();
    if (2 * band + 1 > n)
        throw BandExceedsGrid("forward: band " + std::to_string(band) +
                              " needs grid N >= " + std::to_string(2 * band + 1) +
                              ", got " + std::to_string(n));
    std::vector<Complex> in = f.samples();
    std::vector<Complex> out(in.size());
    detail::run_fftw(d, n, in, out, FFTW_FORWARD);

    Spectrum s = Spectrum::zero(f.lattice(), band);
    const double scale = 1.0 / double(f.size());
    IVector k = IVector::Constant(d, -band);
    std::size_t pos = 0;
    do {
        IVector bin(d);
        for (int i = 0; i < d; ++i) bin(i) = ((k(i) % n) + n) % n;
        s.entries()[pos++] = out[std::size_t(detail::flat_offset(bin, n))] * scale;
    } while (detail::advance_index(k, band));
    return s;
}

/// Inverse transform: samples[j] = sum_k entries[k] e^{+2 pi i k.j/N}.
/// Carries no normalization factor; inverse(forward(f)) == f for band-limited f.
inline GridFunction inverse(const Spectrum& s, int n_per_axis) {
    const int d = s.lattice().dim();
    const int band = s.band();
    if (2 * band + 1 > n_per_axis)
        throw BandExceedsGrid("inverse: band " + std::to_string(band) +
                              " needs grid N >= " + std::to_string(2 * band + 1) +
                              ", got " + std::to_string(n_per_axis));
    std::vector<Complex> in(std::size_t(detail::pow_int(n_per_axis, d)));
    IVector k = IVector::Constant(d, -band);
    std::size_t pos = 0;
    do {
        IVector bin(d);
        for (int i = 0; i < d; ++i) bin(i) = ((k(i) % n_per_axis) + n_per_axis) % n_per_axis;
        in[std::size_t(detail::flat_offset(bin, n_per_axis))] = s.entries()[pos++];
    } while (detail::advance_index(k, band));
    std::vector<Complex> out(in.size());
    detail::run_fftw(d, n_per_axis, in, out, FFTW_BACKWARD);
    return GridFunction(s.lattice(), n_per_axis, std::move(out));
}

/// Direct O(N^d (2K+1)^d) evaluation of the forward sum. Twiddles are taken
/// from one exact table of N roots of unity so the only rounding is in the
/// accumulation; independent of the FFT library.
inline Spectrum slow_forward_oracle(const GridFunction& f, int band) {
    const int n = f.n_per_axis();
    const int d = f.dim();
    if (2 * band + 1 > n)
        throw BandExceedsGrid("slow_forward_oracle: 2K+1 > N");
    std::vector<Complex> twiddle(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        const double a = -2.0 * std::numbers::pi * double(r) / double(n);
        twiddle[std::size_t(r)] = {std::cos(a), std::sin(a)};
    }
    Spectrum s = Spectrum::zero(f.lattice(), band);
    const double scale = 1.0 / double(f.size());
    IVector k = IVector::Constant(d, -band);
    std::size_t pos = 0;
    do {
        Complex acc = 0.0;
        IVector j = IVector::Zero(d);
        std::size_t jf = 0;
        do {
            std::int64_t dot = 0;
            for (int i = 0; i < d; ++i) dot += std::int64_t(k(i)) * j(i);
            const std::int64_t r = ((dot % n) + n) % n;
            acc += f.samples()[jf++] * twiddle[std::size_t(r)];
        } while (detail::advance_grid(j, n));
        s.entries()[pos++] = acc * scale;
    } while (detail::advance_index(k, band));
    return s;
}

/// | (1/N^d) sum_j |f_j|^2  -  sum_k |entries_k|^2 |.
inline double plancherel_defect(const GridFunction& f, const Spectrum& s) {
    double grid = 0.0;
    for (const Complex& v : f.samples()) grid += std::norm(v);
    grid /= double(f.size());
    double spec = 0.0;
    for (const Complex& v : s.entries()) spec += std::norm(v);
    return std::abs(grid - spec);
}

/// Spectrum with iid standard complex normal coefficients. The coefficient at
/// band index k depends only on (seed, trial, k), so enlarging the band keeps
/// every previously drawn coefficient.
inline Spectrum random_spectrum(const Lattice& lat, int band, std::uint64_t seed,
                                std::int64_t trial) {
    Spectrum s = Spectrum::zero(lat, band);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const IVector& k = s.points()[i].index;
        std::uint64_t h = rng::derive(seed, {trial});
        for (int c = 0; c < k.size(); ++c) h = rng::derive(h, {k(c)});
        rng::Stream stream(h);
        s.entries()[i] = stream.cnormal();
    }
    return s;
}

/// Delta spectrum: coefficient 1 at band index k0, 0 elsewhere.
inline Spectrum single_mode_spectrum(const Lattice& lat, int band, const IVector& k0) {
    Spectrum s = Spectrum::zero(lat, band);
    s[k0] = 1.0;
    return s;
}

} // namespace latfour
