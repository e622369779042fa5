#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace latfour {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IVector = Eigen::VectorXi;

/// One frequency of the dual lattice: integer index k and coordinates
/// kappa = A^{-T} k in R^d.
struct DualPoint {
    IVector index;
    Vector coords;
};

/// Full-rank lattice A Z^d given by an invertible generator matrix A whose
/// columns are the lattice basis vectors.
class Lattice {
public:
    explicit Lattice(const Matrix& generator) : generator_(generator) {
        if (generator.rows() != generator.cols() || generator.rows() < 1)
            throw SingularGenerator("generator must be a square matrix, got " +
                                    std::to_string(generator.rows()) + "x" +
                                    std::to_string(generator.cols()));
        if (!generator.allFinite())
            throw SingularGenerator("generator has non-finite entries");
        const int d = int(generator.rows());
        const double det = generator.determinant();
        const double max_entry = generator.cwiseAbs().maxCoeff();
        const double eps_rank = 1e-10 * std::pow(max_entry, d);
        if (std::abs(det) <= eps_rank)
            throw SingularGenerator("generator is singular: |det| = " +
                                    std::to_string(std::abs(det)));
        covolume_ = std::abs(det);
        dual_generator_ = generator.inverse().transpose();
    }

    int dim() const { return int(generator_.rows()); }
    const Matrix& generator() const { return generator_; }
    const Matrix& dual_generator() const { return dual_generator_; }
    double covolume() const { return covolume_; }

private:
    Matrix generator_;
    Matrix dual_generator_;
    double covolume_ = 0.0;
};

inline Lattice new_lattice(const Matrix& generator) { return Lattice(generator); }

/// Dual lattice, generated by A^{-T}. dual(dual(L)) == L up to rounding.
inline Lattice dual(const Lattice& lat) { return Lattice(lat.dual_generator()); }

namespace detail {

/// Largest singular value of M.
inline double opnorm2(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

/// Odometer advance over [-M, M]^d, lexicographic, most significant first.
/// Returns false when the range is exhausted.
inline bool advance_index(IVector& k, int M) {
    for (int i = int(k.size()) - 1; i >= 0; --i) {
        if (k(i) < M) {
            ++k(i);
            for (int j = i + 1; j < int(k.size()); ++j) k(j) = -M;
            return true;
        }
    }
    return false;
}

} // namespace detail

/// All dual-lattice points kappa with |kappa|_2 <= radius, in lexicographic
/// order of the integer index. The search box uses |k|_inf <= |k|_2 =
/// |A^T kappa|_2 <= ||A^T||_2 * radius, so no point is missed.
inline std::vector<DualPoint> enumerate_dual(const Lattice& lat, double radius,
                                             std::int64_t cap = 10'000'000) {
    if (!(radius > 0.0)) throw Error("enumerate_dual: radius must be positive");
    const int d = lat.dim();
    const int M = int(std::floor(detail::opnorm2(lat.generator()) * radius + 1e-9));
    double box = 1.0;
    for (int i = 0; i < d; ++i) box *= double(2 * M + 1);
    if (box > double(cap))
        throw TruncationOverflow("enumerate_dual: index box holds " +
                                 std::to_string(std::int64_t(box)) +
                                 " candidates, cap is " + std::to_string(cap));
    const Matrix& dualgen = lat.dual_generator();
    std::vector<DualPoint> out;
    IVector k = IVector::Constant(d, -M);
    do {
        Vector kappa = dualgen * k.cast<double>();
        if (kappa.norm() <= radius) out.push_back({k, kappa});
    } while (detail::advance_index(k, M));
    return out;
}

/// Upper bound on the number of dual points in the closed ball of the given
/// radius, of the form C_A (2R+1)^d. A dual point kappa has integer index
/// k = A^T kappa, and |k_j| = |a_j . kappa| <= ||a_j|| R for the j-th primal
/// generator column a_j; counting integers per axis gives
///   count <= prod_j (2 floor(||a_j|| R) + 1) <= prod_j max(1, ||a_j||) (2R+1)^d.
inline double count_bound(const Lattice& lat, double radius) {
    if (!(radius > 0.0)) throw Error("count_bound: radius must be positive");
    const int d = lat.dim();
    double c = 1.0;
    for (int j = 0; j < d; ++j)
        c *= std::max(1.0, lat.generator().col(j).norm());
    return c * std::pow(2.0 * radius + 1.0, d);
}

/// Rank-d lattice embedded in the zero-sum hyperplane of R^{d+1}; covers the
/// A_d family. generator is (d+1) x d, dual_generator = A (A^T A)^{-1}.
class EmbeddedLattice {
public:
    EmbeddedLattice(const Matrix& generator)
        : generator_(generator),
          dual_generator_(generator *
                          (generator.transpose() * generator).inverse()) {}

    int dim() const { return int(generator_.cols()); }
    int ambient_dim() const { return int(generator_.rows()); }
    const Matrix& generator() const { return generator_; }
    const Matrix& dual_generator() const { return dual_generator_; }

    double covolume() const {
        return std::sqrt((generator_.transpose() * generator_).determinant());
    }

    /// In-plane d x d generator with the same Gram matrix: the R factor of a
    /// thin QR of the embedded generator, diagonal normalized positive.
    /// Transforms and spectra run on this planar copy.
    Lattice planar() const {
        const int d = dim();
        Eigen::HouseholderQR<Matrix> qr(generator_);
        Matrix r = qr.matrixQR().topRows(d).template triangularView<Eigen::Upper>();
        for (int i = 0; i < d; ++i)
            if (r(i, i) < 0.0) r.row(i) = -r.row(i);
        return Lattice(r);
    }

private:
    Matrix generator_;
    Matrix dual_generator_;
};

/// A_d lattice: columns e_j - e_{d+1} in R^{d+1} (identity block on top, last
/// row all -1).
inline EmbeddedLattice a_d_lattice(int d) {
    if (d < 1) throw Error("a_d_lattice: d must be >= 1");
    Matrix a = Matrix::Zero(d + 1, d);
    a.topRows(d) = Matrix::Identity(d, d);
    a.row(d) = Eigen::RowVectorXd::Constant(d, -1.0);
    return EmbeddedLattice(a);
}

/// Plain-text generator format: first line d, then d rows of d decimals.
/// The matrix as written is the generator; its columns are the basis vectors.
inline Matrix load_generator(std::istream& in) {
    int d = 0;
    if (!(in >> d) || d < 1)
        throw ConfigError("generator file: first token must be a positive dimension");
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (!(in >> a(i, j)))
                throw ConfigError("generator file: expected " + std::to_string(d * d) +
                                  " matrix entries");
    return a;
}

} // namespace latfour
