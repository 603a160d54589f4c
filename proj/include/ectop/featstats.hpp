#pragma once

// Statistics around the EC core: covariance and precision matrices, the
// partial-correlation network, Gaussian KDE on a grid, SVD projection of EC
// feature matrices, curve distance, the Moran's I and DFT baselines, and a
// linear SVM.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ectop/core.hpp"

namespace ectop {

/// Dense row-major real matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> values() const noexcept { return data_; }

    Matrix transposed() const;
    /// Symmetric when |a_ij - a_ji| <= tol * max(1, max|a|) for all i, j.
    bool is_symmetric(double tol = 1e-9) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Square matrix; invariants checked by the operations that require them.
using SquareMatrix = Matrix;

/// Unbiased sample covariance (divisor m - 1) of the columns.
SquareMatrix covariance(const TimeSeriesMatrix& ts);

/// Columns rescaled to zero mean and unit sample standard deviation;
/// constant columns are only centred.
TimeSeriesMatrix zscore_columns(const TimeSeriesMatrix& ts);

/// 1e-8 * trace(cov) / n.
double default_ridge(const SquareMatrix& cov);

/// Lower-triangular L with a = L L^T. Throws SingularMatrix when a pivot
/// drops to <= 1e-12 * max diagonal.
Matrix cholesky(const SquareMatrix& a);

/// (cov + ridge I)^{-1} by Cholesky; the result is exactly symmetric.
SquareMatrix precision_matrix(const SquareMatrix& cov, double ridge);

/// Complete graph whose edge (i, j), i < j, in lexicographic order, has weight
/// |p_ij| / sqrt(p_ii p_jj) clamped to [0, 1].
WeightedGraph partial_correlation_graph(const SquareMatrix& prec);

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
struct SymmetricEigen {
    std::vector<double> values;  // non-increasing
    Matrix vectors;              // column i pairs with values[i]
};
SymmetricEigen symmetric_eigen(const SquareMatrix& a);

/// Evaluation grid for a density: nx by ny cells over [xmin, xmax] x
/// [ymin, ymax], sampled at cell centres.
struct KdeGrid {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double xmin = 0.0;
    double xmax = 0.0;
    double ymin = 0.0;
    double ymax = 0.0;

    double cell_area() const noexcept;
};

/// The cloud's bounding box grown by `padding` bandwidths on every side.
KdeGrid padded_kde_grid(const PointCloud2D& pc, double bandwidth, std::size_t nx, std::size_t ny,
                        double padding = 3.0);

/// Isotropic Gaussian kernel density on the grid, dims {ny, nx} (rows are
/// y). Throws GridTooSmall unless the grid covers the bounding box grown by
/// 3 bandwidths.
GridField gaussian_kde_grid(const PointCloud2D& pc, double bandwidth, const KdeGrid& grid);

/// Rows are samples, columns thresholds; every row shares one threshold
/// sequence.
class ECFeatureMatrix {
public:
    explicit ECFeatureMatrix(std::span<const ECCurve> curves);

    const Matrix& matrix() const noexcept { return m_; }
    std::span<const double> thresholds() const noexcept { return thresholds_; }

private:
    Matrix m_;
    std::vector<double> thresholds_;
};

struct Projection {
    Matrix scores;                        // n x k
    std::vector<double> singular_values;  // k, non-increasing
    Matrix components;                    // k x m right singular vectors
};

/// Column-centred data projected on its top-k right singular vectors. Each
/// component is signed so its largest-magnitude entry is positive.
Projection svd_project(const Matrix& data, std::size_t k);
Projection svd_project(const ECFeatureMatrix& fm, std::size_t k);

/// Euclidean distance between chi sequences; thresholds must match exactly.
double ec_distance(const ECCurve& a, const ECCurve& b);

/// Global Moran's I with binary rook weights on a 2D field.
double morans_i(const GridField& field);

/// |DFT| with the DC term at index 0, same dims as the input (1D or 2D,
/// at most 2^18 values).
GridField dft_magnitude(const GridField& field);

struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;

    friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

struct SvmOptions {
    std::size_t epochs = 200;
    double step = 0.1;
    double regularizer = 1e-3;
    std::uint64_t seed = 0;
};

/// Hinge loss + L2 penalty by seeded stochastic subgradient descent; labels
/// must be +1 or -1.
LinearModel svm_train(const Matrix& features, std::span<const int> labels, const SvmOptions& options);

/// sign(w.x + b) per row, with 0 mapped to +1.
std::vector<int> svm_predict(const LinearModel& model, const Matrix& features);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

/// Per-column standardisation fitted on one matrix and applied to others.
class Standardizer {
public:
    explicit Standardizer(const Matrix& train);
    Matrix apply(const Matrix& x) const;

private:
    std::vector<double> mean_;
    std::vector<double> scale_;
};

}  // namespace ectop
