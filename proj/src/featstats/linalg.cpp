#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ectop/featstats.hpp"
#include "ectop/kernels.hpp"

namespace ectop {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows_ * cols_) throw Error(ErrorCode::InvalidDimensions, "matrix size mismatch");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_symmetric(double tol) const {
    if (!is_square()) return false;
    double scale = 1.0;
    for (double v : data_) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimMismatch, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) kernels::axpy(a(i, k), b.row(k), out.row(i));
    return out;
}

namespace {

// Columns of ts, centred, stored contiguously.
std::vector<std::vector<double>> centred_columns(const TimeSeriesMatrix& ts) {
    std::vector<std::vector<double>> cols(ts.cols(), std::vector<double>(ts.rows()));
    for (std::size_t j = 0; j < ts.cols(); ++j) {
        double mean = 0.0;
        for (std::size_t t = 0; t < ts.rows(); ++t) mean += ts(t, j);
        mean /= static_cast<double>(ts.rows());
        for (std::size_t t = 0; t < ts.rows(); ++t) cols[j][t] = ts(t, j) - mean;
    }
    return cols;
}

void require_square_symmetric(const SquareMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::InvalidDimensions, "matrix is not square");
    if (!a.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
}

}  // namespace

SquareMatrix covariance(const TimeSeriesMatrix& ts) {
    const auto cols = centred_columns(ts);
    const std::size_t n = ts.cols();
    const double denom = static_cast<double>(ts.rows() - 1);
    SquareMatrix cov(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double c = kernels::dot(cols[i], cols[j]) / denom;
            cov(i, j) = c;
            cov(j, i) = c;
        }
    }
    return cov;
}

TimeSeriesMatrix zscore_columns(const TimeSeriesMatrix& ts) {
    const auto cols = centred_columns(ts);
    std::vector<double> out(ts.rows() * ts.cols());
    for (std::size_t j = 0; j < ts.cols(); ++j) {
        const double var = kernels::dot(cols[j], cols[j]) / static_cast<double>(ts.rows() - 1);
        const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
        for (std::size_t t = 0; t < ts.rows(); ++t) out[t * ts.cols() + j] = cols[j][t] / sd;
    }
    return TimeSeriesMatrix(ts.rows(), ts.cols(), std::move(out));
}

double default_ridge(const SquareMatrix& cov) {
    if (!cov.is_square() || cov.rows() == 0) throw Error(ErrorCode::InvalidDimensions, "empty or non-square");
    double trace = 0.0;
    for (std::size_t i = 0; i < cov.rows(); ++i) trace += cov(i, i);
    return 1e-8 * trace / static_cast<double>(cov.rows());
}

Matrix cholesky(const SquareMatrix& a) {
    require_square_symmetric(a);
    const std::size_t n = a.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
    const double floor = 1e-12 * max_diag;

    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > floor)) {
            throw Error(ErrorCode::SingularMatrix,
                        "matrix is not positive definite (pivot " + std::to_string(j) + ")");
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

SquareMatrix precision_matrix(const SquareMatrix& cov, double ridge) {
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw Error(ErrorCode::InvalidParameter, "ridge must be >= 0");
    require_square_symmetric(cov);
    const std::size_t n = cov.rows();
    SquareMatrix shifted = cov;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += ridge;
    const Matrix l = cholesky(shifted);

    // Solve L L^T x = e_c for every column c.
    SquareMatrix inv(n, n);
    std::vector<double> y(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = i == c ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
            y[i] = s / l(i, i);
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = y[i];
            for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * inv(k, c);
            inv(i, c) = s / l(i, i);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = avg;
            inv(j, i) = avg;
        }
    }
    return inv;
}

WeightedGraph partial_correlation_graph(const SquareMatrix& prec) {
    require_square_symmetric(prec);
    const std::size_t n = prec.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(prec(i, i) > 0.0)) throw Error(ErrorCode::NonpositiveDiagonal, "precision diagonal must be > 0");
    }
    WeightedGraph g;
    g.node_count = n;
    g.edge_weights.emplace();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = std::abs(-prec(i, j) / std::sqrt(prec(i, i) * prec(j, j)));
            g.edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
            g.edge_weights->push_back(std::min(r, 1.0));
        }
    }
    return g;
}

SymmetricEigen symmetric_eigen(const SquareMatrix& input) {
    require_square_symmetric(input);
    const std::size_t n = input.rows();
    Matrix a = input;
    Matrix v = Matrix::identity(n);

    double total = 0.0;
    for (double x : a.values()) total += x * x;
    const double tiny = 1e-30 * std::max(total, 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off <= tiny) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq * apq <= tiny / static_cast<double>(n * n)) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
    SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = a(order[i], order[i]);
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
    }
    return out;
}

ECFeatureMatrix::ECFeatureMatrix(std::span<const ECCurve> curves) {
    if (curves.empty()) throw Error(ErrorCode::InvalidDimensions, "no curves");
    thresholds_ = curves.front().thresholds;
    m_ = Matrix(curves.size(), thresholds_.size());
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (curves[i].thresholds != thresholds_ || curves[i].chi.size() != thresholds_.size()) {
            throw Error(ErrorCode::ThresholdMismatch, "curve " + std::to_string(i) + " uses different thresholds");
        }
        for (std::size_t j = 0; j < thresholds_.size(); ++j) m_(i, j) = static_cast<double>(curves[i].chi[j]);
    }
}

Projection svd_project(const Matrix& data, std::size_t k) {
    const std::size_t n = data.rows();
    const std::size_t m = data.cols();
    if (k == 0 || k > std::min(n, m)) {
        throw Error(ErrorCode::InvalidParameter, "k must lie in [1, min(rows, cols)]");
    }
    Matrix x = data;
    for (std::size_t j = 0; j < m; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) x(i, j) -= mean;
    }

    Projection out{Matrix(n, k), std::vector<double>(k), Matrix(k, m)};
    // Directions whose singular value falls below this are treated as null.
    double norm2 = 0.0;
    for (double v : x.values()) norm2 += v * v;
    const double null_cut = 1e-10 * std::sqrt(norm2);

    auto finish_component = [&](std::size_t c, double sigma, std::vector<double> axis) {
        out.singular_values[c] = sigma;
        if (sigma <= null_cut) return;  // scores and axis stay zero
        std::size_t big = 0;
        for (std::size_t j = 1; j < m; ++j)
            if (std::abs(axis[j]) > std::abs(axis[big])) big = j;
        if (axis[big] < 0.0)
            for (double& a : axis) a = -a;
        for (std::size_t j = 0; j < m; ++j) out.components(c, j) = axis[j];
        for (std::size_t i = 0; i < n; ++i) out.scores(i, c) = kernels::dot(x.row(i), axis);
    };

    if (n <= m) {
        // Gram of rows: X X^T = U S^2 U^T, right vectors v = X^T u / s.
        Matrix gram(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) gram(i, j) = gram(j, i) = kernels::dot(x.row(i), x.row(j));
        const SymmetricEigen eig = symmetric_eigen(gram);
        for (std::size_t c = 0; c < k; ++c) {
            const double sigma = std::sqrt(std::max(eig.values[c], 0.0));
            std::vector<double> axis(m, 0.0);
            if (sigma > null_cut) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double u = eig.vectors(i, c) / sigma;
                    for (std::size_t j = 0; j < m; ++j) axis[j] += u * x(i, j);
                }
            }
            finish_component(c, sigma, std::move(axis));
        }
    } else {
        const Matrix xt = x.transposed();
        Matrix gram(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) gram(i, j) = gram(j, i) = kernels::dot(xt.row(i), xt.row(j));
        const SymmetricEigen eig = symmetric_eigen(gram);
        for (std::size_t c = 0; c < k; ++c) {
            const double sigma = std::sqrt(std::max(eig.values[c], 0.0));
            std::vector<double> axis(m);
            for (std::size_t j = 0; j < m; ++j) axis[j] = eig.vectors(j, c);
            finish_component(c, sigma, std::move(axis));
        }
    }
    return out;
}

Projection svd_project(const ECFeatureMatrix& fm, std::size_t k) { return svd_project(fm.matrix(), k); }

}  // namespace ectop
