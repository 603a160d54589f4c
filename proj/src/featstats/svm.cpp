#include <algorithm>
#include <cmath>
#include <numeric>

#include "ectop/featstats.hpp"
#include "ectop/kernels.hpp"
#include "ectop/rng.hpp"

namespace ectop {

LinearModel svm_train(const Matrix& features, std::span<const int> labels, const SvmOptions& options) {
    const std::size_t n = features.rows();
    const std::size_t d = features.cols();
    if (labels.size() != n) throw Error(ErrorCode::DimMismatch, "one label per feature row required");
    if (n < 2) throw Error(ErrorCode::InvalidParameter, "need at least 2 samples");
    if (!(options.step > 0.0) || !(options.regularizer >= 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "step must be > 0 and regularizer >= 0");
    }
    bool pos = false;
    bool neg = false;
    for (int y : labels) {
        if (y != 1 && y != -1) throw Error(ErrorCode::InvalidParameter, "labels must be +1 or -1");
        (y > 0 ? pos : neg) = true;
    }
    if (!pos || !neg) throw Error(ErrorCode::SingleClass, "both classes must be present");

    LinearModel model{std::vector<double>(d, 0.0), 0.0};
    Rng rng(options.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        for (std::size_t i : order) {
            const double eta = options.step / (1.0 + options.step * options.regularizer * static_cast<double>(t++));
            const double y = labels[i];
            const double margin = y * (kernels::dot(model.weights, features.row(i)) + model.bias);
            const double shrink = 1.0 - eta * options.regularizer;
            for (double& w : model.weights) w *= shrink;
            if (margin < 1.0) {
                kernels::axpy(eta * y, features.row(i), model.weights);
                model.bias += eta * y;
            }
        }
    }
    return model;
}

std::vector<int> svm_predict(const LinearModel& model, const Matrix& features) {
    if (features.cols() != model.weights.size()) throw Error(ErrorCode::DimMismatch, "feature dimension mismatch");
    std::vector<int> out(features.rows());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        out[i] = kernels::dot(model.weights, features.row(i)) + model.bias >= 0.0 ? 1 : -1;
    }
    return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size() || truth.empty()) throw Error(ErrorCode::DimMismatch, "label length mismatch");
    std::size_t hit = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hit += predicted[i] == truth[i] ? 1 : 0;
    return static_cast<double>(hit) / static_cast<double>(truth.size());
}

Standardizer::Standardizer(const Matrix& train) : mean_(train.cols(), 0.0), scale_(train.cols(), 1.0) {
    const auto n = static_cast<double>(train.rows());
    for (std::size_t j = 0; j < train.cols(); ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < train.rows(); ++i) m += train(i, j);
        m /= n;
        double ss = 0.0;
        for (std::size_t i = 0; i < train.rows(); ++i) ss += (train(i, j) - m) * (train(i, j) - m);
        const double sd = std::sqrt(ss / n);
        mean_[j] = m;
        scale_[j] = sd > 0.0 ? 1.0 / sd : 1.0;
    }
}

Matrix Standardizer::apply(const Matrix& x) const {
    if (x.cols() != mean_.size()) throw Error(ErrorCode::DimMismatch, "feature dimension mismatch");
    Matrix out = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = (x(i, j) - mean_[j]) * scale_[j];
    return out;
}

}  // namespace ectop
