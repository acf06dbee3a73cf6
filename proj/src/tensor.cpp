#include "finlab/tensor.hpp"

#include <cmath>

namespace finlab {

TensorValue::TensorValue(int n, std::string valence) : n_(n), valence_(std::move(valence)) {
    if (valence_.size() > 4) throw PreconditionError("TensorValue supports rank <= 4");
    std::size_t sz = 1;
    for (std::size_t i = 0; i < valence_.size(); ++i) sz *= n_;
    data_.assign(sz, 0.0);
}

double TensorValue::norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double TensorValue::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

TensorValue& TensorValue::operator+=(const TensorValue& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

TensorValue& TensorValue::operator-=(const TensorValue& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

TensorValue& TensorValue::operator*=(double a) {
    for (double& v : data_) v *= a;
    return *this;
}

}  // namespace finlab
