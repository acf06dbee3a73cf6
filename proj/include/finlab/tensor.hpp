#pragma once

#include <array>
#include <string>
#include <vector>

#include "finlab/common.hpp"

namespace finlab {

/// Tensor components at a base point with declared valence. The valence
/// string has one character per slot: 'u' contravariant, 'd' covariant.
/// Rank <= 4, all slots of dimension n.
class TensorValue {
  public:
    TensorValue() = default;
    TensorValue(int n, std::string valence);

    int dim() const { return n_; }
    int rank() const { return static_cast<int>(valence_.size()); }
    const std::string& valence() const { return valence_; }

    double& operator()(std::initializer_list<int> idx) { return data_[offset(idx)]; }
    double operator()(std::initializer_list<int> idx) const { return data_[offset(idx)]; }
    double& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
    double at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    /// Frobenius norm of the component array.
    double norm() const;
    /// Largest |component|.
    double max_abs() const;

    TensorValue& operator+=(const TensorValue& o);
    TensorValue& operator-=(const TensorValue& o);
    TensorValue& operator*=(double a);
    friend TensorValue operator-(TensorValue a, const TensorValue& b) { return a -= b; }
    friend TensorValue operator+(TensorValue a, const TensorValue& b) { return a += b; }
    friend TensorValue operator*(TensorValue a, double b) { return a *= b; }

  private:
    template <class Idx>
    std::size_t offset(const Idx& idx) const {
        std::size_t off = 0;
        for (int i : idx) off = off * n_ + static_cast<std::size_t>(i);
        return off;
    }
    int n_ = 0;
    std::string valence_;
    std::vector<double> data_;
};

}  // namespace finlab
