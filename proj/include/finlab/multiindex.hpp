#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "finlab/common.hpp"

namespace finlab {

/// Derivative orders per variable. For a scalar field f(x, y) on an
/// n-dimensional manifold the length is 2n: x^1..x^n then y^1..y^n.
struct MultiIndex {
    std::vector<int> k;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> orders) : k(std::move(orders)) {}
    MultiIndex(std::initializer_list<int> orders) : k(orders) {}

    static MultiIndex zeros(int nvars) { return MultiIndex(std::vector<int>(nvars, 0)); }

    int size() const { return static_cast<int>(k.size()); }
    int total() const {
        int t = 0;
        for (int v : k) t += v;
        return t;
    }
    int operator[](int i) const { return k[i]; }
    int& operator[](int i) { return k[i]; }
    bool operator==(const MultiIndex& o) const { return k == o.k; }

    /// Build the length-2n index from separate x- and y-group orders.
    static MultiIndex join(const std::vector<int>& kx, const std::vector<int>& ky);

    std::string str() const;
};

}  // namespace finlab
