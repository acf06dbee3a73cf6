#include "finlab/multiindex.hpp"

namespace finlab {

MultiIndex MultiIndex::join(const std::vector<int>& kx, const std::vector<int>& ky) {
    MultiIndex m;
    m.k.reserve(kx.size() + ky.size());
    m.k.insert(m.k.end(), kx.begin(), kx.end());
    m.k.insert(m.k.end(), ky.begin(), ky.end());
    return m;
}

std::string MultiIndex::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k[i]);
    }
    return s + "]";
}

}  // namespace finlab
