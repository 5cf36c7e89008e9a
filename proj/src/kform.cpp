#include "g2cal/kform.hpp"

#include <array>

namespace g2cal {

std::vector<Mask> basis_masks(int n, int k) {
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask(1) << n); ++m)
        if (std::popcount(m) == k) out.push_back(m);
    return out;
}

std::size_t mask_index(int n, Mask m) {
    // number of popcount-equal masks strictly below m
    const int k = mask_degree(m);
    std::size_t idx = 0;
    for (Mask x = 0; x < m; ++x)
        if (std::popcount(x) == k) ++idx;
    (void)n;
    return idx;
}

KForm<double> to_double(const KForm<Scalar>& x) {
    KForm<double> r(x.n(), x.degree());
    for (const auto& [m, v] : x.coeffs()) r.add_term(m, v.to_double());
    return r;
}

Matrix<double> to_double(const ExactMatrix& m) {
    Matrix<double> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_double();
    return r;
}

std::vector<double> to_double(const ExactVector& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].to_double();
    return r;
}

}  // namespace g2cal
