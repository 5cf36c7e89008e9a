#include "g2cal/metric.hpp"

#include <cmath>

namespace g2cal {

Metric::Metric(Eigen::MatrixXd G, int orientation)
    : G_(std::move(G)), orientation_(orientation >= 0 ? +1 : -1) {
    if (G_.rows() != G_.cols()) throw DimensionMismatch("metric matrix must be square");
    Eigen::LLT<Eigen::MatrixXd> llt(G_);
    if (llt.info() != Eigen::Success)
        throw NotPositive("metric matrix is not positive-definite");
    L_ = llt.matrixL();
    Ginv_ = llt.solve(Eigen::MatrixXd::Identity(G_.rows(), G_.rows()));
    sqrt_det_ = L_.diagonal().prod();
}

KForm<double> Metric::volume_form() const {
    KForm<double> vol(n(), n());
    vol.add_term((Mask(1) << n()) - 1, orientation_ * sqrt_det_);
    return vol;
}

double gram_inner(const Metric& g, const KForm<double>& a, const KForm<double>& b) {
    if (a.n() != g.n() || b.n() != g.n())
        throw DimensionMismatch("gram_inner: dimension mismatch");
    if (a.degree() != b.degree()) throw DegreeMismatch("gram_inner: degree mismatch");
    const int k = a.degree();
    if (k == 0) return a.coeff(0) * b.coeff(0);
    double total = 0.0;
    Eigen::MatrixXd gram(k, k);
    for (const auto& [ma, va] : a.coeffs()) {
        int ia[8], ib[8];
        int p = 0;
        for (int i = 0; i < a.n(); ++i)
            if (ma & (Mask(1) << i)) ia[p++] = i;
        for (const auto& [mb, vb] : b.coeffs()) {
            p = 0;
            for (int i = 0; i < b.n(); ++i)
                if (mb & (Mask(1) << i)) ib[p++] = i;
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) gram(r, c) = g.inverse()(ia[r], ib[c]);
            total += va * vb * gram.determinant();
        }
    }
    return total;
}

namespace {

/// Star in an orthonormal positively oriented frame: *e^I = sign(I, I^c) e^{I^c}.
KForm<double> star_orthonormal(int n, const KForm<double>& b) {
    const Mask full = (Mask(1) << n) - 1;
    KForm<double> r(n, n - b.degree());
    for (const auto& [m, v] : b.coeffs()) {
        const Mask mc = full & ~m;
        const int s = merge_sign(m, mc);
        r.add_term(mc, s > 0 ? v : -v);
    }
    return r;
}

}  // namespace

KForm<double> hodge_star(const Metric& g, const KForm<double>& b) {
    if (b.n() != g.n()) throw DimensionMismatch("hodge_star: dimension mismatch");
    const int n = g.n();
    // coframe change e^i = sum_a (L^{-T})_{ia} f^a onto the orthonormal frame
    Eigen::MatrixXd Linvt = g.cholesky_L().inverse().transpose();
    Eigen::MatrixXd back = g.cholesky_L().transpose();  // f^a = sum_i L_{ia} e^i
    KForm<double> on = substitute(matrix_of(Linvt), b);
    KForm<double> starred = star_orthonormal(n, on);
    KForm<double> result = substitute(matrix_of(back), starred);
    return g.orientation() > 0 ? result : -result;
}

KForm<double> musical_flat(const Metric& g, const Eigen::VectorXd& v) {
    if (v.size() != g.n()) throw DimensionMismatch("flat: dimension mismatch");
    Eigen::VectorXd w = g.matrix() * v;
    KForm<double> r(g.n(), 1);
    for (int i = 0; i < g.n(); ++i) r.add_term(Mask(1) << i, w[i]);
    return r;
}

Eigen::VectorXd musical_sharp(const Metric& g, const KForm<double>& a) {
    if (a.n() != g.n() || a.degree() != 1) throw DimensionMismatch("sharp: need a 1-form");
    Eigen::VectorXd w(g.n());
    for (int i = 0; i < g.n(); ++i) w[i] = a.coeff(Mask(1) << i);
    return g.inverse() * w;
}

double max_abs_coeff(const KForm<double>& a) {
    double m = 0.0;
    for (const auto& [mask, v] : a.coeffs()) m = std::max(m, std::abs(v));
    return m;
}

double coeff_norm(const KForm<double>& a) {
    double s = 0.0;
    for (const auto& [mask, v] : a.coeffs()) s += v * v;
    return std::sqrt(s);
}

Eigen::MatrixXd eigen_of(const Matrix<double>& m) {
    Eigen::MatrixXd r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

Matrix<double> matrix_of(const Eigen::MatrixXd& m) {
    Matrix<double> r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

std::vector<double> vec_of(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace g2cal
