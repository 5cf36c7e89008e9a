#ifndef G2CAL_METRIC_HPP
#define G2CAL_METRIC_HPP

#include <Eigen/Dense>

#include "g2cal/kform.hpp"

namespace g2cal {

/// Positive-definite inner product on R^n with a chosen orientation sign
/// (+1: the given ordered basis is positive). The Cholesky factor and the
/// inverse are cached at construction; the value is immutable afterwards.
class Metric {
public:
    Metric(Eigen::MatrixXd G, int orientation = +1);

    int n() const { return static_cast<int>(G_.rows()); }
    const Eigen::MatrixXd& matrix() const { return G_; }
    const Eigen::MatrixXd& inverse() const { return Ginv_; }
    const Eigen::MatrixXd& cholesky_L() const { return L_; }
    int orientation() const { return orientation_; }
    double sqrt_det() const { return sqrt_det_; }

    /// Positively oriented unit volume form.
    KForm<double> volume_form() const;

private:
    Eigen::MatrixXd G_, Ginv_, L_;
    double sqrt_det_;
    int orientation_;
};

/// Inner product on Lambda^k induced by g (Gram determinants of G^{-1}).
double gram_inner(const Metric& g, const KForm<double>& a, const KForm<double>& b);

inline double form_norm2(const Metric& g, const KForm<double>& a) { return gram_inner(g, a, a); }

/// Hodge star via push-forward to a g-orthonormal frame.
KForm<double> hodge_star(const Metric& g, const KForm<double>& b);

/// v-flat: (v^b)(w) = g(v, w).
KForm<double> musical_flat(const Metric& g, const Eigen::VectorXd& v);

/// Inverse of musical_flat.
Eigen::VectorXd musical_sharp(const Metric& g, const KForm<double>& a);

/// Frobenius-style max-abs coefficient, used for residual reporting.
double max_abs_coeff(const KForm<double>& a);

/// Euclidean norm of the coefficient vector (no metric weighting).
double coeff_norm(const KForm<double>& a);

Eigen::MatrixXd eigen_of(const Matrix<double>& m);
Matrix<double> matrix_of(const Eigen::MatrixXd& m);
std::vector<double> vec_of(const Eigen::VectorXd& v);

}  // namespace g2cal

#endif
