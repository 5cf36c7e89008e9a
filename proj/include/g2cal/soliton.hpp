#ifndef G2CAL_SOLITON_HPP
#define G2CAL_SOLITON_HPP

#include "g2cal/extension.hpp"
#include "g2cal/g2su3.hpp"

namespace g2cal {

/// Hodge Laplacian of a closed G2-structure: Delta phi = d tau.
KForm<double> laplacian_closed(const LieAlgebra& L, const KForm<Scalar>& phi);

/// Least-squares certificate for d tau = lambda phi + D* phi over
/// (lambda, Der(L)-coefficients). The gauge dimension counts the kernel of
/// the system (e.g. skew derivations with D* phi = 0); the residual is
/// reported honestly, never clamped.
struct SolitonCertificate {
    bool feasible = false;
    double lambda = 0.0;
    Matrix<double> D;             // sum of Der(L) basis elements, 7x7
    std::vector<double> coeffs;   // coordinates in the derivation basis
    double residual = 0.0;        // coefficient 2-norm of d tau - lambda phi - D* phi
    double relative_residual = 0.0;
    std::size_t gauge_dim = 0;
    std::size_t der_dim = 0;
    double tau_norm2 = 0.0;
    KForm<double> tau;
    KForm<double> dtau;
};

SolitonCertificate soliton_solve(const LieAlgebra& L, const KForm<Scalar>& phi,
                                 double tol = 1e-8);

/// Direct residual of a candidate (lambda, D): |d tau - lambda phi - D* phi|.
double soliton_residual(const LieAlgebra& L, const KForm<Scalar>& phi, double lambda,
                        const Matrix<double>& D);

/// Checks of Prop. signLambda / Cor. lambdacont for a feasible certificate
/// along a chosen central z: requires D z = c z, then verifies
/// lambda + 3c + |tau|^2/2 = 0, and on contactizations lambda = |tau|^2 > 0;
/// also cross-checks |tau|^2 = |w2-|^2 + 6 |w1|^2 through the central split.
struct LambdaIdentityReport {
    bool applicable = false;   // D z = c z within tolerance
    double off_axis = 0.0;     // |D z - c z|
    double c = 0.0;
    double sign_lambda_residual = 0.0;
    bool contact = false;
    double lambda = 0.0;
    double tau_norm2 = 0.0;
    double contact_residual = 0.0;   // |lambda - |tau|^2| when contact
    double su3_cross_residual = 0.0; // | |tau|^2 - (|w2m|^2 + 6 |w1|^2) |
    bool ok = false;
};

LambdaIdentityReport lambda_identities(const LieAlgebra& L, const KForm<Scalar>& phi,
                                       const SolitonCertificate& cert, const ExactVector& z,
                                       double tol = 1e-7);

/// The two six-dimensional equations equivalent to the soliton equation on a
/// central extension, evaluated as residual norms for a candidate
/// decomposition D0* theta = alpha + c theta, Dtilde = pi_h D0|_h.
struct SolitonHResiduals {
    double eq1 = 0.0;
    double eq2 = 0.0;
};

SolitonHResiduals solitonh_residual(const CentralSplit& split, const SU3Data& S, double lambda,
                                    double c, const Matrix<double>& Dtilde,
                                    const KForm<double>& alpha);

/// Splits a 7x7 derivation (in the adapted basis of the given split) into
/// (c, alpha, Dtilde) with D* theta = alpha + c theta.
struct DerivationSplit {
    double c = 0.0;
    KForm<double> alpha;    // on h
    Matrix<double> Dtilde;  // 6x6
    double off_axis = 0.0;  // |D z - c z|
};

DerivationSplit split_derivation(const Matrix<double>& D);

}  // namespace g2cal

#endif
