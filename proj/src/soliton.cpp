#include "g2cal/soliton.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace g2cal {

KForm<double> laplacian_closed(const LieAlgebra& L, const KForm<Scalar>& phi) {
    return L.d(g2_torsion(L, phi).tau);
}

double soliton_residual(const LieAlgebra& L, const KForm<Scalar>& phi, double lambda,
                        const Matrix<double>& D) {
    const KForm<double> phif = to_double(phi);
    const KForm<double> dtau = laplacian_closed(L, phi);
    return coeff_norm(dtau - lambda * phif - endo_action(D, phif));
}

SolitonCertificate soliton_solve(const LieAlgebra& L, const KForm<Scalar>& phi, double tol) {
    if (L.dim() != 7) throw DimensionMismatch("soliton_solve: need a 7-dimensional algebra");
    SolitonCertificate cert;

    auto torsion = g2_torsion(L, phi);
    cert.tau = torsion.tau;
    cert.tau_norm2 = torsion.tau_norm2;
    cert.dtau = L.d(cert.tau);

    const auto der = L.derivations();
    cert.der_dim = der.dimension();
    const KForm<double> phif = to_double(phi);
    const std::size_t rows = basis_masks(7, 3).size();  // 35
    const std::size_t cols = 1 + der.dimension();

    Eigen::MatrixXd A(rows, cols);
    {
        const auto v = phif.to_vector();
        for (std::size_t r = 0; r < rows; ++r) A(r, 0) = v[r];
    }
    std::vector<Matrix<double>> der_f;
    for (std::size_t j = 0; j < der.dimension(); ++j) {
        der_f.push_back(to_double(der.basis[j]));
        const auto v = endo_action(der_f.back(), phif).to_vector();
        for (std::size_t r = 0; r < rows; ++r) A(r, 1 + j) = v[r];
    }
    Eigen::VectorXd b(rows);
    {
        const auto v = cert.dtau.to_vector();
        for (std::size_t r = 0; r < rows; ++r) b(r) = v[r];
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    Eigen::VectorXd x = svd.solve(b);
    cert.gauge_dim = cols - svd.rank();

    cert.lambda = x(0);
    cert.coeffs.assign(x.data() + 1, x.data() + cols);
    cert.D = Matrix<double>(7, 7);
    for (std::size_t j = 0; j < der.dimension(); ++j)
        for (int r = 0; r < 7; ++r)
            for (int c = 0; c < 7; ++c) cert.D(r, c) += x(1 + j) * der_f[j](r, c);

    cert.residual = (A * x - b).norm();
    const double phi_norm = coeff_norm(phif);
    const double dtau_norm = b.norm();
    if (dtau_norm <= 1e-12 * std::max(1.0, phi_norm)) {
        // torsion-free-type case: lambda = 0, D = 0 solves it
        cert.feasible = true;
        cert.lambda = 0.0;
        std::fill(cert.coeffs.begin(), cert.coeffs.end(), 0.0);
        cert.D = Matrix<double>(7, 7);
        cert.residual = dtau_norm;
        cert.relative_residual = 0.0;
        return cert;
    }
    cert.relative_residual = cert.residual / std::max(dtau_norm, phi_norm);
    cert.feasible = cert.relative_residual < tol;
    return cert;
}

DerivationSplit split_derivation(const Matrix<double>& D) {
    if (D.rows() != 7 || D.cols() != 7) throw ShapeMismatch("split_derivation: need 7x7");
    DerivationSplit out;
    out.c = D(6, 6);
    out.alpha = KForm<double>(6, 1);
    for (int i = 0; i < 6; ++i)
        if (D(6, i) != 0.0) out.alpha.add_term(Mask(1) << i, D(6, i));
    out.Dtilde = Matrix<double>(6, 6);
    double off2 = 0.0;
    for (int i = 0; i < 6; ++i) {
        off2 += D(i, 6) * D(i, 6);
        for (int j = 0; j < 6; ++j) out.Dtilde(i, j) = D(i, j);
    }
    out.off_axis = std::sqrt(off2);
    return out;
}

LambdaIdentityReport lambda_identities(const LieAlgebra& L, const KForm<Scalar>& phi,
                                       const SolitonCertificate& cert, const ExactVector& z,
                                       double tol) {
    LambdaIdentityReport rep;
    rep.lambda = cert.lambda;
    rep.tau_norm2 = cert.tau_norm2;
    if (!is_central(L, z)) throw NotCentral("lambda_identities: z is not central");

    // D z = c z?
    Eigen::VectorXd zv(7);
    for (int i = 0; i < 7; ++i) zv[i] = z[i].to_double();
    Eigen::VectorXd Dz = eigen_of(cert.D) * zv;
    rep.c = Dz.dot(zv) / zv.squaredNorm();
    rep.off_axis = (Dz - rep.c * zv).norm();
    rep.applicable = rep.off_axis <= tol * (1.0 + eigen_of(cert.D).norm());
    if (!rep.applicable) return rep;

    rep.sign_lambda_residual = std::abs(rep.lambda + 3.0 * rep.c + 0.5 * rep.tau_norm2);

    rep.contact = is_contactization(L, z);
    if (rep.contact) rep.contact_residual = std::abs(rep.lambda - rep.tau_norm2);

    auto split = split_along_center(L, phi, z);
    auto t = su3_torsion(split.h, *split.su3);
    const double su3_norm2 =
        form_norm2(split.su3->g, t.w2m) + 6.0 * form_norm2(split.su3->g, t.w1);
    rep.su3_cross_residual = std::abs(rep.tau_norm2 - su3_norm2);

    rep.ok = rep.sign_lambda_residual <= tol * (1.0 + std::abs(rep.lambda)) &&
             rep.su3_cross_residual <= tol * (1.0 + rep.tau_norm2) &&
             (!rep.contact ||
              (rep.contact_residual <= tol * (1.0 + rep.tau_norm2) && rep.lambda > 0));
    return rep;
}

SolitonHResiduals solitonh_residual(const CentralSplit& split, const SU3Data& S, double lambda,
                                    double c, const Matrix<double>& Dtilde,
                                    const KForm<double>& alpha) {
    if (Dtilde.rows() != 6 || Dtilde.cols() != 6)
        throw ShapeMismatch("solitonh_residual: Dtilde must be 6x6");
    if (alpha.n() != 6 || alpha.degree() != 1)
        throw ShapeMismatch("solitonh_residual: alpha must be a 1-form on h");
    const LieAlgebra& h = split.h;
    auto t = su3_torsion(h, S);
    const auto Jw1 = j_act(S, t.w1);
    const double u = split.u;

    // 2 d(J w1) = -Dtilde* omega - (c + lambda) omega
    const KForm<double> eq1 = 2.0 * h.d(Jw1) + endo_action(Dtilde, S.omega) +
                              (c + lambda) * S.omega;

    // d w2- - d *_g(J w1 ^ psi+) - 2u (d(J w1) ^ eta_h - J w1 ^ d eta)
    //   = u omega ^ alpha + Dtilde* rho + lambda rho
    const KForm<double> eta_h6 = restrict_form(split.eta_h, 6);
    const KForm<double> deta6 = restrict_form(split.g_adapted.d(split.eta), 6);
    const KForm<double> rho6 = u * wedge(S.omega, eta_h6) + S.psip;
    const KForm<double> lhs = h.d(t.w2m) - h.d(hodge_star(S.g, wedge(Jw1, S.psip))) -
                              2.0 * u * (wedge(h.d(Jw1), eta_h6) - wedge(Jw1, deta6));
    const KForm<double> rhs =
        u * wedge(S.omega, alpha) + endo_action(Dtilde, rho6) + lambda * rho6;

    return SolitonHResiduals{coeff_norm(eq1), coeff_norm(lhs - rhs)};
}

}  // namespace g2cal
