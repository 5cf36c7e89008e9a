#ifndef G2CAL_G2SU3_HPP
#define G2CAL_G2SU3_HPP

#include <optional>

#include "g2cal/liealg.hpp"
#include "g2cal/metric.hpp"

namespace g2cal {

/// Outcome of analyzing a 3-form rho on R^6 against an orientation Omega:
/// S is defined by iota_v rho ^ rho ^ eta = eta(S v) Omega, S^2 = P Id, and
/// rho is definite precisely when P < 0, in which case J = (-P)^{-1/2} S.
struct Definite3Analysis {
    Matrix<double> S;
    double P = 0.0;
    bool definite = false;
    Matrix<double> J;  // valid when definite

    // exact shadows, present when the input was exact
    std::optional<ExactMatrix> S_exact;
    std::optional<Scalar> P_exact;
    std::optional<ExactMatrix> J_exact;  // present when sqrt(-P) is rational
};

Definite3Analysis analyze_definite3(const KForm<double>& rho, const KForm<double>& Omega);
Definite3Analysis analyze_definite3(const KForm<Scalar>& rho, const KForm<Scalar>& Omega);

struct TamingResult {
    enum Verdict { Tamed, NotTamed, Indeterminate } verdict = NotTamed;
    double min_eigenvalue = 0.0;
    Eigen::VectorXd witness;   // violating vector when NotTamed
    Eigen::MatrixXd sym_form;  // symmetrized quadratic form of omt(., J.)
};

/// Strict positivity of v -> omt(v, Jv), decided through the smallest
/// eigenvalue of the symmetrized form.
TamingResult taming_check(const KForm<double>& omt, const Matrix<double>& J,
                          double threshold = 1e-10);

/// Metric data of a 3-form on R^7: b_phi, g_phi = det(b)^{-1/9} b, volume.
struct G2Data {
    KForm<double> phi;
    Eigen::MatrixXd B;                  // b_phi(e_i, e_j) coefficients on e^{1..7}
    std::optional<ExactMatrix> B_exact;
    bool definite = false;
    std::optional<Metric> g;            // present iff definite
    double vol = 0.0;                   // signed coefficient of vol_phi on e^{1..7}
    KForm<double> star_phi;             // *_phi phi, present iff definite
};

G2Data g2_metric(const KForm<double>& phi);
G2Data g2_metric(const KForm<Scalar>& phi);

/// Intrinsic torsion of a closed G2-structure: tau = -*d*phi together with
/// the certified residuals of d*phi = tau ^ phi and tau ^ phi = -*tau.
struct G2Torsion {
    KForm<double> tau;
    double tau_norm2 = 0.0;
    double residual_wedge = 0.0;   // |d*phi - tau^phi| / scale
    double residual_type14 = 0.0;  // |tau^phi + *tau| / scale
    G2Data data;
};

G2Torsion g2_torsion(const LieAlgebra& L, const KForm<Scalar>& phi, double tol = 1e-9);
G2Torsion g2_torsion(const LieAlgebra& L, const KForm<double>& phi, double tol = 1e-9);

/// SU(3)-structure data induced by a compatible pair (omega, psi_+).
struct SU3Data {
    KForm<double> omega, psip, psim;
    Matrix<double> J;
    Metric g;

    SU3Data(KForm<double> omega, KForm<double> psip, KForm<double> psim, Matrix<double> J,
            Metric g)
        : omega(std::move(omega)), psip(std::move(psip)), psim(std::move(psim)),
          J(std::move(J)), g(std::move(g)) {}
};

/// Builds SU3Data from (omega, psi_+); J comes from (psi_+, omega^3).
/// With normalize = true, psi_+ is rescaled so that 3 psi_+ ^ psi_- = 2 omega^3.
SU3Data su3_from_pair(const KForm<double>& omega, const KForm<double>& psip,
                      bool normalize = false, double tol = 1e-9);

/// Components of a 2-form under Lambda^2 = R omega + Lambda^2_6 + Lambda^2_8.
struct Deg2Components {
    KForm<double> p1, p6, p8;
};
Deg2Components form_type_project2(const SU3Data& S, const KForm<double>& beta);

/// Components of a 3-form under
/// Lambda^3 = R psi+ + R psi- + {alpha ^ omega} + Lambda^3_12.
struct Deg3Components {
    double c_psip = 0.0, c_psim = 0.0;
    KForm<double> alpha;  // 1-form with alpha ^ omega the Lambda^3_6 part
    KForm<double> p6;     // alpha ^ omega
    KForm<double> p12;
};
Deg3Components form_type_project3(const SU3Data& S, const KForm<double>& beta);

/// J acting on k-forms by substitution beta(J., ..., J.).
KForm<double> j_act(const SU3Data& S, const KForm<double>& beta);

/// The intrinsic torsion forms of an SU(3)-structure on a Lie algebra:
/// d omega = -3/2 w0m psi+ + 3/2 w0p psi- + w3 + nu1 ^ omega,
/// d psi+  = w0p omega^2 + w2p ^ omega + w1 ^ psi+,
/// d psi-  = w0m omega^2 + w2m ^ omega + J w1 ^ psi+.
struct SU3Torsion {
    double w0p = 0.0, w0m = 0.0;
    KForm<double> nu1, w1;
    KForm<double> w2p, w2m;
    KForm<double> w3;
    double residual = 0.0;  // worst relative reconstruction error
};

SU3Torsion su3_torsion(const LieAlgebra& h, const SU3Data& S, double tol = 1e-6);

/// Orthonormal-ish basis of Lambda^2_8 (coefficient vectors span the module).
std::vector<KForm<double>> lambda2_8_basis(const SU3Data& S);

/// Splitting of a closed G2-structure along a central direction z. All data
/// is expressed in the adapted basis (f_1, ..., f_6, f_7 = z) where the f_i
/// are the remaining standard basis vectors.
struct CentralSplit {
    LieAlgebra g_adapted;          // the 7-dim algebra in the adapted basis
    LieAlgebra h;                  // 6-dim quotient ker(theta)
    KForm<Scalar> phi_adapted;     // phi in the adapted basis
    KForm<Scalar> omega_tilde_exact;  // iota_z phi, on h
    KForm<Scalar> rho_exact;          // phi - omega_tilde ^ theta, on h
    KForm<Scalar> omega0_exact;       // d theta restricted to h
    double u = 0.0;                   // |z|_phi
    KForm<double> theta, eta, eta_h;  // 1-forms on the 7-dim space
    KForm<double> omega, psip;        // the SU(3) pair on h
    std::optional<SU3Data> su3;
    G2Data g2;

    explicit CentralSplit(LieAlgebra g_adapted, LieAlgebra h)
        : g_adapted(std::move(g_adapted)), h(std::move(h)) {}
};

CentralSplit split_along_center(const LieAlgebra& L, const KForm<Scalar>& phi,
                                const ExactVector& z, double tol = 1e-9);

/// Form helpers between an n-dim space and the first m coordinates.
template <typename T>
KForm<T> restrict_form(const KForm<T>& x, int m) {
    KForm<T> r(m, x.degree());
    for (const auto& [mask, v] : x.coeffs()) {
        if (mask >> m)
            throw DimensionMismatch("restrict_form: form has legs outside the subspace");
        r.add_term(mask, v);
    }
    return r;
}

template <typename T>
KForm<T> extend_form(const KForm<T>& x, int n) {
    KForm<T> r(n, x.degree());
    for (const auto& [mask, v] : x.coeffs()) r.add_term(mask, v);
    return r;
}

/// Drops every term containing the given basis index (0-based).
template <typename T>
KForm<T> drop_leg(const KForm<T>& x, int i) {
    KForm<T> r(x.n(), x.degree());
    for (const auto& [mask, v] : x.coeffs())
        if (!(mask & (Mask(1) << i))) r.add_term(mask, v);
    return r;
}

}  // namespace g2cal

#endif
