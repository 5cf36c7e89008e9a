#include "g2cal/g2su3.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace g2cal {

namespace {

/// S_rho from iota_v rho ^ rho ^ eta = eta(S v) Omega, over any scalar type.
template <typename T>
Matrix<T> structure_endo(const KForm<T>& rho, const KForm<T>& Omega, const T& omega_top) {
    const int n = 6;
    Matrix<T> S(n, n);
    for (int i = 0; i < n; ++i) {
        const KForm<T> c5 = wedge(interior_basis(i, rho), rho);
        for (int j = 0; j < n; ++j) {
            KForm<T> ej(n, 1);
            ej.add_term(Mask(1) << j, T{1});
            const KForm<T> top = wedge(c5, ej);
            S(j, i) = top.coeff((Mask(1) << n) - 1) / omega_top;
        }
    }
    (void)Omega;
    return S;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    const Int num = numerator(r), den = denominator(r);
    const Int sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

}  // namespace

Definite3Analysis analyze_definite3(const KForm<double>& rho, const KForm<double>& Omega) {
    if (rho.n() != 6 || rho.degree() != 3 || Omega.n() != 6 || Omega.degree() != 6)
        throw DimensionMismatch("analyze_definite3: need a 3-form and a 6-form on R^6");
    const double top = Omega.coeff((Mask(1) << 6) - 1);
    if (top == 0.0) throw ZeroOrientation("orientation form vanishes");

    Definite3Analysis out;
    out.S = structure_endo(rho, Omega, top);
    double tr = 0.0;
    Matrix<double> S2 = out.S * out.S;
    for (int i = 0; i < 6; ++i) tr += S2(i, i);
    out.P = tr / 6.0;
    out.definite = out.P < 0.0;
    if (out.definite) {
        const double s = 1.0 / std::sqrt(-out.P);
        out.J = s * out.S;
    }
    return out;
}

Definite3Analysis analyze_definite3(const KForm<Scalar>& rho, const KForm<Scalar>& Omega) {
    const Scalar top = Omega.coeff((Mask(1) << 6) - 1);
    if (top.is_zero()) throw ZeroOrientation("orientation form vanishes");
    Definite3Analysis out = analyze_definite3(to_double(rho), to_double(Omega));

    ExactMatrix S = structure_endo(rho, Omega, top);
    ExactMatrix S2 = S * S;
    const Scalar P = S2(0, 0);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (S2(i, j) != (i == j ? P : Scalar(0)))
                throw Error("internal: S^2 is not a multiple of the identity");
    out.S_exact = S;
    out.P_exact = P;
    out.definite = P.sign() < 0;
    if (out.definite && P.is_rational()) {
        if (auto root = rational_sqrt(-P.rat())) {
            const Scalar inv = Scalar(*root).inverse();
            out.J_exact = inv * S;
            out.J = to_double(*out.J_exact);
        }
    }
    return out;
}

TamingResult taming_check(const KForm<double>& omt, const Matrix<double>& J, double threshold) {
    const int n = omt.n();
    if (omt.degree() != 2) throw DegreeMismatch("taming_check: need a 2-form");
    if (J.rows() != static_cast<std::size_t>(n) || J.cols() != J.rows())
        throw DimensionMismatch("taming_check: matrix shape mismatch");
    // J^2 = -Id within tolerance
    Eigen::MatrixXd Jm = eigen_of(J);
    if ((Jm * Jm + Eigen::MatrixXd::Identity(n, n)).norm() > 1e-8 * (1 + Jm.norm() * Jm.norm()))
        throw NotComplexStructure("taming_check: J^2 != -Id");

    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [m, v] : omt.coeffs()) {
        const int i = std::countr_zero(m);
        const int j = std::countr_zero(m & (m - 1));
        W(i, j) = v;
        W(j, i) = -v;
    }
    Eigen::MatrixXd Q = W * Jm;  // q(v, w) = omt(v, Jw)
    TamingResult res;
    res.sym_form = 0.5 * (Q + Q.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(res.sym_form);
    res.min_eigenvalue = es.eigenvalues()(0);
    if (res.min_eigenvalue > threshold)
        res.verdict = TamingResult::Tamed;
    else if (res.min_eigenvalue < -threshold) {
        res.verdict = TamingResult::NotTamed;
        res.witness = es.eigenvectors().col(0);
    } else
        res.verdict = TamingResult::Indeterminate;
    return res;
}

namespace {

template <typename T>
Matrix<T> bphi_matrix(const KForm<T>& phi) {
    const int n = 7;
    Matrix<T> B(n, n);
    std::vector<KForm<T>> contr;
    for (int i = 0; i < n; ++i) contr.push_back(interior_basis(i, phi));
    const T sixth = T{1} / T{6};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const T c = wedge(wedge(contr[i], contr[j]), phi).coeff((Mask(1) << n) - 1) * sixth;
            B(i, j) = c;
            B(j, i) = c;
        }
    return B;
}

G2Data g2_metric_common(KForm<double> phi, std::optional<ExactMatrix> B_exact) {
    if (phi.n() != 7 || phi.degree() != 3)
        throw DimensionMismatch("g2_metric: need a 3-form on R^7");
    G2Data out;
    out.phi = std::move(phi);
    out.B_exact = std::move(B_exact);
    out.B = out.B_exact ? eigen_of(to_double(*out.B_exact)) : eigen_of(bphi_matrix(out.phi));

    const double det = out.B.determinant();
    if (det == 0.0 || !std::isfinite(det)) return out;  // NotDefinite verdict
    // real sign-preserving 9th root
    const double root = std::copysign(std::pow(std::abs(det), 1.0 / 9.0), det);
    Eigen::MatrixXd G = out.B / root;
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success) return out;
    out.definite = true;
    out.vol = root;
    out.g.emplace(G, root > 0 ? +1 : -1);
    out.star_phi = hodge_star(*out.g, out.phi);
    return out;
}

}  // namespace

G2Data g2_metric(const KForm<double>& phi) { return g2_metric_common(phi, std::nullopt); }

G2Data g2_metric(const KForm<Scalar>& phi) {
    if (phi.n() != 7 || phi.degree() != 3)
        throw DimensionMismatch("g2_metric: need a 3-form on R^7");
    return g2_metric_common(to_double(phi), bphi_matrix(phi));
}

namespace {

G2Torsion g2_torsion_common(const LieAlgebra& L, const KForm<double>& phi_f, bool closed,
                            double tol) {
    if (!closed) throw NotClosed("g2_torsion: d phi != 0");
    G2Torsion out;
    out.data = g2_metric(phi_f);
    if (!out.data.definite) throw NotDefiniteError("g2_torsion: phi is not definite");
    const Metric& g = *out.data.g;

    const KForm<double> dstar = L.d(out.data.star_phi);
    out.tau = -hodge_star(g, dstar);
    out.tau_norm2 = gram_inner(g, out.tau, out.tau);

    const double scale = std::max(1.0, max_abs_coeff(dstar));
    out.residual_wedge = max_abs_coeff(dstar - wedge(out.tau, out.data.phi)) / scale;
    out.residual_type14 =
        max_abs_coeff(wedge(out.tau, out.data.phi) + hodge_star(g, out.tau)) / scale;
    (void)tol;
    return out;
}

}  // namespace

G2Torsion g2_torsion(const LieAlgebra& L, const KForm<Scalar>& phi, double tol) {
    if (L.dim() != 7) throw DimensionMismatch("g2_torsion: need a 7-dimensional algebra");
    return g2_torsion_common(L, to_double(phi), L.d(phi).is_zero(), tol);
}

G2Torsion g2_torsion(const LieAlgebra& L, const KForm<double>& phi, double tol) {
    if (L.dim() != 7) throw DimensionMismatch("g2_torsion: need a 7-dimensional algebra");
    const bool closed = max_abs_coeff(L.d(phi)) <= tol * std::max(1.0, max_abs_coeff(phi));
    return g2_torsion_common(L, phi, closed, tol);
}

SU3Data su3_from_pair(const KForm<double>& omega, const KForm<double>& psip, bool normalize,
                      double tol) {
    if (omega.n() != 6 || omega.degree() != 2 || psip.n() != 6 || psip.degree() != 3)
        throw DimensionMismatch("su3_from_pair: need a 2-form and a 3-form on R^6");
    const double scale = std::max({1.0, max_abs_coeff(omega), max_abs_coeff(psip)});
    if (max_abs_coeff(wedge(omega, psip)) > tol * scale * scale)
        throw NotCompatible("su3_from_pair: omega ^ psi+ != 0");

    const KForm<double> om3 = wedge(omega, wedge(omega, omega));
    const double om3_top = om3.coeff((Mask(1) << 6) - 1);
    if (om3_top == 0.0) throw NotCompatible("su3_from_pair: omega is degenerate");

    auto an = analyze_definite3(psip, om3);
    if (!an.definite) throw NotDefiniteError("su3_from_pair: psi+ is not definite");

    KForm<double> psi = psip;
    if (normalize) {
        // 3 s^2 psi+ ^ psi- = 2 omega^3  =>  s = sqrt(2 om3 / (3 psi+ ^ psi-))
        const KForm<double> pm = substitute(an.J, psi);
        const double val = wedge(psi, pm).coeff((Mask(1) << 6) - 1);
        const double ratio = 2.0 * om3_top / (3.0 * val);
        if (!(ratio > 0.0)) throw NotCompatible("su3_from_pair: wrong normalization sign");
        psi = std::sqrt(ratio) * psi;
    }
    const KForm<double> psim = substitute(an.J, psi);
    const double norm_residual =
        std::abs(wedge(3.0 * psi, psim).coeff((Mask(1) << 6) - 1) - 2.0 * om3_top);
    if (norm_residual > 1e-8 * std::max(1.0, std::abs(om3_top)))
        throw NotCompatible("su3_from_pair: 3 psi+ ^ psi- != 2 omega^3");

    // g(v, w) = omega(v, Jw)
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(6, 6);
    for (const auto& [m, v] : omega.coeffs()) {
        const int i = std::countr_zero(m);
        const int j = std::countr_zero(m & (m - 1));
        W(i, j) = v;
        W(j, i) = -v;
    }
    Eigen::MatrixXd G = W * eigen_of(an.J);
    if ((G - G.transpose()).norm() > 1e-7 * (1 + G.norm()))
        throw NotCompatible("su3_from_pair: induced form is not symmetric");
    G = 0.5 * (G + G.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
        throw NotPositive("su3_from_pair: induced metric is not positive-definite");

    Metric g(G, om3_top > 0 ? +1 : -1);
    return SU3Data(omega, psi, psim, an.J, g);
}

KForm<double> j_act(const SU3Data& S, const KForm<double>& beta) {
    return substitute(S.J, beta);
}

Deg2Components form_type_project2(const SU3Data& S, const KForm<double>& beta) {
    if (beta.degree() != 2) throw DegreeMismatch("form_type_project2: need a 2-form");
    Deg2Components out;
    const double c = gram_inner(S.g, beta, S.omega) / gram_inner(S.g, S.omega, S.omega);
    out.p1 = c * S.omega;
    out.p6 = 0.5 * (beta - j_act(S, beta));
    out.p8 = beta - out.p1 - out.p6;
    return out;
}

std::vector<KForm<double>> lambda2_8_basis(const SU3Data& S) {
    // project the 15 monomials onto Lambda^2_8, keep a max-rank subset
    std::vector<KForm<double>> cands;
    Eigen::MatrixXd coords(15, 15);
    int col = 0;
    for (Mask m : basis_masks(6, 2)) {
        KForm<double> mono(6, 2);
        mono.add_term(m, 1.0);
        auto p8 = form_type_project2(S, mono).p8;
        auto v = p8.to_vector();
        for (int r = 0; r < 15; ++r) coords(r, col) = v[r];
        cands.push_back(std::move(p8));
        ++col;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(coords);
    qr.setThreshold(1e-9);
    const int rank = static_cast<int>(qr.rank());
    if (rank != 8) throw Error("lambda2_8_basis: unexpected rank " + std::to_string(rank));
    std::vector<KForm<double>> basis;
    for (int i = 0; i < rank; ++i)
        basis.push_back(cands[qr.colsPermutation().indices()(i)]);
    return basis;
}

namespace {

/// Least-squares coefficients of target against the span of basis forms,
/// via the Gram matrix of the metric inner product.
std::vector<double> gram_project(const Metric& g, const std::vector<KForm<double>>& basis,
                                 const KForm<double>& target) {
    const int d = static_cast<int>(basis.size());
    Eigen::MatrixXd G(d, d);
    Eigen::VectorXd rhs(d);
    for (int i = 0; i < d; ++i) {
        rhs(i) = gram_inner(g, target, basis[i]);
        for (int j = 0; j < d; ++j) G(i, j) = gram_inner(g, basis[i], basis[j]);
    }
    Eigen::VectorXd c = G.ldlt().solve(rhs);
    return vec_of(c);
}

}  // namespace

Deg3Components form_type_project3(const SU3Data& S, const KForm<double>& beta) {
    if (beta.degree() != 3) throw DegreeMismatch("form_type_project3: need a 3-form");
    Deg3Components out;
    out.c_psip = gram_inner(S.g, beta, S.psip) / gram_inner(S.g, S.psip, S.psip);
    out.c_psim = gram_inner(S.g, beta, S.psim) / gram_inner(S.g, S.psim, S.psim);

    std::vector<KForm<double>> basis6;
    for (int i = 0; i < 6; ++i) {
        KForm<double> ei(6, 1);
        ei.add_term(Mask(1) << i, 1.0);
        basis6.push_back(wedge(ei, S.omega));
    }
    const auto c = gram_project(S.g, basis6, beta);
    out.alpha = KForm<double>(6, 1);
    out.p6 = KForm<double>(6, 3);
    for (int i = 0; i < 6; ++i) {
        if (c[i] == 0.0) continue;
        out.alpha.add_term(Mask(1) << i, c[i]);
        out.p6 = out.p6 + c[i] * basis6[i];
    }
    out.p12 = beta - out.c_psip * S.psip - out.c_psim * S.psim - out.p6;
    return out;
}

SU3Torsion su3_torsion(const LieAlgebra& h, const SU3Data& S, double tol) {
    if (h.dim() != 6) throw DimensionMismatch("su3_torsion: need a 6-dimensional algebra");
    SU3Torsion out;
    const Metric& g = S.g;
    const KForm<double> om2 = wedge(S.omega, S.omega);
    const KForm<double> dom = h.d(S.omega);
    const KForm<double> dpsip = h.d(S.psip);
    const KForm<double> dpsim = h.d(S.psim);
    const auto b8 = lambda2_8_basis(S);

    // d psi+ = w0p omega^2 + w2p ^ omega + w1 ^ psi+
    out.w0p = gram_inner(g, dpsip, om2) / gram_inner(g, om2, om2);
    std::vector<KForm<double>> b46;
    for (int i = 0; i < 6; ++i) {
        KForm<double> ei(6, 1);
        ei.add_term(Mask(1) << i, 1.0);
        b46.push_back(wedge(ei, S.psip));
    }
    {
        const auto c = gram_project(g, b46, dpsip);
        out.w1 = KForm<double>(6, 1);
        for (int i = 0; i < 6; ++i)
            if (c[i] != 0.0) out.w1.add_term(Mask(1) << i, c[i]);
    }
    std::vector<KForm<double>> b48;
    for (const auto& b : b8) b48.push_back(wedge(b, S.omega));
    {
        const auto c = gram_project(g, b48, dpsip);
        out.w2p = KForm<double>(6, 2);
        for (std::size_t a = 0; a < b8.size(); ++a) out.w2p = out.w2p + c[a] * b8[a];
    }

    // d psi- = w0m omega^2 + w2m ^ omega + J w1 ^ psi+
    out.w0m = gram_inner(g, dpsim, om2) / gram_inner(g, om2, om2);
    {
        const auto c = gram_project(g, b48, dpsim);
        out.w2m = KForm<double>(6, 2);
        for (std::size_t a = 0; a < b8.size(); ++a) out.w2m = out.w2m + c[a] * b8[a];
    }

    // d omega = -3/2 w0m psi+ + 3/2 w0p psi- + w3 + nu1 ^ omega
    const auto dc = form_type_project3(S, dom);
    out.nu1 = dc.alpha;
    out.w3 = dc.p12;

    // reconstruction residuals
    const double scale =
        std::max({1.0, max_abs_coeff(dom), max_abs_coeff(dpsip), max_abs_coeff(dpsim)});
    const KForm<double> r1 =
        dom - (-1.5 * out.w0m) * S.psip - (1.5 * out.w0p) * S.psim - out.w3 -
        wedge(out.nu1, S.omega);
    const KForm<double> r2 =
        dpsip - out.w0p * om2 - wedge(out.w2p, S.omega) - wedge(out.w1, S.psip);
    const KForm<double> r3 = dpsim - out.w0m * om2 - wedge(out.w2m, S.omega) -
                             wedge(j_act(S, out.w1), S.psip);
    out.residual =
        std::max({max_abs_coeff(r1), max_abs_coeff(r2), max_abs_coeff(r3)}) / scale;
    if (out.residual > tol)
        throw ResidualTooLarge("su3_torsion: torsion forms do not reconstruct the input (" +
                               std::to_string(out.residual) + ")");
    return out;
}

CentralSplit split_along_center(const LieAlgebra& L, const KForm<Scalar>& phi,
                                const ExactVector& z, double tol) {
    if (L.dim() != 7) throw DimensionMismatch("split_along_center: need dimension 7");
    if (static_cast<int>(z.size()) != 7) throw DimensionMismatch("split_along_center: bad z");
    bool z_zero = true;
    for (const auto& c : z) z_zero = z_zero && c.is_zero();
    if (z_zero || !is_central(L, z)) throw NotCentral("split_along_center: z is not central");
    if (!L.d(phi).is_zero()) throw NotClosed("split_along_center: d phi != 0");

    AdaptedBasis adapted = adapt_basis_last(L, z);
    const auto& new_structure = adapted.algebra.structure();

    std::vector<KForm<Scalar>> h_structure;
    for (int a = 0; a < 6; ++a) h_structure.push_back(restrict_form(new_structure[a], 6));
    LieAlgebra h(h_structure);

    CentralSplit out(adapted.algebra, std::move(h));
    out.phi_adapted = substitute(adapted.change, phi);
    out.omega0_exact = restrict_form(new_structure[6], 6);

    const KForm<Scalar> omt7 = interior_basis(6, out.phi_adapted);
    out.omega_tilde_exact = restrict_form(omt7, 6);
    KForm<Scalar> theta_e(7, 1);
    theta_e.add_term(Mask(1) << 6, Scalar(1));
    out.rho_exact = restrict_form(out.phi_adapted - wedge(omt7, theta_e), 6);

    out.g2 = g2_metric(out.phi_adapted);
    if (!out.g2.definite) throw NotDefiniteError("split_along_center: phi is not definite");
    const Metric& gphi = *out.g2.g;

    const double u2 = gphi.matrix()(6, 6);
    out.u = std::sqrt(u2);
    out.theta = to_double(theta_e);
    Eigen::VectorXd zvec = Eigen::VectorXd::Zero(7);
    zvec[6] = 1.0;
    out.eta = (1.0 / u2) * musical_flat(gphi, zvec);
    out.eta_h = drop_leg(out.eta, 6);

    out.omega = (1.0 / out.u) * to_double(out.omega_tilde_exact);
    out.psip = to_double(out.rho_exact) -
               out.u * wedge(out.omega, restrict_form(out.eta_h, 6));
    out.su3.emplace(su3_from_pair(out.omega, out.psip, false, tol));
    return out;
}

}  // namespace g2cal
