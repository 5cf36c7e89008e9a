#include "g2cal/extension.hpp"

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

namespace g2cal {

ExtensionData central_extension(const LieAlgebra& h, const KForm<Scalar>& omega0) {
    if (h.dim() != 6) throw DimensionMismatch("central_extension: h must be 6-dimensional");
    if (omega0.n() != 6 || omega0.degree() != 2)
        throw DimensionMismatch("central_extension: omega0 must be a 2-form on h");
    if (!h.d(omega0).is_zero()) throw NotClosed2Form("central_extension: d omega0 != 0");

    std::vector<KForm<Scalar>> eqs;
    for (const auto& f : h.structure()) eqs.push_back(extend_form(f, 7));
    eqs.push_back(extend_form(omega0, 7));
    ExtensionData out(h, omega0, LieAlgebra(std::move(eqs)));
    out.center_of_g = out.g.center();
    return out;
}

SplitCentral split_central(const LieAlgebra& g, const ExactVector& z) {
    if (!is_central(g, z)) throw NotCentral("split_central: z is not central");
    bool z_zero = true;
    for (const auto& c : z) z_zero = z_zero && c.is_zero();
    if (z_zero) throw NotCentral("split_central: z = 0");

    AdaptedBasis adapted = adapt_basis_last(g, z);
    const int n = g.dim();
    std::vector<KForm<Scalar>> h_eqs;
    for (int a = 0; a + 1 < n; ++a)
        h_eqs.push_back(restrict_form(adapted.algebra.structure()[a], n - 1));
    KForm<Scalar> omega0 = restrict_form(adapted.algebra.structure()[n - 1], n - 1);
    return SplitCentral(adapted.algebra, LieAlgebra(std::move(h_eqs)), std::move(omega0),
                        adapted.change);
}

bool is_contactization(const LieAlgebra& g, const ExactVector& z) {
    SplitCentral sc = split_central(g, z);
    if (sc.h.dim() % 2 != 0) return false;
    return !pfaffian_top(sc.omega0).is_zero();
}

Scalar pfaffian_top(const KForm<Scalar>& omega) {
    if (omega.degree() != 2) throw DegreeMismatch("pfaffian_top: need a 2-form");
    if (omega.n() % 2 != 0) throw DimensionMismatch("pfaffian_top: need even dimension");
    KForm<Scalar> power = omega;
    for (int i = 1; i < omega.n() / 2; ++i) power = wedge(power, omega);
    return power.coeff((Mask(1) << omega.n()) - 1);
}

ConstructionReport verify_construction(const LieAlgebra& h, const KForm<Scalar>& omega0,
                                       const KForm<Scalar>& omegatilde,
                                       const KForm<Scalar>& rho) {
    if (h.dim() != 6) throw DimensionMismatch("verify_construction: h must be 6-dimensional");
    ConstructionReport rep;
    rep.omega0_closed = h.d(omega0).is_zero();
    rep.omegatilde_closed = h.d(omegatilde).is_zero();
    rep.omegatilde_nondegenerate = !pfaffian_top(omegatilde).is_zero();

    KForm<Scalar> Om(6, 6);
    Om.add_term((Mask(1) << 6) - 1, Scalar(1));
    auto an = analyze_definite3(rho, Om);
    rep.rho_definite = an.definite;
    if (rep.rho_definite) {
        auto res = taming_check(to_double(omegatilde), an.J);
        if (res.verdict == TamingResult::Tamed) {
            rep.tamed = true;
            rep.taming_orientation = +1;
        } else {
            Matrix<double> Jneg = an.J;
            for (std::size_t i = 0; i < Jneg.rows(); ++i)
                for (std::size_t j = 0; j < Jneg.cols(); ++j) Jneg(i, j) = -Jneg(i, j);
            auto res2 = taming_check(to_double(omegatilde), Jneg);
            if (res2.verdict == TamingResult::Tamed) {
                rep.tamed = true;
                rep.taming_orientation = -1;
            }
        }
    }

    rep.drho_residual = h.d(rho) + wedge(omegatilde, omega0);
    rep.drho_matches = rep.drho_residual.is_zero();

    rep.ok = rep.omega0_closed && rep.omegatilde_closed && rep.omegatilde_nondegenerate &&
             rep.rho_definite && rep.tamed && rep.drho_matches;
    if (rep.ok) {
        rep.extension = central_extension(h, omega0);
        KForm<Scalar> theta(7, 1);
        theta.add_term(Mask(1) << 6, Scalar(1));
        rep.phi = wedge(extend_form(omegatilde, 7), theta) + extend_form(rho, 7);
        if (!rep.extension->g.d(rep.phi).is_zero())
            throw Error("verify_construction: internal, d phi != 0 on the extension");
    }
    return rep;
}

namespace {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    return Rational(num(rng));
}

}  // namespace

ObstructionResult obstruction_search(const LieAlgebra& h, const KForm<Scalar>& omega0,
                                     std::uint64_t seed, int trials) {
    if (h.dim() != 6) throw DimensionMismatch("obstruction_search: h must be 6-dimensional");
    if (!h.d(omega0).is_zero()) throw NotClosed2Form("obstruction_search: d omega0 != 0");
    ObstructionResult out;
    out.seed = seed;

    const auto closed = h.closed_forms(2);
    const std::size_t nz = closed.size();
    const std::size_t dim4 = basis_masks(6, 4).size();

    // exactness of zeta_a ^ omega0 is a linear condition modulo im(d_3)
    std::vector<ExactVector> image;
    {
        const ExactMatrix& d3 = h.d_matrix(3);
        for (std::size_t c = 0; c < d3.cols(); ++c) image.push_back(d3.col(c));
        auto keep = independent_subset({}, image);
        std::vector<ExactVector> reduced;
        for (auto i : keep) reduced.push_back(image[i]);
        image = std::move(reduced);
    }
    ExactMatrix M(dim4, nz + image.size());
    for (std::size_t a = 0; a < nz; ++a) {
        const auto v = wedge(closed[a], omega0).to_vector();
        for (std::size_t r = 0; r < dim4; ++r) M(r, a) = v[r];
    }
    for (std::size_t b = 0; b < image.size(); ++b)
        for (std::size_t r = 0; r < dim4; ++r) M(r, nz + b) = -image[b][r];

    // kernel, projected onto the closed-form coordinates
    std::vector<ExactVector> tspace;
    for (const auto& k : exact_kernel(M)) tspace.push_back(ExactVector(k.begin(), k.begin() + nz));
    {
        auto keep = independent_subset({}, tspace);
        std::vector<ExactVector> reduced;
        for (auto i : keep) reduced.push_back(tspace[i]);
        tspace = std::move(reduced);
    }
    out.solution_space_dim = tspace.size();
    if (tspace.empty()) {
        out.pfaffian_identically_zero = true;
        return out;
    }

    std::vector<KForm<Scalar>> xi;
    for (const auto& t : tspace) {
        KForm<Scalar> f(6, 2);
        for (std::size_t a = 0; a < nz; ++a) f = f + t[a] * closed[a];
        xi.push_back(std::move(f));
    }

    // exact certificate: the cubic Pfaffian vanishes identically on the span
    // iff every symmetrized triple top-product vanishes
    bool identically_zero = true;
    for (std::size_t a = 0; a < xi.size() && identically_zero; ++a)
        for (std::size_t b = a; b < xi.size() && identically_zero; ++b)
            for (std::size_t c = b; c < xi.size() && identically_zero; ++c)
                if (!wedge(wedge(xi[a], xi[b]), xi[c]).coeff((Mask(1) << 6) - 1).is_zero())
                    identically_zero = false;
    if (identically_zero) {
        out.pfaffian_identically_zero = true;
        return out;
    }

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto sample = [&](auto&& coeff_of) {
        KForm<Scalar> cand(6, 2);
        for (std::size_t b = 0; b < xi.size(); ++b) cand = cand + coeff_of(b) * xi[b];
        return cand;
    };
    for (int trial = 0; trial < trials; ++trial) {
        KForm<Scalar> cand = sample([&](std::size_t) { return Scalar(random_rational(rng)); });
        if (pfaffian_top(cand).is_zero()) continue;
        // witness re-verification, all exact
        if (!h.d(cand).is_zero()) throw Error("obstruction_search: internal, witness not closed");
        if (!h.is_exact(wedge(cand, omega0)))
            throw Error("obstruction_search: internal, witness wedge not exact");
        out.found = true;
        out.witness = std::move(cand);
        return out;
    }
    // deterministic fallback sweep (the certificate above proved a witness exists)
    for (long code = 1; code < (1L << (2 * xi.size())); ++code) {
        KForm<Scalar> cand =
            sample([&](std::size_t b) { return Scalar(Rational((code >> (2 * b)) & 3)); });
        if (pfaffian_top(cand).is_zero()) continue;
        out.found = true;
        out.witness = std::move(cand);
        return out;
    }
    throw Error("obstruction_search: no witness found despite nonzero Pfaffian");
}

LatticeCheck lattice_criterion(const LieAlgebra& h, const ExactMatrix& D, double t0,
                               const ExactMatrix& E, double tol) {
    const int n = h.dim();
    if (D.rows() != static_cast<std::size_t>(n) || D.cols() != D.rows())
        throw DimensionMismatch("lattice_criterion: D shape mismatch");
    if (E.rows() != static_cast<std::size_t>(n) || E.cols() != E.rows())
        throw DimensionMismatch("lattice_criterion: E shape mismatch");

    // D must be a derivation of h, checked exactly
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ExactVector ei(n), ej(n);
            ei[i] = Scalar(1);
            ej[j] = Scalar(1);
            auto br = h.bracket(ei, ej);
            ExactVector Dbr(n), Dei(n), Dej(n);
            for (int r = 0; r < n; ++r) {
                Scalar a(0), b(0), bb(0);
                for (int c = 0; c < n; ++c) {
                    a += D(r, c) * br[c];
                    b += D(r, c) * ei[c];
                    bb += D(r, c) * ej[c];
                }
                Dbr[r] = a;
                Dei[r] = b;
                Dej[r] = bb;
            }
            auto lhs = h.bracket(Dei, ej);
            auto rhs = h.bracket(ei, Dej);
            for (int r = 0; r < n; ++r)
                if (Dbr[r] != lhs[r] + rhs[r])
                    throw Error("lattice_criterion: D is not a derivation of h");
        }

    LatticeCheck out;
    out.t0 = t0;
    Eigen::MatrixXd Dm = eigen_of(to_double(D));
    Eigen::MatrixXd Em = eigen_of(to_double(E));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Em);
    if (!lu.isInvertible()) throw SingularE("lattice_criterion: E is singular");

    out.expm = (t0 * Dm).exp();
    out.B = Em * out.expm * lu.inverse();
    out.max_deviation = 0.0;
    out.B_rounded.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double r = std::round(out.B(i, j));
            out.B_rounded[i][j] = static_cast<long long>(r);
            out.max_deviation = std::max(out.max_deviation, std::abs(out.B(i, j) - r));
        }
    out.integer = out.max_deviation < tol;
    return out;
}

}  // namespace g2cal
