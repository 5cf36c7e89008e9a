#ifndef G2CAL_EXTENSION_HPP
#define G2CAL_EXTENSION_HPP

#include <cstdint>
#include <optional>

#include "g2cal/g2su3.hpp"
#include "g2cal/liealg.hpp"

namespace g2cal {

/// Central extension g = h + R z of (h, omega0): brackets are twisted by
/// -omega0(x,y) z and z is appended as the last basis vector e_7 with
/// theta = e^7, so d theta = omega0 on g.
struct ExtensionData {
    LieAlgebra h;
    KForm<Scalar> omega0;
    LieAlgebra g;
    int z_index = 6;  // 0-based slot of z
    std::vector<ExactVector> center_of_g;

    ExtensionData(LieAlgebra h, KForm<Scalar> omega0, LieAlgebra g)
        : h(std::move(h)), omega0(std::move(omega0)), g(std::move(g)) {}
};

ExtensionData central_extension(const LieAlgebra& h, const KForm<Scalar>& omega0);

/// Inverse of central_extension along a central z: the quotient bracket on
/// the remaining basis vectors together with omega0 = d theta restricted.
struct SplitCentral {
    LieAlgebra g_adapted;
    LieAlgebra h;
    KForm<Scalar> omega0;
    ExactMatrix basis_change;

    SplitCentral(LieAlgebra g_adapted, LieAlgebra h, KForm<Scalar> omega0, ExactMatrix change)
        : g_adapted(std::move(g_adapted)), h(std::move(h)), omega0(std::move(omega0)),
          basis_change(std::move(change)) {}
};

SplitCentral split_central(const LieAlgebra& g, const ExactVector& z);

/// True iff d theta restricted to the complement of the central z is a
/// symplectic form, equivalently theta ^ (d theta)^3 != 0 (exact).
bool is_contactization(const LieAlgebra& g, const ExactVector& z);

/// Itemized verification of the closed-G2 construction data on a
/// six-dimensional algebra: omega0 and omega-tilde closed, rho definite,
/// omega-tilde taming for J_rho (one of the two orientations), and
/// d rho = -omega_tilde ^ omega0 exactly. On success the closed 3-form
/// phi = omega_tilde ^ theta + rho on the central extension is returned
/// with d phi = 0 certified exactly.
struct ConstructionReport {
    bool omega0_closed = false;
    bool omegatilde_closed = false;
    bool omegatilde_nondegenerate = false;
    bool rho_definite = false;
    bool tamed = false;
    int taming_orientation = 0;  // +1 or -1 when tamed
    bool drho_matches = false;
    KForm<Scalar> drho_residual;  // d rho + omega_tilde ^ omega0
    bool ok = false;
    std::optional<ExtensionData> extension;
    KForm<Scalar> phi;  // on the extension when ok
};

ConstructionReport verify_construction(const LieAlgebra& h, const KForm<Scalar>& omega0,
                                       const KForm<Scalar>& omegatilde,
                                       const KForm<Scalar>& rho);

/// Search for a closed non-degenerate 2-form omega-tilde on h such that
/// omega_tilde ^ omega0 is exact. The solution space is computed exactly;
/// within it, non-degeneracy is decided by the cubic Pfaffian: the
/// identically-zero certificate checks every top-degree triple product
/// exactly, and a witness is drawn from seeded rational sample points and
/// re-verified exactly.
struct ObstructionResult {
    bool found = false;
    KForm<Scalar> witness;
    std::size_t solution_space_dim = 0;
    bool pfaffian_identically_zero = false;
    std::uint64_t seed = 0;
};

ObstructionResult obstruction_search(const LieAlgebra& h, const KForm<Scalar>& omega0,
                                     std::uint64_t seed = 0, int trials = 64);

/// Integrality certificate for exp(t0 D) conjugated by E (the lattice
/// criterion for almost-nilpotent groups). D must be a derivation of h.
struct LatticeCheck {
    double t0 = 0.0;
    bool integer = false;
    Eigen::MatrixXd expm;       // exp(t0 D)
    Eigen::MatrixXd B;          // E exp(t0 D) E^{-1}
    std::vector<std::vector<long long>> B_rounded;
    double max_deviation = 0.0;
};

LatticeCheck lattice_criterion(const LieAlgebra& h, const ExactMatrix& D, double t0,
                               const ExactMatrix& E, double tol = 1e-8);

/// The Pfaffian multiple: top coefficient of omega^(n/2) (n even), which
/// vanishes iff the 2-form is degenerate.
Scalar pfaffian_top(const KForm<Scalar>& omega);

}  // namespace g2cal

#endif
