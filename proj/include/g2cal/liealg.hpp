#ifndef G2CAL_LIEALG_HPP
#define G2CAL_LIEALG_HPP

#include <memory>
#include <string>
#include <vector>

#include "g2cal/kform.hpp"
#include "g2cal/matrix.hpp"

namespace g2cal {

struct SeriesFlags {
    bool nilpotent = false;
    bool solvable = false;
    bool two_step_solvable = false;  // derived subalgebra abelian
};

class LieAlgebra;

/// Exact basis of Der(g); every element satisfies the Leibniz rule exactly.
struct DerivationSpace {
    std::vector<ExactMatrix> basis;
    std::size_t dimension() const { return basis.size(); }
};

/// Exact basis of H^k with closed representatives independent mod exact forms.
struct CohomologyBasis {
    int degree = 0;
    std::vector<KForm<Scalar>> representatives;
    std::size_t dimension() const { return representatives.size(); }
};

/// Lie algebra given by its structure equations (d eps^1, ..., d eps^n),
/// with the convention d eps^k(x,y) = -eps^k([x,y]). Construction validates
/// d^2 = 0 (the Jacobi identity) exactly and caches the Chevalley-Eilenberg
/// matrices on every degree. Immutable afterwards.
class LieAlgebra {
public:
    explicit LieAlgebra(std::vector<KForm<Scalar>> structure_two_forms);

    int dim() const { return n_; }
    const std::vector<KForm<Scalar>>& structure() const { return deps_; }

    /// Structure constant c^k_{ij} for [e_i, e_j] = sum_k c^k_{ij} e_k (0-based).
    Scalar c(int k, int i, int j) const;

    /// [x, y] in coordinates.
    ExactVector bracket(const ExactVector& x, const ExactVector& y) const;

    /// Matrix of ad_{e_i}.
    ExactMatrix ad_basis(int i) const;

    /// Chevalley-Eilenberg differential; exact and floating-point overloads.
    KForm<Scalar> d(const KForm<Scalar>& b) const;
    KForm<double> d(const KForm<double>& b) const;

    /// Matrix of d : Lambda^k -> Lambda^{k+1} in the basis_masks ordering.
    const ExactMatrix& d_matrix(int k) const;

    bool is_unimodular() const;
    std::vector<ExactVector> center() const;
    SeriesFlags series_flags() const;
    DerivationSpace derivations() const;
    CohomologyBasis cohomology(int k) const;

    /// Basis of the closed k-forms (ker d_k).
    std::vector<KForm<Scalar>> closed_forms(int k) const;
    /// Basis of the exact k-forms (im d_{k-1}).
    std::vector<KForm<Scalar>> exact_forms(int k) const;
    std::size_t betti(int k) const { return cohomology(k).dimension(); }

    /// True when b is exact, i.e. lies in im d_{k-1}, decided exactly.
    bool is_exact(const KForm<Scalar>& b) const;

private:
    int n_;
    std::vector<KForm<Scalar>> deps_;
    std::vector<ExactMatrix> dmat_;          // d on Lambda^k, k = 0..n
    std::vector<Matrix<double>> dmat_f_;     // same, floating-point

    void build_d_matrices();
    void validate_jacobi() const;
};

/// Parses "(expr, ..., expr)" and validates the Jacobi identity.
LieAlgebra parse_structure_equations(const std::string& text);

/// The same algebra in the basis (remaining standard vectors..., z), with z
/// last. `change` holds the new basis vectors as columns (old coordinates).
struct AdaptedBasis {
    LieAlgebra algebra;
    ExactMatrix change;

    AdaptedBasis(LieAlgebra algebra, ExactMatrix change)
        : algebra(std::move(algebra)), change(std::move(change)) {}
};

AdaptedBasis adapt_basis_last(const LieAlgebra& L, const ExactVector& z);

/// True when z lies in the center (exact).
bool is_central(const LieAlgebra& L, const ExactVector& z);

/// Bracket of two exact subspaces, returned as a basis of the span.
std::vector<ExactVector> subspace_bracket(const LieAlgebra& L,
                                          const std::vector<ExactVector>& a,
                                          const std::vector<ExactVector>& b);

}  // namespace g2cal

#endif
