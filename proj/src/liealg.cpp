#include "g2cal/liealg.hpp"

#include <algorithm>

#include "g2cal/seqparse.hpp"

namespace g2cal {

LieAlgebra::LieAlgebra(std::vector<KForm<Scalar>> structure_two_forms)
    : n_(static_cast<int>(structure_two_forms.size())), deps_(std::move(structure_two_forms)) {
    if (n_ < 1 || n_ > 8) throw DimensionMismatch("Lie algebra dimension must be 1..8");
    for (const auto& f : deps_) {
        if (f.n() != n_ || f.degree() != 2)
            throw DimensionMismatch("structure equations must be 2-forms on R^n");
    }
    build_d_matrices();
    validate_jacobi();
}

Scalar LieAlgebra::c(int k, int i, int j) const {
    // d eps^k(e_i, e_j) = -eps^k([e_i, e_j])
    if (i == j) return Scalar(0);
    const Mask m = (Mask(1) << i) | (Mask(1) << j);
    Scalar v = deps_[k].coeff(m);
    if (i > j) v = -v;
    return -v;
}

ExactVector LieAlgebra::bracket(const ExactVector& x, const ExactVector& y) const {
    if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
        throw DimensionMismatch("bracket: vector dimension mismatch");
    ExactVector out(n_);
    for (int k = 0; k < n_; ++k) {
        // -d eps^k(x, y)
        Scalar acc(0);
        for (const auto& [m, v] : deps_[k].coeffs()) {
            const int i = std::countr_zero(m);
            const int j = std::countr_zero(m & (m - 1));
            acc += v * (x[i] * y[j] - x[j] * y[i]);
        }
        out[k] = -acc;
    }
    return out;
}

ExactMatrix LieAlgebra::ad_basis(int i) const {
    ExactMatrix A(n_, n_);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) A(k, j) = c(k, i, j);
    return A;
}

void LieAlgebra::build_d_matrices() {
    dmat_.resize(n_ + 1);
    dmat_f_.resize(n_ + 1);
    for (int k = 0; k <= n_; ++k) {
        const auto dom = basis_masks(n_, k);
        const auto cod = basis_masks(n_, std::min(k + 1, n_));
        const std::size_t rows = (k == n_) ? 1 : cod.size();
        ExactMatrix M(rows, dom.size());
        if (k < n_) {
            for (std::size_t col = 0; col < dom.size(); ++col) {
                // d(e^I) = sum_j (-1)^{pos(j)} e^{I \ i_j} wedge d eps^{i_j}
                KForm<Scalar> image(n_, k + 1);
                Mask rest = dom[col];
                int pos = 0;
                while (rest) {
                    const int i = std::countr_zero(rest);
                    rest &= rest - 1;
                    KForm<Scalar> others(n_, k - 1);
                    others.add_term(dom[col] ^ (Mask(1) << i),
                                    (pos & 1) ? Scalar(-1) : Scalar(1));
                    image = image + wedge(deps_[i], others);
                    ++pos;
                }
                const auto v = image.to_vector();
                for (std::size_t row = 0; row < v.size(); ++row) M(row, col) = v[row];
            }
        }
        dmat_[k] = M;
        dmat_f_[k] = to_double(M);
    }
}

namespace {

/// d(e^I) with I empty is zero; the generic case is handled through the
/// cached matrices, so this only exists for degree bookkeeping.
template <typename T, typename MatT>
KForm<T> apply_d(const LieAlgebra& L, const MatT& M, const KForm<T>& b) {
    const int k = b.degree();
    KForm<T> out(L.dim(), std::min(k + 1, L.dim()));
    if (k >= L.dim()) return out;
    const auto vin = b.to_vector();
    std::vector<T> vout(M.rows(), T{});
    for (std::size_t col = 0; col < vin.size(); ++col) {
        if (detail::coeff_is_zero(vin[col])) continue;
        for (std::size_t row = 0; row < M.rows(); ++row) {
            if (detail::coeff_is_zero(M(row, col))) continue;
            vout[row] = vout[row] + M(row, col) * vin[col];
        }
    }
    return KForm<T>::from_vector(L.dim(), k + 1, vout);
}

}  // namespace

KForm<Scalar> LieAlgebra::d(const KForm<Scalar>& b) const {
    if (b.n() != n_) throw DimensionMismatch("d: form lives on a different space");
    return apply_d(*this, dmat_[b.degree()], b);
}

KForm<double> LieAlgebra::d(const KForm<double>& b) const {
    if (b.n() != n_) throw DimensionMismatch("d: form lives on a different space");
    return apply_d(*this, dmat_f_[b.degree()], b);
}

const ExactMatrix& LieAlgebra::d_matrix(int k) const { return dmat_.at(k); }

void LieAlgebra::validate_jacobi() const {
    for (int k = 0; k < n_; ++k) {
        KForm<Scalar> dd = d(deps_[k]);
        if (dd.is_zero()) continue;
        const Mask m = dd.coeffs().begin()->first;
        int idx[3], p = 0;
        for (int i = 0; i < n_ && p < 3; ++i)
            if (m & (Mask(1) << i)) idx[p++] = i + 1;
        throw JacobiFailure("Jacobi identity fails: d^2 eps^" + std::to_string(k + 1) +
                                " has a nonzero e^{" + std::to_string(idx[0]) +
                                std::to_string(idx[1]) + std::to_string(idx[2]) + "} term",
                            idx[0], idx[1], idx[2]);
    }
}

bool LieAlgebra::is_unimodular() const {
    for (int i = 0; i < n_; ++i) {
        Scalar tr(0);
        for (int k = 0; k < n_; ++k) tr += c(k, i, k);
        if (!tr.is_zero()) return false;
    }
    return true;
}

std::vector<ExactVector> LieAlgebra::center() const {
    // v central iff sum_i v_i c^k_{ij} = 0 for all j, k
    ExactMatrix M(n_ * n_, n_);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
            for (int i = 0; i < n_; ++i) M(j * n_ + k, i) = c(k, i, j);
    return exact_kernel(M);
}

namespace {

std::vector<ExactVector> reduce_span(std::vector<ExactVector> vecs) {
    auto idx = independent_subset({}, vecs);
    std::vector<ExactVector> out;
    for (auto i : idx) out.push_back(std::move(vecs[i]));
    return out;
}

}  // namespace

std::vector<ExactVector> subspace_bracket(const LieAlgebra& L, const std::vector<ExactVector>& a,
                                          const std::vector<ExactVector>& b) {
    std::vector<ExactVector> gens;
    for (const auto& x : a)
        for (const auto& y : b) gens.push_back(L.bracket(x, y));
    return reduce_span(std::move(gens));
}

SeriesFlags LieAlgebra::series_flags() const {
    std::vector<ExactVector> whole;
    for (int i = 0; i < n_; ++i) {
        ExactVector e(n_);
        e[i] = Scalar(1);
        whole.push_back(e);
    }
    SeriesFlags flags;

    // lower central series
    auto lcs = subspace_bracket(*this, whole, whole);
    for (int step = 0; step < n_ + 1 && !lcs.empty(); ++step) {
        auto next = subspace_bracket(*this, whole, lcs);
        if (next.size() == lcs.size()) break;
        lcs = next;
    }
    flags.nilpotent = lcs.empty();

    // derived series
    auto der = subspace_bracket(*this, whole, whole);
    flags.two_step_solvable = subspace_bracket(*this, der, der).empty();
    for (int step = 0; step < n_ + 1 && !der.empty(); ++step) {
        auto next = subspace_bracket(*this, der, der);
        if (next.size() == der.size()) break;
        der = next;
    }
    flags.solvable = der.empty();
    return flags;
}

DerivationSpace LieAlgebra::derivations() const {
    // unknowns D_{pq}, p row, q col; Leibniz on each basis pair (i < j):
    //   D [e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] = 0
    const int N = n_ * n_;
    std::vector<ExactVector> rows;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            for (int k = 0; k < n_; ++k) {
                ExactVector row(N);
                // D[e_i,e_j]: component k of D applied to bracket
                for (int l = 0; l < n_; ++l) row[k * n_ + l] += c(l, i, j);
                // -[D e_i, e_j]: D e_i = sum_p D_{pi} e_p
                for (int p = 0; p < n_; ++p) row[p * n_ + i] -= c(k, p, j);
                // -[e_i, D e_j]
                for (int q = 0; q < n_; ++q) row[q * n_ + j] -= c(k, i, q);
                rows.push_back(std::move(row));
            }
    ExactMatrix M(rows.size(), N);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int cidx = 0; cidx < N; ++cidx) M(r, cidx) = rows[r][cidx];

    DerivationSpace space;
    for (const auto& v : exact_kernel(M)) {
        ExactMatrix D(n_, n_);
        for (int p = 0; p < n_; ++p)
            for (int q = 0; q < n_; ++q) D(p, q) = v[p * n_ + q];
        space.basis.push_back(std::move(D));
    }
    return space;
}

std::vector<KForm<Scalar>> LieAlgebra::closed_forms(int k) const {
    if (k < 0 || k > n_) throw DimensionMismatch("closed_forms: degree out of range");
    std::vector<KForm<Scalar>> out;
    for (const auto& v : exact_kernel(dmat_[k])) out.push_back(KForm<Scalar>::from_vector(n_, k, v));
    return out;
}

std::vector<KForm<Scalar>> LieAlgebra::exact_forms(int k) const {
    if (k < 1 || k > n_) return {};
    std::vector<ExactVector> images;
    const ExactMatrix& M = dmat_[k - 1];
    for (std::size_t col = 0; col < M.cols(); ++col) images.push_back(M.col(col));
    images = reduce_span(std::move(images));
    std::vector<KForm<Scalar>> out;
    for (const auto& v : images) out.push_back(KForm<Scalar>::from_vector(n_, k, v));
    return out;
}

bool LieAlgebra::is_exact(const KForm<Scalar>& b) const {
    if (b.n() != n_) throw DimensionMismatch("is_exact: form lives on a different space");
    if (b.is_zero()) return true;
    std::vector<ExactVector> span;
    const ExactMatrix& M = dmat_[b.degree() - 1];
    for (std::size_t col = 0; col < M.cols(); ++col) span.push_back(M.col(col));
    return in_span(span, b.to_vector());
}

CohomologyBasis LieAlgebra::cohomology(int k) const {
    if (k < 0 || k > n_) throw DimensionMismatch("cohomology: degree out of range");
    CohomologyBasis basis;
    basis.degree = k;

    std::vector<ExactVector> exact;
    if (k >= 1) {
        const ExactMatrix& M = dmat_[k - 1];
        for (std::size_t col = 0; col < M.cols(); ++col) exact.push_back(M.col(col));
        exact = reduce_span(std::move(exact));
    }
    std::vector<ExactVector> closed;
    for (const auto& v : exact_kernel(dmat_[k])) closed.push_back(v);

    for (auto idx : independent_subset(exact, closed))
        basis.representatives.push_back(KForm<Scalar>::from_vector(n_, k, closed[idx]));
    return basis;
}

LieAlgebra parse_structure_equations(const std::string& text) {
    return LieAlgebra(parse_structure_tuple(text));
}

bool is_central(const LieAlgebra& L, const ExactVector& z) {
    if (static_cast<int>(z.size()) != L.dim()) throw DimensionMismatch("is_central: bad vector");
    for (int i = 0; i < L.dim(); ++i) {
        ExactVector ei(L.dim());
        ei[i] = Scalar(1);
        for (const auto& c : L.bracket(z, ei))
            if (!c.is_zero()) return false;
    }
    return true;
}

AdaptedBasis adapt_basis_last(const LieAlgebra& L, const ExactVector& z) {
    const int n = L.dim();
    if (static_cast<int>(z.size()) != n) throw DimensionMismatch("adapt_basis_last: bad vector");
    int p = -1;
    for (int i = n - 1; i >= 0; --i)
        if (!z[i].is_zero()) {
            p = i;
            break;
        }
    if (p < 0) throw Error("adapt_basis_last: z = 0");

    ExactMatrix Mb(n, n);  // columns = new basis in old coordinates
    int col = 0;
    for (int i = 0; i < n; ++i) {
        if (i == p) continue;
        Mb(i, col) = Scalar(1);
        ++col;
    }
    for (int i = 0; i < n; ++i) Mb(i, n - 1) = z[i];

    auto inv = exact_solve(Mb, ExactMatrix::identity(n));
    if (!inv.feasible || !inv.kernel.empty())
        throw Error("adapt_basis_last: basis change is singular");
    const ExactMatrix& Minv = inv.particular;

    std::vector<KForm<Scalar>> new_structure;
    for (int a = 0; a < n; ++a) {
        KForm<Scalar> fa(n, 1);
        for (int i = 0; i < n; ++i) fa.add_term(Mask(1) << i, Minv(a, i));
        new_structure.push_back(substitute(Mb, L.d(fa)));
    }
    return AdaptedBasis(LieAlgebra(std::move(new_structure)), std::move(Mb));
}

}  // namespace g2cal
