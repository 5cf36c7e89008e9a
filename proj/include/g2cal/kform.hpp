#ifndef G2CAL_KFORM_HPP
#define G2CAL_KFORM_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "g2cal/errors.hpp"
#include "g2cal/matrix.hpp"
#include "g2cal/scalar.hpp"

namespace g2cal {

/// Increasing multi-index as a bitmask: bit i-1 set means the covector e^i
/// is a factor. Everything here assumes n <= 8, so masks fit in one byte.
using Mask = std::uint32_t;

inline int mask_degree(Mask m) { return std::popcount(m); }

/// Sign of merging the sorted index sets a and b into one sorted set,
/// i.e. (-1)^{#inversions}. The sets must be disjoint.
inline int merge_sign(Mask a, Mask b) {
    int inversions = 0;
    while (b) {
        Mask low = b & (~b + 1);            // lowest set bit of b
        inversions += std::popcount(a & ~(low - 1) & ~low);  // bits of a above it
        b ^= low;
    }
    return (inversions & 1) ? -1 : 1;
}

/// All popcount-k masks on n bits, in increasing numeric order.
std::vector<Mask> basis_masks(int n, int k);

/// Position of `m` within basis_masks(n, degree(m)).
std::size_t mask_index(int n, Mask m);

namespace detail {
template <typename T>
inline bool coeff_is_zero(const T& c) {
    return c == T{};
}
inline bool coeff_is_zero(const Scalar& c) { return c.is_zero(); }
}  // namespace detail

/// Degree-k alternating form on R^n with sparse coefficients.
template <typename T>
class KForm {
public:
    KForm() : n_(0), k_(0) {}
    KForm(int n, int k) : n_(n), k_(k) {
        if (n < 0 || n > 8 || k < 0 || k > n) throw DimensionMismatch("bad form shape");
    }

    int n() const { return n_; }
    int degree() const { return k_; }
    const std::map<Mask, T>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }

    T coeff(Mask m) const {
        auto it = c_.find(m);
        return it == c_.end() ? T{} : it->second;
    }

    /// Adds c * e^{mask}; prunes exact zeros.
    void add_term(Mask m, const T& coeff) {
        if (mask_degree(m) != k_ || (m >> n_) != 0)
            throw DimensionMismatch("term does not match form shape");
        if (detail::coeff_is_zero(coeff)) return;
        auto [it, inserted] = c_.try_emplace(m, coeff);
        if (!inserted) {
            it->second = it->second + coeff;
            if (detail::coeff_is_zero(it->second)) c_.erase(it);
        }
    }

    KForm operator-() const {
        KForm r(n_, k_);
        for (const auto& [m, v] : c_) r.c_.emplace(m, -v);
        return r;
    }

    friend KForm operator+(const KForm& x, const KForm& y) {
        check_same_shape(x, y);
        KForm r = x;
        for (const auto& [m, v] : y.c_) r.add_term(m, v);
        return r;
    }

    friend KForm operator-(const KForm& x, const KForm& y) {
        check_same_shape(x, y);
        KForm r = x;
        for (const auto& [m, v] : y.c_) r.add_term(m, -v);
        return r;
    }

    friend KForm operator*(const T& s, const KForm& x) {
        KForm r(x.n_, x.k_);
        for (const auto& [m, v] : x.c_) r.add_term(m, s * v);
        return r;
    }

    friend bool operator==(const KForm& x, const KForm& y) {
        return x.n_ == y.n_ && x.k_ == y.k_ && x.c_ == y.c_;
    }

    /// Coefficient vector in the basis_masks(n, k) ordering.
    std::vector<T> to_vector() const {
        std::vector<T> v(basis_masks(n_, k_).size(), T{});
        for (const auto& [m, c] : c_) v[mask_index(n_, m)] = c;
        return v;
    }

    static KForm from_vector(int n, int k, const std::vector<T>& v) {
        KForm r(n, k);
        const auto masks = basis_masks(n, k);
        for (std::size_t i = 0; i < masks.size() && i < v.size(); ++i)
            if (!detail::coeff_is_zero(v[i])) r.c_.emplace(masks[i], v[i]);
        return r;
    }

private:
    int n_, k_;
    std::map<Mask, T> c_;

    static void check_same_shape(const KForm& x, const KForm& y) {
        if (x.n_ != y.n_) throw DimensionMismatch("forms live on different spaces");
        if (x.k_ != y.k_) throw DegreeMismatch("forms have different degrees");
    }
};

template <typename T>
KForm<T> wedge(const KForm<T>& x, const KForm<T>& y) {
    if (x.n() != y.n()) throw DimensionMismatch("wedge: forms live on different spaces");
    const int k = x.degree() + y.degree();
    if (k > x.n()) return KForm<T>(x.n(), std::min(k, x.n()));
    KForm<T> r(x.n(), k);
    for (const auto& [ma, va] : x.coeffs())
        for (const auto& [mb, vb] : y.coeffs()) {
            if (ma & mb) continue;
            const int s = merge_sign(ma, mb);
            r.add_term(ma | mb, s > 0 ? va * vb : -(va * vb));
        }
    return r;
}

/// Contraction with the i-th basis vector (0-based).
template <typename T>
KForm<T> interior_basis(int i, const KForm<T>& x) {
    if (i < 0 || i >= x.n()) throw DimensionMismatch("interior: index out of range");
    KForm<T> r(x.n(), x.degree() == 0 ? 0 : x.degree() - 1);
    if (x.degree() == 0) return r;
    const Mask bit = Mask(1) << i;
    for (const auto& [m, v] : x.coeffs()) {
        if (!(m & bit)) continue;
        const int s = (std::popcount(m & (bit - 1)) & 1) ? -1 : 1;
        r.add_term(m ^ bit, s > 0 ? v : -v);
    }
    return r;
}

template <typename T>
KForm<T> interior(const std::vector<T>& v, const KForm<T>& x) {
    if (static_cast<int>(v.size()) != x.n())
        throw DimensionMismatch("interior: vector dimension mismatch");
    KForm<T> r(x.n(), x.degree() == 0 ? 0 : x.degree() - 1);
    for (int i = 0; i < x.n(); ++i) {
        if (detail::coeff_is_zero(v[i])) continue;
        r = r + v[i] * interior_basis(i, x);
    }
    return r;
}

/// Substitution e^i -> sum_j M(i,j) e^j extended multiplicatively; this is
/// the pullback beta(M., ..., M.) for the endomorphism with matrix M.
template <typename T>
KForm<T> substitute(const Matrix<T>& M, const KForm<T>& x) {
    if (M.rows() != static_cast<std::size_t>(x.n()) || M.rows() != M.cols())
        throw DimensionMismatch("substitute: matrix shape mismatch");
    KForm<T> r(x.n(), x.degree());
    for (const auto& [m, v] : x.coeffs()) {
        KForm<T> term(x.n(), 0);
        term.add_term(0, v);
        Mask rest = m;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            KForm<T> line(x.n(), 1);
            for (int j = 0; j < x.n(); ++j)
                if (!detail::coeff_is_zero(M(i, j))) line.add_term(Mask(1) << j, M(i, j));
            term = wedge(term, line);
        }
        r = r + term;
    }
    return r;
}

/// Derivation action A* beta = sum_i beta(..., A arg_i, ...); on 1-forms this
/// is e^i -> sum_j A(i,j) e^j, and it extends as a degree-0 derivation.
template <typename T>
KForm<T> endo_action(const Matrix<T>& A, const KForm<T>& x) {
    if (A.rows() != static_cast<std::size_t>(x.n()) || A.rows() != A.cols())
        throw DimensionMismatch("endo_action: matrix shape mismatch");
    KForm<T> r(x.n(), x.degree());
    for (const auto& [m, v] : x.coeffs()) {
        // replace one factor at a time
        Mask rest = m;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            const Mask others = m ^ (Mask(1) << i);
            const int pos_sign = (std::popcount(m & ((Mask(1) << i) - 1)) & 1) ? -1 : 1;
            for (int j = 0; j < x.n(); ++j) {
                if (detail::coeff_is_zero(A(i, j))) continue;
                const Mask bj = Mask(1) << j;
                if (others & bj) continue;
                const int s = pos_sign * merge_sign(bj, others);
                const T contrib = v * A(i, j);
                r.add_term(bj | others, s > 0 ? contrib : -contrib);
            }
        }
    }
    return r;
}

/// Evaluation beta(v_1, ..., v_k) on column vectors.
template <typename T>
T evaluate(const KForm<T>& x, const std::vector<std::vector<T>>& args) {
    if (static_cast<int>(args.size()) != x.degree())
        throw DegreeMismatch("evaluate: wrong number of arguments");
    KForm<T> cur = x;
    for (const auto& v : args) cur = interior(v, cur);
    return cur.coeff(0);
}

KForm<double> to_double(const KForm<Scalar>& x);
Matrix<double> to_double(const ExactMatrix& m);
std::vector<double> to_double(const ExactVector& v);

}  // namespace g2cal

#endif
