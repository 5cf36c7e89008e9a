#include "g2cal/matrix.hpp"

namespace g2cal {

std::vector<std::size_t> exact_rref(ExactMatrix& M) {
    const std::size_t rows = M.rows(), cols = M.cols();
    std::vector<std::size_t> pivots;
    Scalar prev(1);
    std::size_t pr = 0;  // next pivot row
    for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
        std::size_t sel = pr;
        while (sel < rows && M(sel, pc).is_zero()) ++sel;
        if (sel == rows) continue;
        if (sel != pr)
            for (std::size_t j = 0; j < cols; ++j) std::swap(M(pr, j), M(sel, j));
        const Scalar pivot = M(pr, pc);
        // one-step fraction-free elimination below the pivot
        for (std::size_t i = pr + 1; i < rows; ++i) {
            const Scalar f = M(i, pc);
            for (std::size_t j = pc; j < cols; ++j)
                M(i, j) = (M(i, j) * pivot - f * M(pr, j)) / prev;
        }
        prev = pivot;
        pivots.push_back(pc);
        ++pr;
    }
    // Jordan phase: normalize pivots to 1 and clear above
    for (std::size_t p = pivots.size(); p-- > 0;) {
        const std::size_t r = p, pc = pivots[p];
        const Scalar inv = M(r, pc).inverse();
        for (std::size_t j = pc; j < cols; ++j) M(r, j) = M(r, j) * inv;
        for (std::size_t i = 0; i < r; ++i) {
            const Scalar f = M(i, pc);
            if (f.is_zero()) continue;
            for (std::size_t j = pc; j < cols; ++j) M(i, j) = M(i, j) - f * M(r, j);
        }
    }
    return pivots;
}

SolveResult exact_solve(const ExactMatrix& A, const ExactMatrix& B) {
    if (A.rows() != B.rows()) throw DimensionMismatch("exact_solve: row count mismatch");
    const std::size_t n = A.cols(), bc = B.cols();
    ExactMatrix M(A.rows(), n + bc);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
        for (std::size_t j = 0; j < bc; ++j) M(i, n + j) = B(i, j);
    }
    std::vector<std::size_t> pivots = exact_rref(M);

    SolveResult res;
    // a pivot in the B block means the system is inconsistent
    if (!pivots.empty() && pivots.back() >= n) {
        while (!pivots.empty() && pivots.back() >= n) pivots.pop_back();
        res.feasible = false;
        res.rank = pivots.size();
        return res;
    }
    res.feasible = true;
    res.rank = pivots.size();

    std::vector<bool> is_pivot(n, false);
    for (std::size_t pc : pivots) is_pivot[pc] = true;

    res.particular = ExactMatrix(n, bc);
    for (std::size_t p = 0; p < pivots.size(); ++p)
        for (std::size_t j = 0; j < bc; ++j) res.particular(pivots[p], j) = M(p, n + j);

    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        ExactVector v(n);
        v[f] = Scalar(1);
        for (std::size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -M(p, f);
        res.kernel.push_back(std::move(v));
    }
    return res;
}

std::vector<ExactVector> exact_kernel(const ExactMatrix& A) {
    return exact_solve(A, ExactMatrix(A.rows(), 0)).kernel;
}

std::size_t exact_rank(const ExactMatrix& A) {
    ExactMatrix M = A;
    return exact_rref(M).size();
}

std::vector<std::size_t> independent_subset(const std::vector<ExactVector>& span,
                                            const std::vector<ExactVector>& candidates) {
    std::size_t dim = 0;
    for (const auto& v : span) dim = std::max(dim, v.size());
    for (const auto& v : candidates) dim = std::max(dim, v.size());

    ExactMatrix M(dim, span.size() + candidates.size());
    for (std::size_t j = 0; j < span.size(); ++j)
        for (std::size_t i = 0; i < span[j].size(); ++i) M(i, j) = span[j][i];
    for (std::size_t j = 0; j < candidates.size(); ++j)
        for (std::size_t i = 0; i < candidates[j].size(); ++i)
            M(i, span.size() + j) = candidates[j][i];

    std::vector<std::size_t> pivots = exact_rref(M);
    std::vector<std::size_t> chosen;
    for (std::size_t pc : pivots)
        if (pc >= span.size()) chosen.push_back(pc - span.size());
    return chosen;
}

bool in_span(const std::vector<ExactVector>& span, const ExactVector& v) {
    return independent_subset(span, {v}).empty();
}

}  // namespace g2cal
