#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace muntz::lp {

enum class Status { optimal, unbounded, infeasible, iteration_limit };

struct Solution {
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x; // primal solution
    std::vector<double> y; // simplex multipliers of the equality rows (dual solution)
    std::size_t pivots = 0;
};

namespace detail {

/// LU factorization with partial pivoting of a small dense square matrix.
class DenseLu {
public:
    DenseLu(std::vector<double> a, std::size_t n) : n_(n), lu_(std::move(a)), perm_(n) {
        for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
        for (std::size_t col = 0; col < n_; ++col) {
            std::size_t p = col;
            for (std::size_t r = col + 1; r < n_; ++r)
                if (std::abs(at(r, col)) > std::abs(at(p, col))) p = r;
            if (at(p, col) == 0.0) {
                singular_ = true;
                return;
            }
            if (p != col) {
                for (std::size_t j = 0; j < n_; ++j) std::swap(at(p, j), at(col, j));
                std::swap(perm_[p], perm_[col]);
            }
            for (std::size_t r = col + 1; r < n_; ++r) {
                at(r, col) /= at(col, col);
                const double f = at(r, col);
                if (f != 0.0)
                    for (std::size_t j = col + 1; j < n_; ++j) at(r, j) -= f * at(col, j);
            }
        }
    }

    bool singular() const noexcept { return singular_; }

    /// Solves A x = b.
    std::vector<double> solve(const std::vector<double>& b) const {
        std::vector<double> x(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= at(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t i = n_; i-- > 0;) {
            double s = x[i];
            for (std::size_t j = i + 1; j < n_; ++j) s -= at(i, j) * x[j];
            x[i] = s / at(i, i);
        }
        return x;
    }

    /// Solves A^T y = c.
    std::vector<double> solve_transpose(const std::vector<double>& c) const {
        std::vector<double> z(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = c[i];
            for (std::size_t j = 0; j < i; ++j) s -= at(j, i) * z[j];
            z[i] = s / at(i, i);
        }
        for (std::size_t i = n_; i-- > 0;) {
            double s = z[i];
            for (std::size_t j = i + 1; j < n_; ++j) s -= at(j, i) * z[j];
            z[i] = s;
        }
        std::vector<double> y(n_);
        for (std::size_t i = 0; i < n_; ++i) y[perm_[i]] = z[i];
        return y;
    }

private:
    double& at(std::size_t i, std::size_t j) { return lu_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const { return lu_[i * n_ + j]; }

    std::size_t n_;
    std::vector<double> lu_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

} // namespace detail

/// Dense revised simplex for the standard form
///     minimize c'x  subject to  A x = b,  x >= 0,
/// aimed at few rows and many columns. The basis matrix is refactored from
/// scratch at every pivot, so rounding does not accumulate across iterations.
/// Pivoting follows Bland's rule: the entering column is the lowest-index
/// column with negative reduced cost, ratio ties go to the lowest basic index.
/// Phase one minimizes the sum of one artificial per row.
class DenseSimplex {
public:
    /// `A` is row-major, rows x columns.
    DenseSimplex(std::vector<std::vector<double>> A, std::vector<double> b, std::vector<double> c, double tol = 1e-10)
        : rows_(b.size()), cols_(c.size()), a_(std::move(A)), b_(std::move(b)), c_(std::move(c)), tol_(tol) {}

    Solution solve(std::size_t max_pivots = 100000) {
        Solution out;
        sign_.assign(rows_, 1.0);
        for (std::size_t i = 0; i < rows_; ++i)
            if (b_[i] < 0.0) sign_[i] = -1.0;
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) basis_[i] = cols_ + i;

        std::vector<double> phase_one_cost(cols_ + rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) phase_one_cost[cols_ + i] = 1.0;
        double b_scale = 1.0;
        for (double v : b_) b_scale = std::max(b_scale, std::abs(v));

        Status s = run(phase_one_cost, true, max_pivots, out.pivots);
        if (s == Status::iteration_limit) return out.status = s, out;
        if (s != Status::optimal) return out.status = Status::infeasible, out;
        const auto xb0 = basic_values();
        double infeasibility = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] >= cols_) infeasibility += std::abs(xb0[i]);
        if (infeasibility > 1e-9 * b_scale) return out.status = Status::infeasible, out;
        drive_out_artificials();

        std::vector<double> cost(cols_ + rows_, 0.0);
        std::copy(c_.begin(), c_.end(), cost.begin());
        s = run(cost, false, max_pivots, out.pivots);
        out.status = s;
        if (s != Status::optimal) return out;

        const detail::DenseLu lu(basis_matrix(), rows_);
        const auto xb = lu.solve(b_);
        out.x.assign(cols_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < cols_) out.x[basis_[i]] = std::max(0.0, xb[i]);
        std::vector<double> cb(rows_);
        for (std::size_t i = 0; i < rows_; ++i) cb[i] = cost[basis_[i]];
        out.y = lu.solve_transpose(cb);
        for (std::size_t j = 0; j < cols_; ++j) out.objective += c_[j] * out.x[j];
        return out;
    }

private:
    // Column j of [A | diag(sign)].
    double entry(std::size_t i, std::size_t j) const {
        if (j < cols_) return a_[i][j];
        return j - cols_ == i ? sign_[i] : 0.0;
    }

    std::vector<double> basis_matrix() const {
        std::vector<double> m(rows_ * rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < rows_; ++k) m[i * rows_ + k] = entry(i, basis_[k]);
        return m;
    }

    std::vector<double> basic_values() const { return detail::DenseLu(basis_matrix(), rows_).solve(b_); }

    // Swap artificials still basic at level zero for structural columns where
    // possible; an artificial that cannot leave marks a redundant row.
    void drive_out_artificials() {
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] < cols_) continue;
            const detail::DenseLu lu(basis_matrix(), rows_);
            std::vector<double> unit(rows_, 0.0);
            unit[r] = 1.0;
            const auto inverse_row = lu.solve_transpose(unit);
            std::optional<std::size_t> best;
            double best_mag = 1e-7;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
                double v = 0.0;
                for (std::size_t i = 0; i < rows_; ++i) v += inverse_row[i] * a_[i][j];
                if (std::abs(v) > best_mag) {
                    best_mag = std::abs(v);
                    best = j;
                }
            }
            if (best) basis_[r] = *best;
        }
    }

    Status run(const std::vector<double>& cost, bool phase_one, std::size_t max_pivots, std::size_t& pivots) {
        const std::size_t candidates = phase_one ? cols_ + rows_ : cols_;
        std::vector<char> in_basis(cols_ + rows_, 0);
        std::vector<double> column(rows_);
        std::vector<double> cb(rows_);
        while (true) {
            const detail::DenseLu lu(basis_matrix(), rows_);
            if (lu.singular()) return Status::infeasible;
            for (std::size_t i = 0; i < rows_; ++i) cb[i] = cost[basis_[i]];
            const auto y = lu.solve_transpose(cb);
            std::fill(in_basis.begin(), in_basis.end(), 0);
            for (std::size_t idx : basis_) in_basis[idx] = 1;

            double y_scale = 1.0;
            for (double v : y) y_scale = std::max(y_scale, std::abs(v));

            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < candidates && !entering; ++j) {
                if (in_basis[j]) continue;
                double reduced = cost[j];
                for (std::size_t i = 0; i < rows_; ++i) reduced -= y[i] * entry(i, j);
                if (reduced < -tol_ * y_scale) entering = j;
            }
            if (!entering) return Status::optimal;
            if (pivots >= max_pivots) return Status::iteration_limit;

            for (std::size_t i = 0; i < rows_; ++i) column[i] = entry(i, *entering);
            const auto d = lu.solve(column);
            const auto xb = lu.solve(b_);
            std::optional<std::size_t> leaving;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows_; ++i) {
                if (d[i] <= tol_) continue;
                const double ratio = std::max(0.0, xb[i]) / d[i];
                if (!leaving || ratio < best - tol_ || (ratio <= best + tol_ && basis_[i] < basis_[*leaving])) {
                    best = std::min(best, ratio);
                    leaving = i;
                }
            }
            if (!leaving) return Status::unbounded;
            basis_[*leaving] = *entering;
            ++pivots;
        }
    }

    std::size_t rows_, cols_;
    std::vector<std::vector<double>> a_;
    std::vector<double> b_, c_;
    double tol_;
    std::vector<double> sign_;
    std::vector<std::size_t> basis_;
};

} // namespace muntz::lp
