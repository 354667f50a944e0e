#include <lelong/lp.hpp>

#include <limits>
#include <vector>

namespace lelong::lp {

namespace {

constexpr double kPivotEps = 1e-12;
constexpr double kCostEps = 1e-11;
constexpr double kDriftEps = 1e-9;

// Tableau over [A | I | b]; the identity block holds the artificials.
class Tableau {
public:
  Tableau(const Matrix& A, const Vector& b)
    : rows_(static_cast<int>(A.rows())), orig_(static_cast<int>(A.cols())),
      t_(Matrix::Zero(A.rows(), A.cols() + A.rows() + 1)), basis_(A.rows()) {
    for (int i = 0; i < rows_; ++i) {
      const double sign = b(i) < 0 ? -1.0 : 1.0;
      t_.row(i).head(orig_) = sign * A.row(i);
      t_(i, orig_ + i) = 1.0;
      t_(i, rhs()) = sign * b(i);
      basis_[i] = orig_ + i;
    }
  }

  int rows() const { return rows_; }
  int originals() const { return orig_; }
  int columns() const { return orig_ + rows_; }
  int rhs() const { return orig_ + rows_; }
  double value(int row) const { return t_(row, rhs()); }
  int basic(int row) const { return basis_[row]; }
  double entry(int row, int col) const { return t_(row, col); }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
      if (t_(i, rhs()) < 0.0 && t_(i, rhs()) > -kDriftEps) t_(i, rhs()) = 0.0;
    }
    basis_[row] = col;
  }

  // Minimizes cost^T x over the columns flagged in `allowed`. Returns false
  // when the objective is unbounded below.
  bool minimize(const Vector& cost, const std::vector<bool>& allowed) {
    const int max_iter = 50 * (columns() + rows_) + 100;
    std::vector<bool> in_basis(columns(), false);
    for (int i = 0; i < rows_; ++i) in_basis[basis_[i]] = true;

    for (int iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      for (int j = 0; j < columns(); ++j) {
        if (!allowed[j] || in_basis[j]) continue;
        double reduced = cost(j);
        for (int i = 0; i < rows_; ++i) reduced -= cost(basis_[i]) * t_(i, j);
        if (reduced < -kCostEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = t_(i, rhs()) / a;
        if (ratio < best - 1e-15 ||
            (ratio <= best + 1e-15 && leave >= 0 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      in_basis[basis_[leave]] = false;
      in_basis[enter] = true;
      pivot(leave, enter);
    }
    throw SolverError("simplex iteration limit exceeded");
  }

  double phase_one() {
    Vector cost = Vector::Zero(columns());
    cost.tail(rows_).setOnes();
    minimize(cost, std::vector<bool>(columns(), true));
    double residual = 0.0;
    for (int i = 0; i < rows_; ++i)
      if (basis_[i] >= orig_) residual += t_(i, rhs());
    return residual;
  }

  void drive_out_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < orig_) continue;
      for (int j = 0; j < orig_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

private:
  int rows_;
  int orig_;
  Matrix t_;
  std::vector<int> basis_;
};

void check_shapes(const Matrix& A, const Vector& b) {
  if (A.rows() != b.size()) throw InvalidArgument("lp: row count of A does not match b");
}

} // namespace

Result maximize(const Matrix& A, const Vector& b, const Vector& c, double feas_tol) {
  check_shapes(A, b);
  if (c.size() != A.cols()) throw InvalidArgument("lp: objective size does not match A");

  Tableau tab(A, b);
  Result result;
  result.infeasibility = tab.phase_one();
  if (result.infeasibility > feas_tol) {
    result.status = Status::infeasible;
    return result;
  }
  tab.drive_out_artificials();

  Vector cost = Vector::Zero(tab.columns());
  cost.head(tab.originals()) = -c;
  std::vector<bool> allowed(tab.columns(), false);
  for (int j = 0; j < tab.originals(); ++j) allowed[j] = true;
  if (!tab.minimize(cost, allowed)) {
    result.status = Status::unbounded;
    return result;
  }

  result.status = Status::optimal;
  result.x = Vector::Zero(A.cols());
  for (int i = 0; i < tab.rows(); ++i)
    if (tab.basic(i) < tab.originals()) result.x(tab.basic(i)) = tab.value(i);
  result.objective = c.dot(result.x);
  return result;
}

double min_infeasibility(const Matrix& A, const Vector& b) {
  check_shapes(A, b);
  Tableau tab(A, b);
  return tab.phase_one();
}

} // namespace lelong::lp
