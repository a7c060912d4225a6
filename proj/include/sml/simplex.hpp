#pragma once
// simplex.hpp -- dense two-phase simplex for  max c.x  s.t.  Ax <= b, x >= 0.
//
// Classic tableau method with index tie-breaking on entering/leaving
// variables, which keeps the degenerate vertices produced by the
// cutting-plane loop from cycling in practice. Problem sizes here are small
// (hundreds of rows/columns), so no sparsity or factorization is attempted.

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace sml {

class SimplexSolver {
 public:
  SimplexSolver(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                const std::vector<double>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        nonbasic_(n_ + 1),
        basic_(m_),
        tab_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[i][j] = A[i][j];
      basic_[i] = n_ + i;
      tab_[i][n_] = -1;
      tab_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      tab_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    tab_[m_ + 1][n_] = 1;
  }

  // Returns the optimal objective and fills x; -inf if infeasible, +inf if
  // unbounded.
  double maximize(std::vector<double>& x) {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (tab_[i][n_ + 1] < tab_[r][n_ + 1]) r = i;
    if (m_ > 0 && tab_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!run(2) || tab_[m_ + 1][n_ + 1] < -kEps)
        return -std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i)
        if (basic_[i] == -1) {
          int s = 0;
          for (int j = 1; j <= n_; ++j)
            if (std::make_pair(tab_[i][j], nonbasic_[j]) <
                std::make_pair(tab_[i][s], nonbasic_[s]))
              s = j;
          pivot(i, s);
        }
    }
    bool bounded = run(1);
    x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basic_[i] < n_) x[basic_[i]] = tab_[i][n_ + 1];
    return bounded ? tab_[m_][n_ + 1] : std::numeric_limits<double>::infinity();
  }

 private:
  static constexpr double kEps = 1e-9;
  int m_, n_;
  std::vector<int> nonbasic_, basic_;
  std::vector<std::vector<double>> tab_;

  void pivot(int r, int s) {
    std::vector<double>& a = tab_[r];
    double inv = 1 / a[s];
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r && std::abs(tab_[i][s]) > kEps) {
        std::vector<double>& bi = tab_[i];
        double inv2 = bi[s] * inv;
        for (int j = 0; j < n_ + 2; ++j) bi[j] -= a[j] * inv2;
        bi[s] = a[s] * inv2;
      }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) tab_[r][j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) tab_[i][s] *= -inv;
    tab_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // phase 2 drives the artificial variable out; phase 1 optimizes c.
  bool run(int phase) {
    const int row = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (s == -1 || std::make_pair(tab_[row][j], nonbasic_[j]) <
                           std::make_pair(tab_[row][s], nonbasic_[s]))
          s = j;
      }
      if (s == -1 || tab_[row][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][s] <= kEps) continue;
        if (r == -1 || std::make_pair(tab_[i][n_ + 1] / tab_[i][s], basic_[i]) <
                           std::make_pair(tab_[r][n_ + 1] / tab_[r][s], basic_[r]))
          r = i;
      }
      if (r == -1) return false;  // unbounded in this column
      pivot(r, s);
    }
  }
};

}  // namespace sml
