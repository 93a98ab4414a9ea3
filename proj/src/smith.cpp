#include "latticeroot/smith.hpp"

#include <utility>

namespace latticeroot {

namespace {

struct Work {
  std::size_t n;
  std::vector<Integer> a, u, ui, v;

  Integer& at(std::vector<Integer>& x, std::size_t i, std::size_t j) { return x[i * n + j]; }

  // row_i <- row_i + f row_j on A and U; U^{-1} gets the inverse column op.
  void add_row(std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t k = 0; k < n; ++k) {
      at(a, i, k) += f * at(a, j, k);
      at(u, i, k) += f * at(u, j, k);
      at(ui, k, j) -= f * at(ui, k, i);
    }
  }
  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(at(a, i, k), at(a, j, k));
      std::swap(at(u, i, k), at(u, j, k));
      std::swap(at(ui, k, i), at(ui, k, j));
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < n; ++k) {
      at(a, i, k) = -at(a, i, k);
      at(u, i, k) = -at(u, i, k);
      at(ui, k, i) = -at(ui, k, i);
    }
  }
  // col_i <- col_i + f col_j on A and V.
  void add_col(std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t k = 0; k < n; ++k) {
      at(a, k, i) += f * at(a, k, j);
      at(v, k, i) += f * at(v, k, j);
    }
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(at(a, k, i), at(a, k, j));
      std::swap(at(v, k, i), at(v, k, j));
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const std::vector<Integer>& m, std::size_t n) {
  Work w{n, m, std::vector<Integer>(n * n, 0), std::vector<Integer>(n * n, 0),
         std::vector<Integer>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    w.at(w.u, i, i) = 1;
    w.at(w.ui, i, i) = 1;
    w.at(w.v, i, i) = 1;
  }
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = n, pc = n;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (w.at(w.a, i, j) != 0 &&
              (pr == n || abs(w.at(w.a, i, j)) < abs(w.at(w.a, pr, pc)))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == n) break;
      if (pr != t) w.swap_rows(pr, t);
      if (pc != t) w.swap_cols(pc, t);
      bool clean = true;
      const Integer p = w.at(w.a, t, t);
      for (std::size_t i = t + 1; i < n; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), w.at(w.a, i, t).get_mpz_t(), p.get_mpz_t());
        if (q != 0) w.add_row(i, t, -q);
        if (w.at(w.a, i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), w.at(w.a, t, j).get_mpz_t(), p.get_mpz_t());
        if (q != 0) w.add_col(j, t, -q);
        if (w.at(w.a, t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the rest of the block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < n && divisible; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (w.at(w.a, i, j) % p != 0) {
            w.add_row(t, i, 1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (w.at(w.a, t, t) < 0) w.negate_row(t);
  }
  SmithForm out;
  out.n = n;
  out.d.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.d[i] = w.at(w.a, i, i);
  out.u = std::move(w.u);
  out.u_inverse = std::move(w.ui);
  out.v = std::move(w.v);
  return out;
}

}  // namespace latticeroot
