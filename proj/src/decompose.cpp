#include "hak/decompose.hpp"

#include "hak/basis.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hak {

namespace {

double inv_q(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

// raw centered monomial (x - x_B)^alpha
double mono(const Point& x, const Point& c, const MultiIndex& alpha) {
  double v = 1;
  for (int ax = 0; ax < alpha.dim(); ++ax)
    for (int r = 0; r < alpha[ax]; ++r) v *= x[ax] - c[ax];
  return v;
}

}  // namespace

int default_annulus_count(const Ball& ball, const SpaceParams& params,
                          const DecomposeOptions& opts) {
  double budget0 = std::pow(ball.volume(), inv_q(params.q) - 1.0 / params.p);
  for (int J = 1; J < opts.J_cap; ++J) {
    double bj = std::pow(2.0, -J * params.delta) *
                std::pow(ball.volume(std::pow(2.0, J)), inv_q(params.q) - 1.0 / params.p);
    if (bj < opts.tail_budget * budget0) return J;
  }
  return opts.J_cap;
}

GridFn Decomposition::reassemble() const {
  GridFn sum = annulus_pieces.at(0);
  for (std::size_t j = 1; j < annulus_pieces.size(); ++j) sum = sum + annulus_pieces[j];
  for (const auto& row : transfer_pieces)
    for (const auto& piece : row) sum = sum + piece;
  for (const auto& piece : moment_pieces) sum = sum + piece;
  return sum;
}

Decomposition decompose_molecule(const GridFn& m, const Ball& ball, const SpaceParams& params,
                                 const DecomposeOptions& opts) {
  const Grid& grid = *m.grid;
  const int dim = ball.dim();
  if (ball.regime() != BallRegime::small)
    throw std::invalid_argument("decompose_molecule: needs a small-regime ball (r < rho/8)");
  if (!params.decomposition_admissible(dim))
    throw std::invalid_argument(
        "decompose_molecule: requires delta > max{0, floor(omega) - n(1/p - 1)} = " +
        format_double(std::max(0.0, params.floor_omega() - dim * (1.0 / params.p - 1.0))));

  Decomposition D;
  D.ball = ball;
  D.params = params;
  D.J = opts.J >= 0 ? opts.J : default_annulus_count(ball, params, opts);
  D.alphas = indices_with_order_between(dim, 0, params.floor_omega());
  const std::size_t nb = D.alphas.size();
  const int J = D.J;

  auto bins = bin_by_annulus(grid, ball, J);
  for (int j = 0; j <= J; ++j)
    if (bins[std::size_t(j)].size() < nb)
      throw std::runtime_error("decompose_molecule: annulus " + std::to_string(j) +
                               " has too few grid points (" +
                               std::to_string(bins[std::size_t(j)].size()) + ")");

  // --- per-annulus scaffolding ------------------------------------------
  D.annulus_measure.assign(std::size_t(J) + 1, 0.0);
  D.gram_condition.assign(std::size_t(J) + 1, 0.0);
  D.dual_sup.assign(std::size_t(J) + 1, std::vector<double>(nb, 0.0));
  D.gs_coef_sup.assign(std::size_t(J) + 1, std::vector<double>(nb, 0.0));

  // dual-basis coefficients per annulus, in the raw monomial basis
  std::vector<Eigen::MatrixXd> dual_coef(std::size_t(J) + 1);
  // Gram-Schmidt coefficients (raw basis) per annulus
  std::vector<Eigen::MatrixXd> gs_coef(std::size_t(J) + 1);
  // annulus inner products <m_j, (.-x_B)^alpha>_j
  std::vector<std::vector<double>> mj_moments(std::size_t(J) + 1, std::vector<double>(nb, 0.0));

  for (int j = 0; j <= J; ++j) {
    const auto& idx = bins[std::size_t(j)];
    double s_j = std::ldexp(ball.radius, j);  // scale 2^j r
    KahanSum measure;
    for (std::size_t i : idx) measure.add(grid.weight(i));
    D.annulus_measure[std::size_t(j)] = measure.value();
    const double Uj = measure.value();
    if (!(Uj > 0)) throw std::runtime_error("decompose_molecule: empty annulus measure");

    // scaled Gram matrix
    Eigen::MatrixXd G(nb, nb);
    for (std::size_t a = 0; a < nb; ++a) {
      for (std::size_t b = a; b < nb; ++b) {
        KahanSum s;
        for (std::size_t i : idx) {
          const Point& x = grid.point(i);
          double pa = mono(x, ball.center, D.alphas[a]) / std::pow(s_j, D.alphas[a].order());
          double pb = mono(x, ball.center, D.alphas[b]) / std::pow(s_j, D.alphas[b].order());
          s.add(grid.weight(i) * pa * pb);
        }
        G(long(a), long(b)) = s.value() / Uj;
        G(long(b), long(a)) = G(long(a), long(b));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    double cond = es.eigenvalues()(long(nb) - 1) / std::max(es.eigenvalues()(0), 1e-300);
    D.gram_condition[std::size_t(j)] = cond;
    if (!(es.eigenvalues()(0) > 0) || cond > opts.gram_cond_limit)
      throw std::runtime_error("decompose_molecule: degenerate annulus sampling at j=" +
                               std::to_string(j) + ", Gram condition " + format_double(cond));

    // dual basis: scaled-dual = G^{-1} columns, then unscale
    Eigen::MatrixXd Ginv = G.inverse();
    dual_coef[std::size_t(j)] = Eigen::MatrixXd::Zero(nb, nb);
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        dual_coef[std::size_t(j)](long(b), long(a)) =
            Ginv(long(b), long(a)) /
            (std::pow(s_j, D.alphas[a].order()) * std::pow(s_j, D.alphas[b].order()));

    // Gram-Schmidt (Cholesky route: rows of L^{-1} give the orthonormal
    // coefficients in the scaled basis), then unscale
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    Eigen::MatrixXd Linv =
        llt.matrixL().solve(Eigen::MatrixXd::Identity(long(nb), long(nb)));
    gs_coef[std::size_t(j)] = Eigen::MatrixXd::Zero(nb, nb);
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        gs_coef[std::size_t(j)](long(a), long(b)) =
            Linv(long(a), long(b)) / std::pow(s_j, D.alphas[b].order());

    for (std::size_t a = 0; a < nb; ++a) {
      double sup_nu = 0;
      for (std::size_t i : idx) {
        double v = 0;
        for (std::size_t b = 0; b < nb; ++b)
          v += dual_coef[std::size_t(j)](long(b), long(a)) *
               mono(grid.point(i), ball.center, D.alphas[b]);
        sup_nu = std::max(sup_nu, std::abs(v));
      }
      D.dual_sup[std::size_t(j)][a] = sup_nu;
      double sup_l = 0;
      for (std::size_t b = 0; b < nb; ++b)
        sup_l = std::max(sup_l, std::abs(gs_coef[std::size_t(j)](long(a), long(b))));
      D.gs_coef_sup[std::size_t(j)][a] = sup_l;
    }

    // annulus moments of m
    for (std::size_t a = 0; a < nb; ++a) {
      KahanSum s;
      for (std::size_t i : idx)
        s.add(grid.weight(i) * m.values[i] * mono(grid.point(i), ball.center, D.alphas[a]));
      mj_moments[std::size_t(j)][a] = s.value() / Uj;
    }

    // duality residual (raw basis)
    for (std::size_t a = 0; a < nb; ++a) {
      for (std::size_t b = 0; b < nb; ++b) {
        KahanSum s;
        for (std::size_t i : idx) {
          const Point& x = grid.point(i);
          double nu = 0;
          for (std::size_t bb = 0; bb < nb; ++bb)
            nu += dual_coef[std::size_t(j)](long(bb), long(a)) * mono(x, ball.center, D.alphas[bb]);
          s.add(grid.weight(i) * nu * mono(x, ball.center, D.alphas[b]));
        }
        double want = a == b ? 1.0 : 0.0;
        D.dual_residual = std::max(D.dual_residual, std::abs(s.value() / Uj - want));
      }
    }
  }

  // --- tail moments N_{j,alpha} ------------------------------------------
  D.tail_moments.assign(std::size_t(J) + 1, std::vector<double>(nb, 0.0));
  for (std::size_t a = 0; a < nb; ++a) {
    double acc = 0;
    for (int j = J; j >= 0; --j) {
      acc += D.annulus_measure[std::size_t(j)] * mj_moments[std::size_t(j)][a];
      D.tail_moments[std::size_t(j)][a] = acc;  // for j=0 this is the full moment
    }
  }

  auto eval_dual = [&](int j, std::size_t a, const Point& x) {
    double v = 0;
    for (std::size_t b = 0; b < nb; ++b)
      v += dual_coef[std::size_t(j)](long(b), long(a)) * mono(x, ball.center, D.alphas[b]);
    return v;
  };

  // --- pieces --------------------------------------------------------------
  D.annulus_pieces.assign(std::size_t(J) + 1, GridFn(m.grid));
  double cross = 0;
  for (int j = 0; j <= J; ++j) {
    const auto& idx = bins[std::size_t(j)];
    for (std::size_t i : idx) {
      const Point& x = grid.point(i);
      double proj_dual = 0;
      for (std::size_t a = 0; a < nb; ++a)
        proj_dual += mj_moments[std::size_t(j)][a] * eval_dual(j, a, x);
      // Gram-Schmidt route for the same projection
      double proj_gs = 0;
      for (std::size_t a = 0; a < nb; ++a) {
        double up = 0;  // <m_j, upsilon_a>_j
        for (std::size_t b = 0; b < nb; ++b) {
          // upsilon_a = sum_b gs(a,b) (.-x_B)^b; inner products of m against
          // raw monomials are mj_moments
          up += gs_coef[std::size_t(j)](long(a), long(b)) * mj_moments[std::size_t(j)][b];
        }
        double ua = 0;
        for (std::size_t b = 0; b < nb; ++b)
          ua += gs_coef[std::size_t(j)](long(a), long(b)) * mono(x, ball.center, D.alphas[b]);
        proj_gs += up * ua;
      }
      cross = std::max(cross, std::abs(proj_dual - proj_gs));
      D.annulus_pieces[std::size_t(j)].values[i] = m.values[i] - proj_dual;
    }
  }
  D.projection_cross_residual = cross;

  D.transfer_pieces.assign(nb, std::vector<GridFn>());
  for (std::size_t a = 0; a < nb; ++a) {
    for (int j = 0; j < J; ++j) {
      GridFn piece(m.grid);
      double N_next = D.tail_moments[std::size_t(j) + 1][a];
      for (std::size_t i : bins[std::size_t(j) + 1])
        piece.values[i] = N_next * eval_dual(j + 1, a, grid.point(i)) /
                          D.annulus_measure[std::size_t(j) + 1];
      for (std::size_t i : bins[std::size_t(j)])
        piece.values[i] -= N_next * eval_dual(j, a, grid.point(i)) /
                           D.annulus_measure[std::size_t(j)];
      D.transfer_pieces[a].push_back(std::move(piece));
    }
  }

  D.moment_pieces.assign(nb, GridFn(m.grid));
  for (std::size_t a = 0; a < nb; ++a) {
    double N0 = D.tail_moments[0][a];
    for (std::size_t i : bins[0])
      D.moment_pieces[a].values[i] = N0 * eval_dual(0, a, grid.point(i)) / D.annulus_measure[0];
  }

  // --- identities and measured constants -----------------------------------
  // telescoping: sum_j P_j = sum_alpha sum_j (N_j - N_{j+1}) nu_{j,alpha}/|U_j|
  for (int j = 0; j <= J; ++j) {
    for (std::size_t a = 0; a < nb; ++a) {
      double lhs = D.annulus_measure[std::size_t(j)] * mj_moments[std::size_t(j)][a];
      double nxt = j < J ? D.tail_moments[std::size_t(j) + 1][a] : 0.0;
      double rhs = D.tail_moments[std::size_t(j)][a] - nxt;
      double scale = std::max(1.0, std::abs(D.tail_moments[0][a]));
      D.telescoping_residual = std::max(D.telescoping_residual, std::abs(lhs - rhs) / scale);
    }
  }

  GridFn sum = D.reassemble();
  D.reassembly_l2 = (sum - m).l2_norm();

  auto piece_norm = [&](const GridFn& f, int j_supp) {
    std::vector<std::size_t> idx;
    for (int j = 0; j <= std::min(j_supp, J); ++j)
      for (std::size_t i : bins[std::size_t(j)]) idx.push_back(i);
    return lq_norm_subset(f, idx, params.q);
  };

  // moment residuals of annulus and transfer pieces; size constants
  for (int j = 0; j <= J; ++j) {
    const GridFn& aj = D.annulus_pieces[std::size_t(j)];
    double s_j = std::ldexp(ball.radius, j);
    double l1 = 0;
    for (std::size_t i : bins[std::size_t(j)]) l1 += grid.weight(i) * std::abs(aj.values[i]);
    for (std::size_t a = 0; a < nb; ++a) {
      KahanSum s;
      for (std::size_t i : bins[std::size_t(j)])
        s.add(grid.weight(i) * aj.values[i] * mono(grid.point(i), ball.center, D.alphas[a]));
      double scale = std::max(1e-30, l1 * std::pow(s_j, D.alphas[a].order()));
      D.piece_moment_residual = std::max(D.piece_moment_residual, std::abs(s.value()) / scale);
    }
    double budget = std::pow(2.0, -j * params.delta) *
                    std::pow(ball.volume(std::pow(2.0, j)), inv_q(params.q) - 1.0 / params.p);
    D.C1 = std::max(D.C1, piece_norm(aj, j) / budget);
  }

  for (std::size_t a = 0; a < nb; ++a) {
    for (int j = 0; j < J; ++j) {
      const GridFn& p = D.transfer_pieces[a][std::size_t(j)];
      double s_j1 = std::ldexp(ball.radius, j + 1);
      double l1 = 0;
      for (std::size_t i = 0; i < p.values.size(); ++i)
        l1 += grid.weight(i) * std::abs(p.values[i]);
      for (std::size_t b = 0; b < nb; ++b) {
        KahanSum s;
        for (std::size_t i = 0; i < p.values.size(); ++i)
          if (p.values[i] != 0.0)
            s.add(grid.weight(i) * p.values[i] * mono(grid.point(i), ball.center, D.alphas[b]));
        double scale = std::max(1e-30, l1 * std::pow(s_j1, D.alphas[b].order()));
        D.piece_moment_residual = std::max(D.piece_moment_residual, std::abs(s.value()) / scale);
      }
      double budget = std::pow(2.0, -j * params.delta) *
                      std::pow(ball.volume(std::pow(2.0, j)), inv_q(params.q) - 1.0 / params.p);
      D.C2 = std::max(D.C2, piece_norm(p, j + 1) / budget);
    }
  }

  for (std::size_t a = 0; a < nb; ++a) {
    const GridFn& p = D.moment_pieces[a];
    double l1 = 0;
    for (std::size_t i : bins[0]) l1 += grid.weight(i) * std::abs(p.values[i]);
    for (std::size_t b = 0; b < nb; ++b) {
      KahanSum s;
      for (std::size_t i : bins[0])
        s.add(grid.weight(i) * p.values[i] * mono(grid.point(i), ball.center, D.alphas[b]));
      double want = (a == b) ? D.tail_moments[0][a] : 0.0;
      double scale = std::max({1e-30, std::abs(want), l1 * std::pow(ball.radius, D.alphas[b].order())});
      D.moment_transfer_residual =
          std::max(D.moment_transfer_residual, std::abs(s.value() - want) / scale);
    }
    double budget = std::pow(ball.volume(), inv_q(params.q) - 1.0 / params.p);
    D.C3 = std::max(D.C3, piece_norm(p, 0) / budget);
  }

  return D;
}

}  // namespace hak
