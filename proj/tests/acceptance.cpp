// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <vector>

#include "kronres/comparisons.hpp"
#include "kronres/kron.hpp"
#include "kronres/montecarlo.hpp"
#include "kronres/resistance.hpp"
#include "test_util.hpp"

using namespace kronres;
using namespace kronres::testutil;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail = "") {
  std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++failures;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::pair<int, int> random_pair(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  int a = pick(rng);
  int b = (a + 1 + pick(rng) % (n - 1)) % n;
  return {a, b};
}

// ---- criteria 1-3: golden fixtures ----------------------------------------

void criterion_1() {
  Matrix expected(3, 3);
  expected << 1, 0, -1, -1, 1, 0, 0, -1, 1;
  Matrix q = directed6_q();
  NodeSubset alpha({0, 1, 2}, 6);
  kron_reduce(q, alpha);  // warm up
  double t0 = now_seconds();
  KronResult res = kron_reduce(q, alpha);
  double elapsed = now_seconds() - t0;
  double dev = max_abs_diff(res.q_red, expected);
  char detail[128];
  std::snprintf(detail, sizeof(detail), "max deviation %.2e, runtime %.3f ms", dev,
                elapsed * 1e3);
  report(1, "directed 6-node golden fixture", dev <= 1e-12 && elapsed < 1e-3, detail);
}

void criterion_2() {
  Matrix expected(3, 3);
  expected << 1, -0.5, -0.5, -0.5, 1.5, -1, -0.5, -1, 2;
  KronResult res = kron_reduce(undirected6_q(), NodeSubset({0, 1, 2}, 6));
  double dev = max_abs_diff(res.q_red, expected);
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max deviation %.2e", dev);
  report(2, "undirected 6-node golden fixture", dev <= 1e-12, detail);
}

void criterion_3() {
  Matrix q = directed6_q();
  bool original_has_loop = graph_from_loopy(q).weight(3, 3) > 0.5;
  KronResult res = kron_reduce(q, NodeSubset({0, 1, 2}, 6));
  double max_row_sum = res.q_red.rowwise().sum().cwiseAbs().maxCoeff();
  char detail[64];
  std::snprintf(detail, sizeof(detail), "reduced row sums %.2e", max_row_sum);
  report(3, "self-loop vanishes under reduction", original_has_loop && max_row_sum <= 1e-12,
         detail);
}

// ---- criterion 4: one-shot vs iterative over all elimination orders -------

void criterion_4() {
  std::mt19937_64 rng(2024);
  double t0 = now_seconds();
  bool ok = true;
  double worst = 0.0;
  long orders_checked = 0;
  for (int t = 0; t < 200; ++t) {
    int n = 4 + t % 9;  // 4..12
    WeightedDigraph g = random_strongly_connected(rng, n, 0.35, /*allow_self_loops=*/true);
    Matrix q = loopy_laplacian(g);
    std::vector<int> alpha = random_reachable_subset(rng, g);
    NodeSubset a(alpha, n);
    Matrix block = kron_reduce(q, a).q_red;

    std::vector<int> interior = a.complement();
    if (n <= 8) {
      std::sort(interior.begin(), interior.end());
      do {
        double dev = max_abs_diff(kron_reduce_iterative(q, a, interior).q_red, block);
        worst = std::max(worst, dev);
        if (dev > 1e-9) ok = false;
        ++orders_checked;
      } while (std::next_permutation(interior.begin(), interior.end()));
    } else {
      for (int rep = 0; rep < 5; ++rep) {
        std::shuffle(interior.begin(), interior.end(), rng);
        double dev = max_abs_diff(kron_reduce_iterative(q, a, interior).q_red, block);
        worst = std::max(worst, dev);
        if (dev > 1e-9) ok = false;
        ++orders_checked;
      }
    }
  }
  double elapsed = now_seconds() - t0;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%ld orders, worst deviation %.2e, %.1f s",
                orders_checked, worst, elapsed);
  report(4, "quotient property (one-shot vs iterative)", ok && elapsed < 30.0, detail);
}

// ---- criterion 5: conductance invariance under reduction ------------------

void criterion_5() {
  std::mt19937_64 rng(2025);
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    int n = 4 + t % 7;
    WeightedDigraph g = random_strongly_connected(rng, n);
    std::vector<int> alpha = random_reachable_subset(rng, g);
    NodeSubset a(alpha, n);
    KronResult res = kron_reduce(loopless_laplacian(g), a);
    const auto& keep = a.indices();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(keep.size()) - 1);
    int pa = pick(rng);
    int pb = (pa + 1 + pick(rng) % (static_cast<int>(keep.size()) - 1)) %
             static_cast<int>(keep.size());
    for (auto [u, v, ru, rv] : {std::array<int, 4>{keep[pa], keep[pb], pa, pb},
                                std::array<int, 4>{keep[pb], keep[pa], pb, pa}}) {
      double before = effective_conductance(g, u, v);
      double after = effective_conductance(res.g_red, ru, rv);
      double dev = std::abs(before - after);
      worst = std::max(worst, dev);
      if (dev > 1e-8) ok = false;
    }
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "worst deviation %.2e", worst);
  report(5, "conductance invariant under reduction", ok, detail);
}

// ---- criterion 6: triple-method resistance agreement -----------------------

void criterion_6() {
  std::mt19937_64 rng(2026);
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    int n = 3 + t % 8;
    WeightedDigraph g = random_weight_balanced(rng, n);
    auto [a, b] = random_pair(rng, n);
    double schur = effective_resistance(g, a, b);
    double balanced = resistance_balanced_pinv(g, a, b);
    double general = resistance_strongly_connected(g, a, b);
    double dev = std::max({std::abs(schur - balanced), std::abs(schur - general),
                           std::abs(balanced - general)});
    worst = std::max(worst, dev);
    if (dev > 1e-8) ok = false;
  }
  for (int t = 0; t < 200; ++t) {
    int n = 3 + t % 8;
    WeightedDigraph g = random_strongly_connected(rng, n);
    auto [a, b] = random_pair(rng, n);
    double dev = std::abs(effective_resistance(g, a, b) -
                          resistance_strongly_connected(g, a, b));
    worst = std::max(worst, dev);
    if (dev > 1e-8) ok = false;
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "worst pairwise deviation %.2e", worst);
  report(6, "triple-method resistance agreement", ok, detail);
}

// ---- criterion 7: metric axioms, EDM, and the non-EDM counterexample ------

void criterion_7() {
  std::mt19937_64 rng(2027);
  bool ok = true;
  for (int t = 0; t < 200 && ok; ++t) {
    int n = 3 + t % 8;  // up to 10
    WeightedDigraph g = random_strongly_connected(rng, n);
    Matrix d = metric_matrix(g);
    if (max_abs_diff(d, d.transpose()) > 1e-8) ok = false;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        for (int k = 0; k < n; ++k) {
          if (d(i, k) + d(k, j) - d(i, j) < -1e-8) {
            ok = false;
            break;
          }
        }
      }
    }
    Matrix r2 = d.cwiseProduct(d);
    Matrix pi = Matrix::Identity(n, n) - Matrix::Ones(n, n) / n;
    Matrix gram = -0.5 * pi * r2 * pi;
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (gram + gram.transpose())));
    if (es.eigenvalues().minCoeff() < -1e-8) ok = false;
  }

  // 4-node shortest-path distance matrix: provably not Euclidean
  Matrix d4(4, 4);
  const double s2 = std::sqrt(2.0);
  d4 << 0, 1, s2, 1, 1, 0, 1, 2, s2, 1, 0, 1, 1, 2, 1, 0;
  Matrix r2 = d4.cwiseProduct(d4);
  Matrix pi4 = Matrix::Identity(4, 4) - Matrix::Ones(4, 4) / 4;
  Matrix gram4 = -0.5 * pi4 * r2 * pi4;
  Eigen::SelfAdjointEigenSolver<Matrix> es4(Matrix(0.5 * (gram4 + gram4.transpose())));
  double min_eig = es4.eigenvalues().minCoeff();
  bool counterexample = !edm_check(r2, 1e-8) && min_eig < -1e-3;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "shortest-path Gram min eigenvalue %.4f", min_eig);
  report(7, "metric axioms, EDM, and non-EDM counterexample", ok && counterexample, detail);
}

// ---- criterion 8: Monte-Carlo concordance ----------------------------------

void criterion_8() {
  std::mt19937_64 rng(2028);
  double t0 = now_seconds();
  int within = 0;
  WalkConfig cfg;
  cfg.trials = 100000;
  for (int t = 0; t < 50; ++t) {
    int n = 3 + t % 6;  // up to 8
    WeightedDigraph g = random_strongly_connected(rng, n, 0.4);
    auto [a, b] = random_pair(rng, n);
    cfg.seed = 9000 + t;
    EscapeEstimate est = simulate_escape(g, a, b, cfg);
    double reference = escape_probability(g, a, b);
    if (std::abs(est.p_hat - reference) <= 4.0 * est.std_err || est.p_hat == reference) {
      ++within;
    }
  }
  double elapsed = now_seconds() - t0;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "%d/50 within 4 sigma, %.1f s", within, elapsed);
  report(8, "Monte-Carlo concordance", within >= 49 && elapsed < 60.0, detail);
}

// ---- criterion 9: doubly-stochastic identity --------------------------------

void criterion_9() {
  std::mt19937_64 rng(2029);
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    int n = 3 + t % 6;
    Matrix p = random_doubly_stochastic(rng, n);
    Matrix omega = resistance_distance(p);
    WeightedDigraph g(p);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double dev = std::abs(omega(i, j) - effective_resistance(g, i, j));
        worst = std::max(worst, dev);
        if (dev > 1e-8) ok = false;
      }
    }
  }

  // general stochastic chains: the identity genuinely fails
  double counter = 0.0;
  for (int t = 0; t < 60 && counter <= 1e-3; ++t) {
    WeightedDigraph g = random_strongly_connected(rng, 4, 0.6);
    Matrix p = transition_matrix(g);
    Matrix omega;
    try {
      omega = resistance_distance(p);
    } catch (const SingularMatrixError&) {
      continue;
    }
    WeightedDigraph gp(p);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) {
          counter = std::max(counter, std::abs(omega(i, j) - effective_resistance(gp, i, j)));
        }
      }
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst deviation %.2e, counterexample gap %.2e", worst,
                counter);
  report(9, "doubly-stochastic resistance-distance identity", ok && counter > 1e-3, detail);
}

// ---- criterion 10: hitting-probability log identity -------------------------

void criterion_10() {
  std::mt19937_64 rng(2030);
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    int n = 3 + t % 6;
    WeightedDigraph g = random_strongly_connected(rng, n);
    Matrix d = hitting_prob_metric(g, 1.0);
    BalancingMatrix bal = balancing(g);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double expected = std::log(effective_resistance(g, i, j)) - std::log(bal.m(i));
        double dev = std::abs(d(i, j) - expected);
        worst = std::max(worst, dev);
        if (dev > 1e-8) ok = false;
      }
    }
  }
  WeightedDigraph uniform(Matrix(Matrix::Ones(2, 2)));
  double d12 = hitting_prob_metric(uniform, 1.0)(0, 1);
  bool exact = std::abs(d12 - std::log(4.0)) <= 1e-12;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst deviation %.2e, d(1,2)=%.12f", worst, d12);
  report(10, "hitting-probability log identity", ok && exact, detail);
}

// ---- criterion 11: Lyapunov consistency -------------------------------------

void criterion_11() {
  std::mt19937_64 rng(2031);
  std::normal_distribution<double> normal(0.0, 1.0);
  bool undirected_ok = true, basis_ok = true, reduction_ok = true;
  double worst_und = 0.0, worst_basis = 0.0, worst_red = 0.0;
  for (int t = 0; t < 50; ++t) {
    int n = 4 + t % 5;
    WeightedDigraph g = random_strongly_connected(rng, n);

    // undirected case: X equals the Moore-Penrose pseudoinverse resistance
    Matrix adj = g.adjacency();
    WeightedDigraph sym(Matrix(0.5 * (adj + adj.transpose())));
    Matrix x_sym = lyapunov_bundle(sym).x;
    Matrix ldag = pinv(loopless_laplacian(sym));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double dev = std::abs(lyapunov_resistance_from_x(x_sym, i, j) -
                              (ldag(i, i) + ldag(j, j) - ldag(i, j) - ldag(j, i)));
        worst_und = std::max(worst_und, dev);
        if (dev > 1e-8) undirected_ok = false;
      }
    }

    // basis independence on the directed graph
    Matrix m(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) {
      for (int j = 0; j < n - 1; ++j) m(i, j) = normal(rng);
    }
    Matrix rot = Eigen::HouseholderQR<Matrix>(m).householderQ();
    Matrix x1 = lyapunov_bundle(g).x;
    Matrix x2 = lyapunov_bundle(g, Matrix(rot * projection_basis(n))).x;
    double dev_basis = max_abs_diff(x1, x2);
    worst_basis = std::max(worst_basis, dev_basis);
    if (dev_basis > 1e-8) basis_ok = false;

    // invariance of R-tilde under the symmetrization Kron reduction
    std::vector<int> alpha = random_reachable_subset(rng, g);
    NodeSubset a(alpha, n);
    Matrix lred = kron_reduce_lyapunov(g, a);
    Matrix x_red = lyapunov_bundle_from_laplacian(lred).x;
    const auto& keep = a.indices();
    for (std::size_t p = 0; p < keep.size(); ++p) {
      for (std::size_t q = p + 1; q < keep.size(); ++q) {
        double before = lyapunov_resistance_from_x(x1, keep[p], keep[q]);
        double after =
            lyapunov_resistance_from_x(x_red, static_cast<int>(p), static_cast<int>(q));
        double dev = std::abs(before - after);
        worst_red = std::max(worst_red, dev);
        if (dev > 1e-6) reduction_ok = false;
      }
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "undirected %.2e, basis %.2e, reduction %.2e", worst_und, worst_basis,
                worst_red);
  report(11, "Lyapunov resistance consistency", undirected_ok && basis_ok && reduction_ok,
         detail);
}

// ---- criterion 12: structure-preservation contrast --------------------------

void criterion_12() {
  std::mt19937_64 rng(2032);
  std::uniform_int_distribution<int> weight(0, 3);
  bool z_matrix_ok = true;
  bool negative_edge_found = false;
  double best_positive = 0.0;
  int reductions = 0;
  for (int t = 0; t < 600; ++t) {
    Matrix adj = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) adj(i, j) = static_cast<double>(weight(rng));
      }
    }
    WeightedDigraph g(adj);
    NodeSubset alpha({0, 1, 2}, 4);
    if (!is_reachable_subset(g, alpha)) continue;

    Matrix q_red = kron_reduce(loopy_laplacian(g), alpha).q_red;
    ++reductions;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j && q_red(i, j) > 1e-9) z_matrix_ok = false;
      }
      if (q_red.row(i).sum() < -1e-9) z_matrix_ok = false;
    }

    try {
      Matrix lred = kron_reduce_lyapunov(g, alpha);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (i != j) best_positive = std::max(best_positive, lred(i, j));
        }
      }
      if (best_positive > 1e-6) negative_edge_found = true;
    } catch (const PreconditionError&) {
    } catch (const SingularMatrixError&) {
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "%d reductions all Z-matrices; largest positive off-diagonal %.3e", reductions,
                best_positive);
  report(12, "structure-preservation contrast", z_matrix_ok && negative_edge_found, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
