#pragma once

#include <vector>

#include "kronres/graph.hpp"
#include "kronres/linalg.hpp"

namespace kronres {

/// Per-node probability of hitting `source` before `sink`, with the
/// boundary values v[source] = 1 and v[sink] = 0.
struct VoltageVector {
  int source = 0;
  int sink = 0;
  Vector v;
};

/// The three-valued outcome of the general resistance definition:
/// finite positive, infinite (no path), or undefined.
class ExtendedResistance {
 public:
  enum class Kind { Finite, Infinite, Undefined };

  static ExtendedResistance finite(double value);
  static ExtendedResistance infinite() { return ExtendedResistance(Kind::Infinite, 0.0); }
  static ExtendedResistance undefined() { return ExtendedResistance(Kind::Undefined, 0.0); }
  static ExtendedResistance zero() { return ExtendedResistance(Kind::Finite, 0.0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  double value() const;

 private:
  ExtendedResistance(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

/// Diagonal of the positive matrix M making M*L weight balanced, scaled so
/// that sum_i m_i * D_ii = 1 (equivalently m_i = phi_i / D_ii).
struct BalancingMatrix {
  Vector m;
};

struct ResistanceMatrix {
  std::vector<std::vector<ExtendedResistance>> r;
};

VoltageVector voltage_vector(const WeightedDigraph& g, int a, int b);

/// C(a,b) = (L/L[{a,b}^c,{a,b}^c])_{aa}. Unaffected by self-loops.
double effective_conductance(const WeightedDigraph& g, int a, int b);

double effective_resistance(const WeightedDigraph& g, int a, int b);

/// Three-way classification on the forward-reachable subgraph of a.
ExtendedResistance resistance_general(const WeightedDigraph& g, int a, int b);

/// P_esc(a,b) = C(a,b) / D_aa, with the virtual-self-loop degree rule.
double escape_probability(const WeightedDigraph& g, int a, int b);

/// Probability the walk from a first hits b via the direct edge: A_ab / C.
double first_passage_edge_probability(const WeightedDigraph& g, int a, int b);

/// Stationary distribution of the transition matrix, solved as a linear
/// system with an appended normalization row.
Vector stationary_distribution(const Matrix& p);

BalancingMatrix balancing(const WeightedDigraph& g);

/// (e_a - e_b)^T L^dagger (e_a - e_b) via the gamma-shift formula; valid
/// for strongly connected weight-balanced graphs.
double resistance_balanced_pinv(const WeightedDigraph& g, int a, int b);

/// m_a (e_a - e_b)^T (M L)^dagger (e_a - e_b); valid for strongly
/// connected graphs.
double resistance_strongly_connected(const WeightedDigraph& g, int a, int b);

ResistanceMatrix resistance_matrix(const WeightedDigraph& g);

/// d[i][j] = sqrt(R(i,j) / m_i): a symmetric metric whose square is a
/// Euclidean distance matrix.
Matrix metric_matrix(const WeightedDigraph& g);

/// (1/2) 1^T R 1; equals n * tr(L^dagger) for weight-balanced graphs.
double total_resistance(const WeightedDigraph& g);

/// Classical EDM criterion: -1/2 Pi r2 Pi is PSD within tol.
bool edm_check(const Matrix& r2, double tol);

}  // namespace kronres
