#pragma once

// Jet transport of time-periodic polynomial vector fields: the Taylor jet of
// the period map, integrated in the polynomial algebra.

#include <vector>

#include "parabolic/polymap.hpp"

namespace parabolic {

/// cos(omega t) * cos_map + sin(omega t) * sin_map, omega = omega_multiple * 2 pi / period.
struct FieldMode {
  int omega_multiple = 0;
  PolyMap<double> cos_map;
  PolyMap<double> sin_map;
};

struct PeriodicField {
  double period = 1.0;
  std::vector<FieldMode> modes;

  int dim() const;
  int degree() const;
  int d() const;
  int d_prime() const;
  /// The field frozen at time t.
  PolyMap<double> at(double t) const;
  /// Throws NotFixedOrigin / BadParams / DimMismatch.
  void validate() const;
};

/// Time-independent field with the given period.
PeriodicField autonomous_field(const PolyMap<double>& X, double period);

struct FlowOptions {
  int steps = 4096;
  /// Double the step count until the relative change drops below rel_tol.
  bool adaptive = true;
  double rel_tol = 1e-10;
  int max_steps = 1 << 16;
};

struct FlowStats {
  int steps = 0;
  double rel_change = 0;
  bool converged = true;
};

/// Degree-p jet of the time-period map with fixed-step RK4.
PolyMap<double> flow_jet(const PeriodicField& X, int degree, const FlowOptions& opts = {}, FlowStats* stats = nullptr);

/// One fixed-step RK4 integration over [0, period].
PolyMap<double> flow_jet_fixed(const PeriodicField& X, int degree, int steps);

/// Lie series sum_{k<=terms} L_X^k(id)/k! of an autonomous polynomial field,
/// truncated at the given degree: the Taylor jet of the time-1 map.
template <Scalar T>
PolyMap<T> lie_time_one_map(const PolyMap<T>& X, int degree, int terms);

extern template PolyMap<Rational> lie_time_one_map(const PolyMap<Rational>&, int, int);
extern template PolyMap<double> lie_time_one_map(const PolyMap<double>&, int, int);

}  // namespace parabolic
