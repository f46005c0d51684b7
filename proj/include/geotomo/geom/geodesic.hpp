#pragma once

#include <functional>
#include <vector>

#include "geotomo/geom/metric.hpp"

namespace geotomo {

struct GeodesicSample {
  double t;   // arclength parameter
  Vec2 x;     // chart position
  Vec2 v;     // chart velocity
  double b;   // scalar Jacobi field (0 unless requested)
  double db;  // its derivative along the geodesic
};

struct Geodesic {
  std::vector<GeodesicSample> samples;  // uniform step, final sample on the boundary
  double exit_time = 0.0;
  Vec2 entry_point, entry_dir;
};

struct ShootOptions {
  double step = 1e-3;
  bool with_jacobi = false;     // co-integrate b'' + K b = 0, b(0)=0, b'(0)=1
  double trap_factor = 100.0;   // error beyond trap_factor * (2 chart diameters)
  double unit_speed_tol = 1e-6;
};

// Classical 4th-order one-step integration of the geodesic equation until
// the chart boundary is crossed; the crossing step is bisected to 1e-10 in
// arclength. The visitor sees every accepted sample including the final
// boundary one. Returns the exit time.
double trace_geodesic(const MetricField& m, Vec2 x, Vec2 xi, const ShootOptions& opt,
                      const std::function<void(const GeodesicSample&)>& visit);

// Validated entry point (|xi|_g = 1 within tolerance, x in the closed disk).
Geodesic shoot_geodesic(const MetricField& m, Vec2 x, Vec2 xi, const ShootOptions& opt = {});

// tau_+ of an inflow ray; 0 for boundary points with outward direction.
double exit_time(const MetricField& m, Vec2 y, Vec2 xi, const ShootOptions& opt = {});

// Two-point distance by a Newton solve on the exponential map (shooting in
// direction and arclength, with the Jacobi field as the angular derivative).
// Throws a simplicity error when the solve cannot bracket the target.
double geodesic_distance(const MetricField& m, Vec2 x, Vec2 y, const ShootOptions& opt = {});

// Direction angle (in a fixed g-orthonormal frame at x) of the connecting
// geodesic from x to y, plus its length; used by distance and the fan code.
struct TwoPointSolution {
  double angle;
  double length;
  Vec2 initial_dir;
};
TwoPointSolution solve_two_point(const MetricField& m, Vec2 x, Vec2 y, const ShootOptions& opt = {});

// g-orthonormal frame at a point: e1 along the first coordinate direction.
void orthonormal_frame(const MetricField& m, Vec2 x, Vec2* e1, Vec2* e2);

// Rotate v by +90 degrees in the metric sense (unit normal of unit v).
Vec2 metric_rotate(const MetricField& m, Vec2 x, Vec2 v);

}  // namespace geotomo
