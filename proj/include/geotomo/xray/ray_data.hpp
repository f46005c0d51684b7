#pragma once

#include <string>

#include "geotomo/geom/inflow.hpp"

namespace geotomo {

// Values of a ray transform over a sampled inflow bundle, one complex value
// per ray, kept together with the bundle layout (boundary-major grid).
struct RayData {
  InflowGrid bundle;
  std::vector<cd> values;

  RayData() = default;
  explicit RayData(InflowGrid g)
      : bundle(std::move(g)), values(bundle.rays.size(), cd{}) {}

  std::size_t size() const { return values.size(); }
};

// mu-weighted L2 norm over the bundle.
double l2_inflow_norm(const RayData& d);
// Discrete H1 norm: L2 plus first differences in the two bundle grid
// directions (periodic in the boundary angle, one-sided at aperture edges),
// mu-weighted.
double h1_inflow_norm(const RayData& d);

// CSV layout: "s,alpha,re,im,mu,weight" with a fingerprint header line.
void write_ray_csv(const std::string& path, const RayData& d, const std::string& fingerprint);
RayData read_ray_csv(const std::string& path);

}  // namespace geotomo
