#pragma once

#include <string>

#include "geotomo/fields/fields.hpp"

namespace geotomo {

// Binary field container (fixed little-endian layout, see README):
//   bytes 0..7   magic "GTFLD01\0"
//   u32          kind: 0 scalar, 1 covector, 2 vector
//   u32 u32      nr, ntheta
//   f64          radius
//   u32 + bytes  metric name
//   u32 + bytes  config fingerprint
//   f64 pairs    node values (re, im), ring-major; covector/vector fields
//                store component 1 fully, then component 2
void write_field(const std::string& path, const ScalarField& f, const std::string& metric_name,
                 const std::string& fingerprint);
void write_field(const std::string& path, const CovectorField& f, const std::string& metric_name,
                 const std::string& fingerprint);
ScalarField read_scalar_field(const std::string& path, std::string* metric_name = nullptr,
                              std::string* fingerprint = nullptr);
CovectorField read_covector_field(const std::string& path, std::string* metric_name = nullptr,
                                  std::string* fingerprint = nullptr);

// CSV companion for plotting: one row per node, "j,k,r,theta,re,im[,re2,im2]".
void write_field_csv(const std::string& path, const ScalarField& f, const std::string& fingerprint);
void write_field_csv(const std::string& path, const CovectorField& f, const std::string& fingerprint);

}  // namespace geotomo
