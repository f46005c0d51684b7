#include "geotomo/xray/ray_data.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "geotomo/fields/polar_grid.hpp"

namespace geotomo {

double l2_inflow_norm(const RayData& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.values.size(); ++i)
    s += d.bundle.rays[i].weight * d.bundle.rays[i].mu * std::norm(d.values[i]);
  return std::sqrt(s);
}

double h1_inflow_norm(const RayData& d) {
  const int nb = d.bundle.n_boundary;
  const int nd = d.bundle.n_direction;
  if (nb * nd != static_cast<int>(d.values.size()))
    fail(ErrorKind::Domain, "ray data does not match its bundle grid");
  const double ds = 2.0 * M_PI / nb;
  auto at = [&](int i, int a) { return d.values[static_cast<std::size_t>(((i + nb) % nb) * nd + a)]; };

  // nonuniform three-point stencils in the aperture direction
  const std::vector<double>& an = d.bundle.alpha_nodes;
  double acc = 0.0;
  for (int i = 0; i < nb; ++i) {
    for (int a = 0; a < nd; ++a) {
      const InflowRay& r = d.bundle.rays[static_cast<std::size_t>(i * nd + a)];
      const cd u = at(i, a);
      const cd dus = (at(i + 1, a) - at(i - 1, a)) / (2.0 * ds);
      cd dua;
      if (nd == 1) {
        dua = cd{};
      } else if (a == 0) {
        const std::vector<double> w = fd_weights(an[0], {an[0], an[1], an[2]}, 1);
        dua = w[0] * at(i, 0) + w[1] * at(i, 1) + w[2] * at(i, 2);
      } else if (a == nd - 1) {
        const std::vector<double> w =
            fd_weights(an[static_cast<std::size_t>(nd - 1)],
                       {an[static_cast<std::size_t>(nd - 3)], an[static_cast<std::size_t>(nd - 2)],
                        an[static_cast<std::size_t>(nd - 1)]},
                       1);
        dua = w[0] * at(i, nd - 3) + w[1] * at(i, nd - 2) + w[2] * at(i, nd - 1);
      } else {
        const std::vector<double> w =
            fd_weights(an[static_cast<std::size_t>(a)],
                       {an[static_cast<std::size_t>(a - 1)], an[static_cast<std::size_t>(a)],
                        an[static_cast<std::size_t>(a + 1)]},
                       1);
        dua = w[0] * at(i, a - 1) + w[1] * at(i, a) + w[2] * at(i, a + 1);
      }
      acc += r.weight * r.mu * (std::norm(u) + std::norm(dus) + std::norm(dua));
    }
  }
  return std::sqrt(acc);
}

void write_ray_csv(const std::string& path, const RayData& d, const std::string& fingerprint) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  std::fprintf(fp, "# fingerprint=%s\n# n_boundary=%d n_direction=%d\n", fingerprint.c_str(),
               d.bundle.n_boundary, d.bundle.n_direction);
  std::fprintf(fp, "s,alpha,re,im,mu,weight\n");
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    const InflowRay& r = d.bundle.rays[i];
    std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.s, r.alpha, d.values[i].real(),
                 d.values[i].imag(), r.mu, r.weight);
  }
  std::fclose(fp);
}

RayData read_ray_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::Io, "cannot open '" + path + "'");
  RayData d;
  std::string line;
  int nb = 0, nd = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t p = line.find("n_boundary=");
      if (p != std::string::npos) std::sscanf(line.c_str() + p, "n_boundary=%d n_direction=%d", &nb, &nd);
      continue;
    }
    if (line.rfind("s,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string tok;
    double v[6];
    for (int i = 0; i < 6; ++i) {
      if (!std::getline(ss, tok, ',')) fail(ErrorKind::Io, "short row in '" + path + "'");
      v[i] = std::stod(tok);
    }
    InflowRay r;
    r.s = v[0];
    r.alpha = v[1];
    r.mu = v[4];
    r.weight = v[5];
    d.bundle.rays.push_back(r);
    d.values.push_back(cd{v[2], v[3]});
  }
  d.bundle.n_boundary = nb;
  d.bundle.n_direction = nd;
  return d;
}

}  // namespace geotomo
