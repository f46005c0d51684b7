#include "geotomo/fields/field_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace geotomo {

namespace {

constexpr char kMagic[8] = {'G', 'T', 'F', 'L', 'D', '0', '1', '\0'};

void put_u32(std::ofstream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void put_f64(std::ofstream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_str(std::ofstream& os, const std::string& s) {
  put_u32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t get_u32(std::ifstream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}
double get_f64(std::ifstream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
std::string get_str(std::ifstream& is) {
  const std::uint32_t n = get_u32(is);
  std::string s(n, '\0');
  is.read(s.data(), n);
  return s;
}

void write_values(std::ofstream& os, const std::vector<cd>& v) {
  for (const cd& z : v) {
    put_f64(os, z.real());
    put_f64(os, z.imag());
  }
}

void read_values(std::ifstream& is, std::vector<cd>* v) {
  for (cd& z : *v) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    z = {re, im};
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  return os;
}

std::ifstream open_in(const std::string& path, std::uint32_t expect_kind, int* nr, int* nt,
                      double* radius, std::string* metric, std::string* fp) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::Io, "cannot open '" + path + "'");
  char magic[8];
  is.read(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0) fail(ErrorKind::Io, "'" + path + "' is not a field file");
  const std::uint32_t kind = get_u32(is);
  if (kind != expect_kind) fail(ErrorKind::Io, "'" + path + "' holds a different field kind");
  *nr = static_cast<int>(get_u32(is));
  *nt = static_cast<int>(get_u32(is));
  *radius = get_f64(is);
  const std::string m = get_str(is);
  const std::string f = get_str(is);
  if (metric) *metric = m;
  if (fp) *fp = f;
  return is;
}

}  // namespace

void write_field(const std::string& path, const ScalarField& f, const std::string& metric_name,
                 const std::string& fingerprint) {
  std::ofstream os = open_out(path);
  os.write(kMagic, 8);
  put_u32(os, 0);
  put_u32(os, static_cast<std::uint32_t>(f.grid->nr()));
  put_u32(os, static_cast<std::uint32_t>(f.grid->ntheta()));
  put_f64(os, f.grid->radius());
  put_str(os, metric_name);
  put_str(os, fingerprint);
  write_values(os, f.v);
}

void write_field(const std::string& path, const CovectorField& f, const std::string& metric_name,
                 const std::string& fingerprint) {
  std::ofstream os = open_out(path);
  os.write(kMagic, 8);
  put_u32(os, 1);
  put_u32(os, static_cast<std::uint32_t>(f.grid->nr()));
  put_u32(os, static_cast<std::uint32_t>(f.grid->ntheta()));
  put_f64(os, f.grid->radius());
  put_str(os, metric_name);
  put_str(os, fingerprint);
  write_values(os, f.c1);
  write_values(os, f.c2);
}

ScalarField read_scalar_field(const std::string& path, std::string* metric_name,
                              std::string* fingerprint) {
  int nr, nt;
  double radius;
  std::ifstream is = open_in(path, 0, &nr, &nt, &radius, metric_name, fingerprint);
  ScalarField f(std::make_shared<PolarGrid>(nr, nt, radius));
  read_values(is, &f.v);
  if (!is) fail(ErrorKind::Io, "'" + path + "' truncated");
  return f;
}

CovectorField read_covector_field(const std::string& path, std::string* metric_name,
                                  std::string* fingerprint) {
  int nr, nt;
  double radius;
  std::ifstream is = open_in(path, 1, &nr, &nt, &radius, metric_name, fingerprint);
  CovectorField f(std::make_shared<PolarGrid>(nr, nt, radius));
  read_values(is, &f.c1);
  read_values(is, &f.c2);
  if (!is) fail(ErrorKind::Io, "'" + path + "' truncated");
  return f;
}

namespace {

void csv_header(std::FILE* fp, const std::string& fingerprint, bool two_components) {
  std::fprintf(fp, "# fingerprint=%s\n", fingerprint.c_str());
  if (two_components)
    std::fprintf(fp, "j,k,r,theta,re1,im1,re2,im2\n");
  else
    std::fprintf(fp, "j,k,r,theta,re,im\n");
}

}  // namespace

void write_field_csv(const std::string& path, const ScalarField& f, const std::string& fingerprint) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  csv_header(fp, fingerprint, false);
  const PolarGrid& g = *f.grid;
  for (int j = 0; j <= g.nr(); ++j)
    for (int k = 0; k < g.ntheta(); ++k) {
      const cd z = f.v[static_cast<std::size_t>(g.index(j, k))];
      std::fprintf(fp, "%d,%d,%.17g,%.17g,%.17g,%.17g\n", j, k, g.r(j), g.theta(k), z.real(),
                   z.imag());
    }
  std::fclose(fp);
}

void write_field_csv(const std::string& path, const CovectorField& f, const std::string& fingerprint) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  csv_header(fp, fingerprint, true);
  const PolarGrid& g = *f.grid;
  for (int j = 0; j <= g.nr(); ++j)
    for (int k = 0; k < g.ntheta(); ++k) {
      const std::size_t id = static_cast<std::size_t>(g.index(j, k));
      std::fprintf(fp, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", j, k, g.r(j), g.theta(k),
                   f.c1[id].real(), f.c1[id].imag(), f.c2[id].real(), f.c2[id].imag());
    }
  std::fclose(fp);
}

}  // namespace geotomo
