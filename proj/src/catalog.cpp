#include "pfaffian/catalog.hpp"

namespace pfaffian {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"rolling-tire",
       "rolling-without-slipping constraint of a tire on the plane",
       {"x", "y", "theta", "psi"},
       {},
       "sin(psi)*dx + cos(psi)*dy",
       3, 2, 2, "dlam + mu*dnu"},
      {"thermo-U",
       "first-law contact form for the internal-energy potential",
       {"V", "S", "U", "P", "T"},
       {},
       "dU + P*dV - T*dS",
       5, 3, 2, "dlam + mu1*dnu1 + mu2*dnu2"},
      {"drag-linear",
       "linear viscous drag force on the kinematic chart",
       {"t", "x1", "x2", "x3", "v1", "v2", "v3"},
       {"alpha"},
       "-alpha*v1*dx1 - alpha*v2*dx2 - alpha*v3*dx3",
       6, 3, 4, "mu1*dnu1 + mu2*dnu2 + mu3*dnu3"},
      {"contact-3d",
       "contact form on the jet space of scalar functions of one variable",
       {"x", "f", "p"},
       {},
       "df - p*dx",
       3, 2, 1, "dlam + mu*dnu"},
      {"canonical-theta",
       "canonical one-form on a two-pair cotangent chart",
       {"x1", "x2", "p1", "p2"},
       {},
       "p1*dx1 + p2*dx2",
       4, 2, 2, "mu1*dnu1 + mu2*dnu2"},
      {"gauge-rank4",
       "gauge potential with non-decomposable curvature",
       {"x", "y", "z", "w"},
       {},
       "x*dy + z*dw",
       4, 2, 2, "mu1*dnu1 + mu2*dnu2"},
      {"clebsch-flow",
       "covelocity in Clebsch variables",
       {"psi", "mu", "lam"},
       {},
       "dpsi + mu*dlam",
       3, 2, 1, "dlam + mu*dnu"},
  };
  return entries;
}

const CatalogEntry* catalog_find(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace pfaffian
