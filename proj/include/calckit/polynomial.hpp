#pragma once

#include <complex>
#include <vector>

namespace calckit {

using cplx = std::complex<double>;

// Coefficients are in ascending order of degree.
cplx poly_eval(const std::vector<cplx>& p, cplx z);
double poly_eval(const std::vector<double>& p, double x);
int poly_degree(const std::vector<double>& p);

struct Root {
    cplx value;
    int multiplicity = 1;
};

// All complex roots (companion-matrix eigenvalues), then roots closer than
// cluster_tol relative to their magnitude are merged and averaged.
std::vector<cplx> poly_roots(const std::vector<double>& p);
std::vector<Root> poly_roots_clustered(const std::vector<double>& p, double cluster_tol = 1e-5);

} // namespace calckit
