#pragma once

#include <complex>

#include "aseplab/qmath.hpp"

namespace aseplab::series::detail {

cplx ipow(cplx b, int n);
cplx checked_poch(cplx a, qmath::Tau tau, const char* what);
double softplus(double y);

// Sum over |m| <= m_cut of pi e^{-2 pi i m e} / sin(-pi (d - 2 pi i m) / log tau), with d = log z - log w.
// Multiplying by exp(e d) gives the S-kernel. The tail bound is for the same normalisation.
cplx s_rest(cplx d, double e, double log_tau, int m_cut, double* tail);
int auto_m_cut(cplx d, double log_tau, double abs_tol);

}  // namespace aseplab::series::detail
