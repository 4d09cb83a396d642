#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mcm/params.hpp"
#include "mcm/partitions.hpp"
#include "mcm/series.hpp"

namespace mcm {

// Regularized eigenvalue of the diagonal bilinear sum_n c(n) :psi_{-n} psi*_n:
// on |lam, p>:  sum_i (c(p+lam_i-i+1) - c(p-i+1)) + V_c(p), where V_c(p) is
// the charge part sum_{j=1}^{p} c(j) (negated, shifted sum for p < 0).
Rational diag_eigenvalue(const Partition& lam, int p, const std::function<Rational(int)>& c);

// Potential Phi_k(lam, p) at q = zeta^2 (Laurent in q when p < 0).
Rational phi_k(const Partition& lam, int p, int k, const Rational& zeta);

// Eigenvalue of W_0: sum_i ((p+lam_i-i+1)^2 - (p-i+1)^2) + p(p+1)(2p+1)/6.
Rational w0_eigen(const Partition& lam, int p);

// Active couplings of the deformation potential: t_vars[k-1] couples Phi_k,
// beta_var (optional) couples the W_0 potential.
struct PotentialConfig {
    int p = 0;
    std::vector<std::string> t_vars;
    std::string beta_var;
};

// Phi(t, lam, p) = sum_k t_k Phi_k(lam, p) over the active couplings.
TruncSeries phi_total(const Partition& lam, const PotentialConfig& pot, const QParams& params,
                      const Ctx& ctx);

// Single-parameter partition function Z = sum_lam s_lam(q^rho)^2 as a q-series
// through q^q_cap (integer q-powers only; q_var names the variable in ctx).
TruncSeries z_simple(const Ctx& ctx, const std::string& q_var);

// Truncated MacMahon product prod_{l>=1} (1 - q^l)^{-l}.
TruncSeries macmahon_product(const Ctx& ctx, const std::string& q_var);

struct CrystalModel {
    QParams params;
    PotentialConfig pot;
    Ctx ctx;
    std::string Q_var = "Q";
    bool fermionic_norm = true;  // Q-weight |lam| + p(p+1)/2 instead of |lam|
    int N1 = 0, N2 = 0;          // nonzero: assert the bigraded relation
};

// Z(t, [beta,] Q, p; q1, q2) as a truncated series in (Q, t, beta).
TruncSeries z_two_param(const CrystalModel& model);

}  // namespace mcm
