#pragma once

#include <string>

#include "mcm/partitions.hpp"
#include "mcm/series.hpp"

namespace mcm {

// Principal specialization s_lam(q^rho), q^rho = (q^{1/2}, q^{3/2}, ...),
// expressed through the root zeta = q^{1/2} so that all exponents are
// integers. Numeric overloads take a rational zeta; formal overloads build a
// series in the named zeta variable of ctx.

// Hook route: s_lam(q^rho) = zeta^{|lam| + 2 n(lam)} / prod_cells (1 - zeta^{2h}).
Rational schur_principal_hook(const Partition& lam, const Rational& zeta);
TruncSeries schur_principal_hook(const Partition& lam, const Ctx& ctx,
                                 const std::string& zeta_var);

// Jacobi-Trudi route: det(h_{lam_i - i + j}) with
// h_n(q^rho) = zeta^n / prod_{i<=n} (1 - zeta^{2i}).
Rational schur_principal_jt(const Partition& lam, const Rational& zeta);
TruncSeries schur_principal_jt(const Partition& lam, const Ctx& ctx,
                               const std::string& zeta_var);

// Combinatorial route: sum over semi-standard tableaux with entries <= max_entry,
// weight zeta^{2T_{ij}-1} per cell. Equals the other routes mod zeta^{2*max_entry}.
TruncSeries schur_principal_ssyt(const Partition& lam, const Ctx& ctx,
                                 const std::string& zeta_var, int max_entry);

// Product side of the Cauchy identity for the two-parameter model:
// prod_{m,n>=0} (1 - Q q1^{m+1/2} q2^{n+1/2})^{-1} through Q^cap, computed
// exactly as exp(sum_j Q^j p_j / j) with the closed-form power sums
// p_j = (z1 z2)^j / ((1 - z1^{2j})(1 - z2^{2j})).
TruncSeries cauchy_product_side(const Rational& zeta1, const Rational& zeta2, const Ctx& ctx,
                                const std::string& Q_var);

}  // namespace mcm
