#pragma once

#include <climits>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mcm/params.hpp"
#include "mcm/partitions.hpp"
#include "mcm/report.hpp"
#include "mcm/series.hpp"

namespace mcm {

// Charged partition basis state |lam, p> / <lam, p|.
struct BasisState {
    int charge = 0;
    Partition shape;

    int energy() const { return weight(shape); }
    std::string str() const;
    bool operator==(const BasisState& o) const = default;
    bool operator<(const BasisState& o) const;
};

// Occupied-level description: every level <= floor is occupied, plus the
// listed levels above it (strictly descending). Charge = floor + #levels + 1.
struct MayaView {
    int floor = -1;
    std::vector<int> levels;

    int charge() const { return floor + static_cast<int>(levels.size()) + 1; }
};

MayaView maya_view(const BasisState& s, int floor);
BasisState state_from_maya(const MayaView& m);

constexpr int kNoCap = INT_MAX;

// Finite linear combination of basis states with TruncSeries coefficients.
// exact_to is the exactness horizon: every component of energy <= exact_to
// matches the untruncated vector; kNoCap means globally exact. Operations
// shrink the horizon only when they drop a coefficient that is nonzero in the
// truncated coefficient ring, so callers can distinguish truncation loss from
// exact zeros.
struct FockVector {
    enum class Side { Ket, Bra };

    Side side = Side::Ket;
    Ctx ctx;
    std::map<BasisState, TruncSeries> comps;
    int exact_to = kNoCap;

    bool is_zero() const { return comps.empty(); }
    void add(const BasisState& s, const TruncSeries& c);
    TruncSeries coeff(const BasisState& s) const;
    int max_energy() const;  // -1 when empty
};

FockVector basis_ket(const Ctx& ctx, int p, const Partition& lam = {});
FockVector basis_bra(const Ctx& ctx, int p, const Partition& lam = {});

FockVector operator+(const FockVector& a, const FockVector& b);
FockVector operator-(const FockVector& a, const FockVector& b);
FockVector operator*(const FockVector& a, const TruncSeries& c);
FockVector operator*(const FockVector& a, const Rational& c);

enum class FermionKind { Psi, PsiStar };

// psi_n / psi*_n with the crossing-count sign convention fixed by the
// charged-vacuum monomial formulas (|lam,p> comes out with coefficient +1).
FockVector apply_fermion(const FockVector& v, FermionKind kind, int n);

// Current mode J_m (moves one particle down by m on kets).
FockVector apply_J(const FockVector& v, int m, int energy_cap = kNoCap);

// Quantum-torus basis element V^(k)_m at numeric zeta; V^(0)_m = J_m and
// V^(k)_0 = H_k.
FockVector apply_V(const FockVector& v, int k, int m, const Rational& zeta,
                   int energy_cap = kNoCap);

// Diagonal operator given by its eigenvalue on each basis state.
FockVector apply_diag(const FockVector& v,
                      const std::function<TruncSeries(const BasisState&)>& eigen);

// Named diagonal bilinears; diag_custom applies sum_n c(n) :psi_{-n} psi*_n:.
FockVector apply_L0(const FockVector& v);
FockVector apply_W0(const FockVector& v);
FockVector apply_H(const FockVector& v, int k, const Rational& zeta);
FockVector apply_diag_custom(const FockVector& v, const std::function<Rational(int)>& c);

// exp(sum_k coeff[k-1] * J_{dir * k}) with dir = +1 (lowers kets) or -1
// (raises kets). Coefficients live in the vector's context.
FockVector apply_current_exp(const FockVector& v, int dir, const std::vector<TruncSeries>& coeff,
                             int energy_cap = kNoCap);

// Vertex operator V_+ (sign=+1) / V_- (sign=-1) through the interlacing sum,
// truncated at z-degree <= order. z may be a variable or a constant series.
FockVector apply_vertex(const FockVector& v, int sign, const TruncSeries& z, int order,
                        int energy_cap = kNoCap);

// Transfer operator G_+ (sign=+1) / G_- (sign=-1) at numeric zeta via the
// grade-by-grade current exponential.
FockVector apply_transfer(const FockVector& v, int sign, const Rational& zeta, int energy_cap);

// G_+/G_- coefficient sequence zeta^k/(k(1-zeta^{2k})) for k = 1..K, formal.
std::vector<TruncSeries> transfer_coeffs_formal(const Ctx& ctx, const std::string& zeta_var,
                                                int K);

// <bra|ket> (orthonormal pairing). exact=false when a truncation horizon on
// either side could have hidden a contribution.
struct Expectation {
    TruncSeries value;
    bool exact = true;
};
Expectation expectation(const FockVector& bra, const FockVector& ket);

// ---- identity checks -------------------------------------------------------

// [J_m, J_n] = m delta_{m+n,0} on all basis states of energy <= energy_cap,
// |charge| <= charge_bound.
VerificationReport check_heisenberg(int max_mode, int energy_cap, int charge_bound);

// Quantum-torus commutator (k,l >= 1):
// [V^(k)_m, V^(l)_n] = (q^{(lm-kn)/2} - q^{(kn-lm)/2})
//                      (V^(k+l)_{m+n} - delta_{m+n,0} q^{k+l}/(1-q^{k+l})).
VerificationReport check_quantum_torus(const QParams& params, int k, int l, int m, int n,
                                       int energy_cap);

// Closed-form eigenvalues of H_k, L0, W0 against the definitional bilinear
// sums; also J_m = V^(0)_m and H_k = V^(k)_0.
VerificationReport check_eigenvalues(const QParams& params, int k_max, int energy_cap);

// Interlacing route for V_+- equals the current-exponential route.
VerificationReport check_vertex_routes(int order, int energy_cap);

// Transfer checks: <p|G_+ components reproduce s_lam(q^rho); the partial
// products of vertex operators match the tail-summed current exponential; the
// G-commutation scalar holds in formal-zeta mode.
VerificationReport check_transfer(const QParams& params, int energy_cap);

// Intertwining relation of Lemma 1 and its bigraded substitutions:
//   q_a^{W0/2} G_-(q_a) G_+(q_a) H_k = ((-1)^{Nk} J_{Nk} + q^k/(1-q^k)) q_a^{W0/2} G_-(q_a) G_+(q_a)
// (mirror=false), or its mirror with J_{-Nk} on the right (mirror=true).
// zeta_a parameterizes the transfer/W0 factors, zeta the H_k potential,
// q = zeta_a^{2N}.
VerificationReport check_intertwining(const Rational& zeta_a, const Rational& zeta, int N, int k,
                                      bool mirror, int energy_cap);

}  // namespace mcm
