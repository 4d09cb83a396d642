#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mcm/crystal.hpp"
#include "mcm/fock.hpp"
#include "mcm/params.hpp"
#include "mcm/report.hpp"
#include "mcm/series.hpp"

namespace mcm {

// One factor of a GL(infinity) word. Words act right-to-left on kets; bra-side
// action is evaluated through transposition (Plus <-> Minus, J_m <-> J_{-m}).
struct GLFactor {
    enum class Kind {
        QL0,              // Q^{L0}: Q^{|lam| + p(p+1)/2}
        ExpH,             // e^{H(t)}: exp(sum_k t_k Phi_k) at zeta
        PowW0Half,        // q_a^{W0/2}: zeta_a^{W0-eigenvalue}
        ExpCoupledDiag,   // exp(var * sum_n c(n) :psi_{-n} psi*_n:)
        TransferPlus,     // G_+(zeta)
        TransferMinus,    // G_-(zeta)
        VertexPlus,       // V_+(z), scalar z
        VertexMinus,      // V_-(z), scalar z
        CurrentExpPlus,   // exp(sum_k coeff[k-1] J_k)
        CurrentExpMinus,  // exp(sum_k coeff[k-1] J_{-k})
        CurrentJ,         // J_m
    } kind;

    Rational zeta;                      // TransferPlus/Minus, PowW0Half, ExpH
    Rational z;                         // VertexPlus/Minus
    std::vector<std::string> t_vars;    // ExpH
    std::string var;                    // ExpCoupledDiag
    std::function<Rational(int)> cfun;  // ExpCoupledDiag
    std::vector<TruncSeries> coeff;     // CurrentExpPlus/Minus
    int m = 0;                          // CurrentJ
};

struct GLElement {
    std::vector<GLFactor> factors;
};

GLFactor gl_QL0();
GLFactor gl_expH(const Rational& zeta, std::vector<std::string> t_vars);
GLFactor gl_powW0half(const Rational& zeta);
GLFactor gl_exp_coupled_diag(std::string var, std::function<Rational(int)> cfun);
GLFactor gl_transfer(int sign, const Rational& zeta);
GLFactor gl_vertex(int sign, const Rational& z);
GLFactor gl_current_exp(int dir, std::vector<TruncSeries> coeff);
GLFactor gl_currentJ(int m);

// g of the bigraded rewriting:
// q1^{W0/2} G_-(q1) G_+(q1) Q^{L0} G_-(q2) G_+(q2) q2^{W0/2}.
GLElement gl_bigraded_g(const QParams& params);

// Miwa-type coupling: contributes pref * x^k / k (full) or
// pref * x^k / (k (1 - q^k)) (q-weighted) to the current coefficient c_k.
struct MiwaCoupling {
    std::string var;
    Rational pref = Rational(1);
    bool q_weighted = false;
    Rational q;
};

std::vector<TruncSeries> coupling_coeffs(const Ctx& ctx,
                                         const std::vector<MiwaCoupling>& couplings);

// <p| exp(sum c+_k J_k) W exp(sum c-_k J_{-k}) |p> as a truncated series.
// plus/minus coupling lists build the boundary exponentials; the word may
// contain at most one Q^{L0} factor, which organizes the evaluation so every
// reported coefficient is an exact finite sum. exact=false marks results whose
// truncation window could not certify every coefficient.
struct WordValue {
    TruncSeries value;
    bool exact = true;
};

WordValue tau_eval(const GLElement& g, int p, const std::vector<MiwaCoupling>& plus,
                   const std::vector<MiwaCoupling>& minus, const Ctx& ctx,
                   const std::string& Q_var);

// As above with explicit current coefficients instead of Miwa couplings.
WordValue expectation_word(const std::vector<GLFactor>& word, int p, const Ctx& ctx,
                           const std::string& Q_var);

// ---- identity checks -------------------------------------------------------

// Theorem 1: Z(t,Q,p;q1,q2) (fermionic normalization) equals
// (q1 q2)^{-p(p+1)(2p+1)/12} exp(sum q^k t_k/(1-q^k)) times either tau form.
VerificationReport check_theorem1(const QParams& params, int N1, int N2, int p, int Q_cap,
                                  const std::vector<int>& t_caps);

// Theorem 2: (-1)^{N1 k} J_{N1 k} g = g (-1)^{N2 k} J_{-N2 k} on matrix
// elements within the window.
VerificationReport check_theorem2(const QParams& params, int N1, int N2, int k, int window,
                                  int Q_cap);

// Bigraded tau constraint via current insertions:
// (-1)^{N1 k} <J_{N1k} ...> - (-1)^{N2 k} <... J_{-N2k}> = 0.
VerificationReport check_tau_constraint(const QParams& params, int N1, int N2, int k, int p,
                                        int xy_cap, int Q_cap);

// Fay-type difference identity at T = Tbar = 0.
VerificationReport check_fay(const GLElement& g, int p, int xy_cap, int Q_cap);

// Differential 2D Toda: tau_xy tau - tau_x tau_y = tau(p+1) tau(p-1).
VerificationReport check_2dtoda_differential(const GLElement& g, int p, int xy_cap, int Q_cap);

enum class QDiffVariant { Sigma, Rho, SigmaTilde, RhoTilde, OneD };

// q-difference 2D Toda equation for sigma/rho and their Wronskian-normalized
// variants (RhoTilde is the Kajiwara-Satsuma form); OneD checks the xy-reduced
// 1D equation (requires a diagonal word).
VerificationReport check_qdiff_2dtoda(const GLElement& g, int p, const QParams& params,
                                      QDiffVariant variant, int xy_cap, int Q_cap);

// Theorem 3: the q-difference equation in Q for Z(t,Q,p;q1,q2), any q1,q2.
VerificationReport check_theorem3(const QParams& params, int p, int Q_cap,
                                  const std::vector<int>& t_caps);

// Lemma 4 prefactor adjudication: which exponent in
// sigma(x,y,p) = (q1^{-1/2} q2^{-1/2} x y)^{-E} Z(t, q1^{-1/2} q2^{-1/2} x y Q, p)
// makes the relation exact, E = p(p+1)/2 or E = p(p+1).
VerificationReport check_lemma4(const QParams& params, int p, int xy_cap, int Q_cap);

}  // namespace mcm
