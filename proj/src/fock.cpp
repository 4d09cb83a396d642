#include "mcm/fock.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mcm/crystal.hpp"
#include "mcm/schur.hpp"

namespace mcm {

std::string BasisState::str() const {
    return "p=" + std::to_string(charge) + " " + partition_str(shape);
}

bool BasisState::operator<(const BasisState& o) const {
    if (charge != o.charge) return charge < o.charge;
    if (shape == o.shape) return false;
    return partition_less(shape, o.shape);
}

MayaView maya_view(const BasisState& s, int floor) {
    int base = s.charge - static_cast<int>(s.shape.size()) - 1;
    if (floor > base) floor = base;
    MayaView m;
    m.floor = floor;
    for (int i = 1;; ++i) {
        int a = s.charge + part_at(s.shape, i) - i;
        if (a <= floor) break;
        m.levels.push_back(a);
    }
    return m;
}

BasisState state_from_maya(const MayaView& m) {
    BasisState s;
    s.charge = m.charge();
    for (std::size_t i = 0; i < m.levels.size(); ++i) {
        int lam = m.levels[i] - s.charge + static_cast<int>(i) + 1;
        if (lam < 0 || (i > 0 && m.levels[i] >= m.levels[i - 1]))
            throw std::logic_error("state_from_maya: levels not a valid Maya pattern");
        if (lam > 0) s.shape.push_back(lam);
    }
    if (!is_valid_partition(s.shape))
        throw std::logic_error("state_from_maya: shape not a partition");
    return s;
}

void FockVector::add(const BasisState& s, const TruncSeries& c) {
    if (c.is_zero()) return;
    auto it = comps.find(s);
    if (it == comps.end()) {
        comps.emplace(s, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) comps.erase(it);
    }
}

TruncSeries FockVector::coeff(const BasisState& s) const {
    auto it = comps.find(s);
    return it == comps.end() ? TruncSeries(ctx) : it->second;
}

int FockVector::max_energy() const {
    int e = -1;
    for (const auto& [s, c] : comps) e = std::max(e, s.energy());
    return e;
}

FockVector basis_ket(const Ctx& ctx, int p, const Partition& lam) {
    if (!is_valid_partition(lam)) throw std::invalid_argument("basis_ket: invalid partition");
    FockVector v;
    v.side = FockVector::Side::Ket;
    v.ctx = ctx;
    v.add(BasisState{p, lam}, TruncSeries::constant(ctx, Rational(1)));
    return v;
}

FockVector basis_bra(const Ctx& ctx, int p, const Partition& lam) {
    FockVector v = basis_ket(ctx, p, lam);
    v.side = FockVector::Side::Bra;
    return v;
}

FockVector operator+(const FockVector& a, const FockVector& b) {
    if (a.side != b.side) throw std::invalid_argument("fock add: mixed sides");
    FockVector r = a;
    r.exact_to = std::min(a.exact_to, b.exact_to);
    for (const auto& [s, c] : b.comps) r.add(s, c);
    return r;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
    if (a.side != b.side) throw std::invalid_argument("fock sub: mixed sides");
    FockVector r = a;
    r.exact_to = std::min(a.exact_to, b.exact_to);
    for (const auto& [s, c] : b.comps) r.add(s, -c);
    return r;
}

FockVector operator*(const FockVector& a, const TruncSeries& c) {
    FockVector r;
    r.side = a.side;
    r.ctx = a.ctx;
    r.exact_to = a.exact_to;
    for (const auto& [s, v] : a.comps) r.add(s, v * c);
    return r;
}

FockVector operator*(const FockVector& a, const Rational& c) {
    FockVector r;
    r.side = a.side;
    r.ctx = a.ctx;
    r.exact_to = a.exact_to;
    if (rat_is_zero(c)) return r;
    for (const auto& [s, v] : a.comps) r.add(s, v * c);
    return r;
}

namespace {

int add_horizon(int h, int d) { return h == kNoCap ? kNoCap : h + d; }

// One fermionic particle move on a Maya pattern. Returns the resulting state
// and the crossing sign, or nothing when the move annihilates.
struct MoveOut {
    BasisState to;
    int sign = 1;
};

int count_above(const std::vector<int>& levels, int level) {
    int c = 0;
    for (int l : levels) {
        if (l > level)
            ++c;
        else
            break;  // descending
    }
    return c;
}

std::optional<MoveOut> create_at(const BasisState& s, int level) {
    int base = s.charge - static_cast<int>(s.shape.size()) - 1;
    MayaView m = maya_view(s, std::min(base, level) - 1);
    if (std::find(m.levels.begin(), m.levels.end(), level) != m.levels.end()) return std::nullopt;
    int sign = count_above(m.levels, level) % 2 == 0 ? 1 : -1;
    m.levels.insert(std::upper_bound(m.levels.begin(), m.levels.end(), level, std::greater<int>()),
                    level);
    return MoveOut{state_from_maya(m), sign};
}

std::optional<MoveOut> destroy_at(const BasisState& s, int level) {
    int base = s.charge - static_cast<int>(s.shape.size()) - 1;
    MayaView m = maya_view(s, std::min(base, level) - 1);
    auto it = std::find(m.levels.begin(), m.levels.end(), level);
    if (it == m.levels.end()) return std::nullopt;
    int sign = count_above(m.levels, level) % 2 == 0 ? 1 : -1;
    m.levels.erase(it);
    return MoveOut{state_from_maya(m), sign};
}

// All single-particle moves level -> level - m (m != 0), with signs.
struct ParticleMove {
    BasisState to;
    int sign;
    int src_level;
};

std::vector<ParticleMove> particle_moves(const BasisState& s, int m) {
    int base = s.charge - static_cast<int>(s.shape.size()) - 1;
    MayaView mv = maya_view(s, base - std::abs(m) - 1);
    std::vector<ParticleMove> out;
    for (std::size_t i = 0; i < mv.levels.size(); ++i) {
        int src = mv.levels[i];
        int dst = src - m;
        if (dst <= mv.floor) continue;  // occupied below the window
        if (std::find(mv.levels.begin(), mv.levels.end(), dst) != mv.levels.end()) continue;
        // destroy at src, then create at dst on the reduced pattern
        MayaView w = mv;
        int sign = count_above(w.levels, src) % 2 == 0 ? 1 : -1;
        w.levels.erase(w.levels.begin() + static_cast<std::ptrdiff_t>(i));
        if (count_above(w.levels, dst) % 2 != 0) sign = -sign;
        w.levels.insert(
            std::upper_bound(w.levels.begin(), w.levels.end(), dst, std::greater<int>()), dst);
        out.push_back(ParticleMove{state_from_maya(w), sign, src});
    }
    return out;
}

FockVector make_like(const FockVector& v) {
    FockVector r;
    r.side = v.side;
    r.ctx = v.ctx;
    r.exact_to = v.exact_to;
    return r;
}

// J_m on ket components; exactness horizon and cap handled here.
FockVector apply_J_ket(const FockVector& v, int m, int cap) {
    FockVector r = make_like(v);
    r.exact_to = add_horizon(v.exact_to, -m);  // J_m shifts every energy by -m
    if (m == 0) {  // charge operator
        for (const auto& [s, c] : v.comps) r.add(s, c * Rational(s.charge));
        return r;
    }
    bool dropped = false;
    for (const auto& [s, c] : v.comps) {
        for (const auto& mv : particle_moves(s, m)) {
            if (mv.to.energy() > cap) {
                dropped = dropped || !c.is_zero();
                continue;
            }
            r.add(mv.to, mv.sign > 0 ? c : -c);
        }
    }
    if (dropped) r.exact_to = std::min(r.exact_to, cap);
    return r;
}

FockVector apply_V_ket(const FockVector& v, int k, int m, const Rational& zeta, int cap) {
    if (rat_is_zero(zeta)) throw std::invalid_argument("apply_V: zeta must be nonzero");
    FockVector r = make_like(v);
    r.exact_to = add_horizon(v.exact_to, -m);
    if (m == 0) {
        for (const auto& [s, c] : v.comps)
            r.add(s, c * (k == 0 ? Rational(s.charge) : phi_k(s.shape, s.charge, k, zeta)));
        return r;
    }
    bool dropped = false;
    Rational pref = rat_pow(zeta, static_cast<long>(-k) * m);  // q^{-km/2}
    for (const auto& [s, c] : v.comps) {
        for (const auto& mv : particle_moves(s, m)) {
            if (mv.to.energy() > cap) {
                dropped = dropped || !c.is_zero();
                continue;
            }
            // weight q^{k(l+1)} for the particle moved from level l
            Rational w = pref * rat_pow(zeta, 2L * k * (mv.src_level + 1));
            r.add(mv.to, c * (mv.sign > 0 ? w : Rational(-w)));
        }
    }
    if (dropped) r.exact_to = std::min(r.exact_to, cap);
    return r;
}

FockVector truncate_to_cap(const FockVector& v, int cap) {
    if (cap == kNoCap) return v;
    FockVector r = make_like(v);
    bool dropped = false;
    for (const auto& [s, c] : v.comps) {
        if (s.energy() > cap) {
            dropped = dropped || !c.is_zero();
            continue;
        }
        r.add(s, c);
    }
    if (dropped) r.exact_to = std::min(r.exact_to, cap);
    return r;
}

FockVector apply_current_exp_ket(const FockVector& v, int dir,
                                 const std::vector<TruncSeries>& coeff, int cap) {
    if (dir != 1 && dir != -1) throw std::invalid_argument("apply_current_exp: dir must be +-1");
    auto B = [&](const FockVector& w) {
        FockVector acc = make_like(w);
        acc.exact_to = w.exact_to;
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            if (coeff[i].is_zero()) continue;
            int k = static_cast<int>(i) + 1;
            // scale first: graded coefficients then ring-truncate the very
            // components the cap would drop, keeping the horizon exact
            acc = acc + apply_J_ket(w * coeff[i], dir * k, cap);
        }
        return acc;
    };
    FockVector total = truncate_to_cap(v, cap);
    FockVector term = total;
    for (long n = 1;; ++n) {
        term = B(term) * Rational(mpz_class(1), mpz_class(n));
        if (term.is_zero()) {
            total.exact_to = std::min(total.exact_to, term.exact_to);
            break;
        }
        total = total + term;
    }
    return total;
}

FockVector apply_vertex_ket(const FockVector& v, int sign, const TruncSeries& z, int order,
                            int cap) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("apply_vertex: sign must be +-1");
    if (order < 0) throw std::invalid_argument("apply_vertex: order must be >= 0");
    FockVector r = make_like(v);
    if (sign == -1) {
        r.exact_to = v.exact_to;  // raising
    } else {
        r.exact_to = v.exact_to == kNoCap ? kNoCap : v.exact_to - order;
    }
    bool dropped = false;
    // z^r, precomputed up to the order
    std::vector<TruncSeries> zpow;
    zpow.push_back(TruncSeries::constant(v.ctx, Rational(1)));
    for (int rr = 1; rr <= order; ++rr) zpow.push_back(zpow.back() * z);
    for (const auto& [s, c] : v.comps) {
        if (sign == -1) {
            int grow = order;
            const auto mus = interlacing_above(s.shape, grow);
            for (const auto& mu : mus) {
                int d = weight(mu) - s.energy();
                BasisState t{s.charge, mu};
                if (t.energy() > cap) {
                    if (!(c * zpow[static_cast<std::size_t>(d)]).is_zero()) dropped = true;
                    continue;
                }
                r.add(t, c * zpow[static_cast<std::size_t>(d)]);
            }
        } else {
            for (const auto& mu : interlacing_below(s.shape)) {
                int d = s.energy() - weight(mu);
                if (d > order) continue;
                r.add(BasisState{s.charge, mu}, c * zpow[static_cast<std::size_t>(d)]);
            }
        }
    }
    if (dropped) r.exact_to = std::min(r.exact_to, cap);
    return r;
}

std::vector<TruncSeries> transfer_coeffs_numeric(const Ctx& ctx, const Rational& zeta, int K) {
    std::vector<TruncSeries> c;
    for (int k = 1; k <= K; ++k) {
        Rational d = Rational(k) * (Rational(1) - rat_pow(zeta, 2 * k));
        if (rat_is_zero(d)) throw std::domain_error("transfer: zeta^{2k} = 1");
        c.push_back(TruncSeries::constant(ctx, rat_pow(zeta, k) / d));
    }
    return c;
}

FockVector apply_transfer_ket(const FockVector& v, int sign, const Rational& zeta, int cap) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("apply_transfer: sign must be +-1");
    if (v.is_zero()) return v;
    if (sign == -1 && cap == kNoCap)
        throw std::invalid_argument("apply_transfer: raising transfer needs a finite energy cap");
    int K = sign == 1 ? std::max(v.max_energy(), 0) : std::max(cap, 0);
    return apply_current_exp_ket(v, sign, transfer_coeffs_numeric(v.ctx, zeta, K), cap);
}

}  // namespace

FockVector apply_fermion(const FockVector& v, FermionKind kind, int n) {
    bool bra = v.side == FockVector::Side::Bra;
    // transpose: psi_n^T = psi*_{-n}
    FermionKind k = !bra ? kind
                         : (kind == FermionKind::Psi ? FermionKind::PsiStar : FermionKind::Psi);
    int nn = bra ? -n : n;
    FockVector r = make_like(v);
    if (r.exact_to != kNoCap) r.exact_to = -1;  // per-state energy shifts vary
    for (const auto& [s, c] : v.comps) {
        std::optional<MoveOut> mv = k == FermionKind::Psi ? create_at(s, -nn - 1)
                                                          : destroy_at(s, nn - 1);
        if (!mv) continue;
        r.add(mv->to, mv->sign > 0 ? c : -c);
    }
    return r;
}

FockVector apply_J(const FockVector& v, int m, int energy_cap) {
    return apply_J_ket(v, v.side == FockVector::Side::Bra ? -m : m, energy_cap);
}

FockVector apply_V(const FockVector& v, int k, int m, const Rational& zeta, int energy_cap) {
    return apply_V_ket(v, k, v.side == FockVector::Side::Bra ? -m : m, zeta, energy_cap);
}

FockVector apply_diag(const FockVector& v,
                      const std::function<TruncSeries(const BasisState&)>& eigen) {
    FockVector r = make_like(v);
    for (const auto& [s, c] : v.comps) r.add(s, c * eigen(s));
    return r;
}

FockVector apply_L0(const FockVector& v) {
    FockVector r = make_like(v);
    for (const auto& [s, c] : v.comps) {
        long p = s.charge;
        r.add(s, c * Rational(s.energy() + p * (p + 1) / 2));
    }
    return r;
}

FockVector apply_W0(const FockVector& v) {
    FockVector r = make_like(v);
    for (const auto& [s, c] : v.comps) r.add(s, c * w0_eigen(s.shape, s.charge));
    return r;
}

FockVector apply_H(const FockVector& v, int k, const Rational& zeta) {
    FockVector r = make_like(v);
    for (const auto& [s, c] : v.comps) r.add(s, c * phi_k(s.shape, s.charge, k, zeta));
    return r;
}

FockVector apply_diag_custom(const FockVector& v, const std::function<Rational(int)>& c) {
    FockVector r = make_like(v);
    for (const auto& [s, coef] : v.comps) r.add(s, coef * diag_eigenvalue(s.shape, s.charge, c));
    return r;
}

FockVector apply_current_exp(const FockVector& v, int dir, const std::vector<TruncSeries>& coeff,
                             int energy_cap) {
    return apply_current_exp_ket(v, v.side == FockVector::Side::Bra ? -dir : dir, coeff,
                                 energy_cap);
}

FockVector apply_vertex(const FockVector& v, int sign, const TruncSeries& z, int order,
                        int energy_cap) {
    return apply_vertex_ket(v, v.side == FockVector::Side::Bra ? -sign : sign, z, order,
                            energy_cap);
}

FockVector apply_transfer(const FockVector& v, int sign, const Rational& zeta, int energy_cap) {
    return apply_transfer_ket(v, v.side == FockVector::Side::Bra ? -sign : sign, zeta,
                              energy_cap);
}

std::vector<TruncSeries> transfer_coeffs_formal(const Ctx& ctx, const std::string& zeta_var,
                                                int K) {
    std::vector<TruncSeries> c;
    TruncSeries one = TruncSeries::constant(ctx, Rational(1));
    for (int k = 1; k <= K; ++k) {
        TruncSeries inv = series_invert(one - TruncSeries::variable(ctx, zeta_var, 2 * k));
        c.push_back(TruncSeries::variable(ctx, zeta_var, k) * inv *
                    Rational(mpz_class(1), mpz_class(k)));
    }
    return c;
}

Expectation expectation(const FockVector& bra, const FockVector& ket) {
    if (bra.side != FockVector::Side::Bra || ket.side != FockVector::Side::Ket)
        throw std::invalid_argument("expectation: expects (bra, ket)");
    if (!bra.ctx->same(*ket.ctx)) throw std::invalid_argument("expectation: context mismatch");
    Expectation e;
    e.value = TruncSeries(bra.ctx);
    for (const auto& [s, c] : bra.comps) {
        auto it = ket.comps.find(s);
        if (it != ket.comps.end()) e.value = e.value + c * it->second;
    }
    bool bra_all = bra.exact_to == kNoCap;
    bool ket_all = ket.exact_to == kNoCap;
    e.exact = (bra_all && ket_all) || (bra_all && ket.exact_to >= bra.max_energy()) ||
              (ket_all && bra.exact_to >= ket.max_energy());
    return e;
}

// ---- identity checks -------------------------------------------------------

namespace {

std::vector<BasisState> basis_window(int energy_cap, int charge_bound) {
    std::vector<BasisState> out;
    for (int p = -charge_bound; p <= charge_bound; ++p)
        for (const auto& lam : enumerate_partitions(energy_cap)) out.push_back({p, lam});
    return out;
}

// Renders the difference of two vectors restricted to energy <= window.
std::string residual_str(const FockVector& a, const FockVector& b, int window) {
    FockVector d = a - b;
    std::ostringstream os;
    bool any = false;
    for (const auto& [s, c] : d.comps) {
        if (s.energy() > window) continue;
        if (c.is_zero()) continue;
        if (any) os << "; ";
        os << s.str() << ": " << c.str();
        any = true;
    }
    return any ? os.str() : "0";
}

}  // namespace

VerificationReport check_heisenberg(int max_mode, int energy_cap, int charge_bound) {
    VerificationReport rep;
    rep.identity = "[J_m, J_n] = m delta_{m+n,0}";
    rep.caps = {{"energy", energy_cap}, {"max_mode", max_mode}, {"charge", charge_bound}};
    Ctx scalar = make_context({}, {});
    for (int m = -max_mode; m <= max_mode; ++m) {
        for (int n = -max_mode; n <= max_mode; ++n) {
            if (m == 0 || n == 0) continue;
            for (const auto& s : basis_window(energy_cap, charge_bound)) {
                FockVector v = basis_ket(scalar, s.charge, s.shape);
                FockVector lhs = apply_J(apply_J(v, n), m) - apply_J(apply_J(v, m), n);
                FockVector rhs = (m + n == 0) ? v * Rational(m) : make_like(v);
                Residual r;
                r.where = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " on " + s.str();
                r.value = residual_str(lhs, rhs, kNoCap);
                rep.residuals.push_back(r);
            }
        }
    }
    return rep;
}

VerificationReport check_quantum_torus(const QParams& params, int k, int l, int m, int n,
                                       int energy_cap) {
    if (k < 1 || l < 1) throw std::invalid_argument("check_quantum_torus: k,l >= 1");
    params.require_nonzero();
    VerificationReport rep;
    rep.identity = "[V^(k)_m, V^(l)_n] = (q^{(lm-kn)/2}-q^{(kn-lm)/2})(V^(k+l)_{m+n} - delta c)";
    rep.params = {{"zeta", rat_str(params.zeta)},
                  {"k", std::to_string(k)},
                  {"l", std::to_string(l)},
                  {"m", std::to_string(m)},
                  {"n", std::to_string(n)}};
    rep.caps = {{"energy", energy_cap}};
    Ctx scalar = make_context({}, {});
    const Rational& z = params.zeta;
    Rational q = params.q();
    Rational factor = rat_pow(z, l * m - k * n) - rat_pow(z, k * n - l * m);
    for (const auto& s : basis_window(energy_cap, 2)) {
        FockVector v = basis_ket(scalar, s.charge, s.shape);
        FockVector lhs = apply_V(apply_V(v, l, n, z), k, m, z) -
                         apply_V(apply_V(v, k, m, z), l, n, z);
        FockVector rhs = apply_V(v, k + l, m + n, z) * factor;
        if (m + n == 0) {
            Rational c = rat_pow(q, k + l) / (Rational(1) - rat_pow(q, k + l));
            rhs = rhs - v * (factor * c);
        }
        Residual r;
        r.where = "on " + s.str();
        r.value = residual_str(lhs, rhs, kNoCap);
        rep.residuals.push_back(r);
    }
    return rep;
}

VerificationReport check_eigenvalues(const QParams& params, int k_max, int energy_cap) {
    params.require_nonzero();
    VerificationReport rep;
    rep.identity = "diagonal eigenvalues (H_k, L0, W0) vs definitional bilinear sums";
    rep.params = {{"zeta", rat_str(params.zeta)}};
    rep.caps = {{"energy", energy_cap}, {"k_max", k_max}};
    Ctx scalar = make_context({}, {});
    Rational q = params.q();
    for (const auto& s : basis_window(energy_cap, 2)) {
        // occupancy read straight off the Maya pattern
        auto maya_eigen = [&](const std::function<Rational(int)>& c) {
            int base = s.charge - static_cast<int>(s.shape.size()) - 1;
            MayaView m = maya_view(s, std::min(base, -1) - 1);
            Rational acc(0);
            for (int l : m.levels)
                if (l >= 0) acc += c(l + 1);
            for (int l = m.floor + 1; l < 0; ++l)
                if (std::find(m.levels.begin(), m.levels.end(), l) == m.levels.end())
                    acc -= c(l + 1);
            return acc;
        };
        long p = s.charge;
        Rational l0 = Rational(s.energy() + p * (p + 1) / 2);
        Rational dl0 = maya_eigen([](int nn) { return Rational(nn); });
        Rational w0 = w0_eigen(s.shape, s.charge);
        Rational dw0 = maya_eigen([](int nn) { return Rational(static_cast<long>(nn) * nn); });
        rep.residuals.push_back({"L0 on " + s.str(), rat_str(l0 - dl0), false});
        rep.residuals.push_back({"W0 on " + s.str(), rat_str(w0 - dw0), false});
        for (int k = 1; k <= k_max; ++k) {
            Rational hk = phi_k(s.shape, s.charge, k, params.zeta);
            Rational dhk = maya_eigen([&](int nn) { return rat_pow(q, static_cast<long>(k) * nn); });
            rep.residuals.push_back(
                {"H_" + std::to_string(k) + " on " + s.str(), rat_str(hk - dhk), false});
            // H_k = V^(k)_0 through the operator route
            FockVector v = basis_ket(scalar, s.charge, s.shape);
            Residual r;
            r.where = "V^(k)_0 vs H_k on " + s.str();
            r.value = residual_str(apply_V(v, k, 0, params.zeta),
                                   apply_H(v, k, params.zeta), kNoCap);
            rep.residuals.push_back(r);
        }
        for (int m = -2; m <= 2; ++m) {
            FockVector v = basis_ket(scalar, s.charge, s.shape);
            Residual r;
            r.where = "V^(0)_" + std::to_string(m) + " vs J_" + std::to_string(m) + " on " + s.str();
            r.value = residual_str(apply_V(v, 0, m, params.zeta), apply_J(v, m), kNoCap);
            rep.residuals.push_back(r);
        }
    }
    return rep;
}

VerificationReport check_vertex_routes(int order, int energy_cap) {
    VerificationReport rep;
    rep.identity = "vertex interlacing sum = exp of current action";
    rep.caps = {{"order", order}, {"energy", energy_cap}};
    Ctx ctx = make_context({"z"}, {order});
    TruncSeries zv = TruncSeries::variable(ctx, "z");
    std::vector<TruncSeries> coeff;
    for (int kk = 1; kk <= order; ++kk)
        coeff.push_back(TruncSeries::variable(ctx, "z", kk) * Rational(mpz_class(1), mpz_class(kk)));
    for (const auto& s : basis_window(energy_cap, 1)) {
        FockVector v = basis_ket(ctx, s.charge, s.shape);
        for (int sign : {+1, -1}) {
            FockVector via_strip = apply_vertex(v, sign, zv, order, kNoCap);
            FockVector via_exp = apply_current_exp(v, sign, coeff, kNoCap);
            Residual r;
            r.where = std::string(sign == 1 ? "V_+" : "V_-") + " on " + s.str();
            r.value = residual_str(via_strip, via_exp, kNoCap);
            rep.residuals.push_back(r);
        }
    }
    return rep;
}

VerificationReport check_transfer(const QParams& params, int energy_cap) {
    params.require_nonzero();
    VerificationReport rep;
    rep.identity = "transfer operators: Schur components, vertex factorization, commutation";
    rep.params = {{"zeta", rat_str(params.zeta)}};
    rep.caps = {{"energy", energy_cap}};
    Ctx scalar = make_context({}, {});
    const Rational& z = params.zeta;

    // <p|G_+ components equal s_lam(q^rho)
    for (int p : {0, 1, -2}) {
        FockVector bra = apply_transfer(basis_bra(scalar, p), +1, z, energy_cap);
        for (const auto& lam : enumerate_partitions(energy_cap)) {
            Rational want = schur_principal_hook(lam, z);
            Rational got = bra.coeff(BasisState{p, lam}).constant_term();
            rep.residuals.push_back(
                {"<p|G_+ at p=" + std::to_string(p) + " " + partition_str(lam),
                 rat_str(got - want), false});
        }
    }

    // partial products of vertex operators vs tail-summed current exponential
    for (int M : {0, 1, 2}) {
        for (const auto& lam : {Partition{}, Partition{2, 1}}) {
            FockVector v = basis_ket(scalar, 0, lam);
            FockVector prod = v;
            for (int m = M; m >= 0; --m) {
                TruncSeries zm = TruncSeries::constant(scalar, rat_pow(z, 2 * m + 1));
                prod = apply_vertex(prod, -1, zm, energy_cap, energy_cap);
            }
            std::vector<TruncSeries> coeff;
            for (int k = 1; k <= energy_cap; ++k) {
                Rational ck = rat_pow(z, k) * (Rational(1) - rat_pow(z, 2L * k * (M + 1))) /
                              (Rational(k) * (Rational(1) - rat_pow(z, 2 * k)));
                coeff.push_back(TruncSeries::constant(scalar, ck));
            }
            FockVector expo = apply_current_exp(v, -1, coeff, energy_cap);
            Residual r;
            r.where = "prod_{m<=" + std::to_string(M) + "} V_-(q^{m+1/2}) on " +
                      partition_str(lam);
            r.value = residual_str(prod, expo, energy_cap);
            r.overflow = prod.exact_to < energy_cap || expo.exact_to < energy_cap;
            rep.residuals.push_back(r);
        }
    }

    // G_+ G_- = G_- G_+ exp(sum q^k/(k(1-q^k)^2)) in formal-zeta mode
    {
        int N = energy_cap;
        Ctx zc = make_context({"zeta"}, {N});
        TruncSeries one = TruncSeries::constant(zc, Rational(1));
        auto gcoeff = transfer_coeffs_formal(zc, "zeta", N);
        TruncSeries arg(zc);
        for (int k = 1; 2 * k <= N; ++k) {
            TruncSeries inv = series_invert(one - TruncSeries::variable(zc, "zeta", 2 * k));
            arg = arg + TruncSeries::variable(zc, "zeta", 2 * k) * inv * inv *
                            Rational(mpz_class(1), mpz_class(k));
        }
        TruncSeries scalar_factor = series_exp(arg);
        for (const auto& lam : {Partition{}, Partition{1}, Partition{2, 1}}) {
            FockVector v = basis_ket(zc, 0, lam);
            int cap = N + weight(lam);
            FockVector lhs =
                apply_current_exp(apply_current_exp(v, -1, gcoeff, cap), +1, gcoeff, cap);
            FockVector rhs =
                apply_current_exp(apply_current_exp(v, +1, gcoeff, cap), -1, gcoeff, cap) *
                scalar_factor;
            Residual r;
            r.where = "G_+G_- vs G_-G_+ exp(...) on " + partition_str(lam) + " mod zeta^" +
                      std::to_string(N + 1);
            r.value = residual_str(lhs, rhs, kNoCap);
            r.overflow = lhs.exact_to != kNoCap || rhs.exact_to != kNoCap;
            rep.residuals.push_back(r);
        }
    }
    return rep;
}

VerificationReport check_intertwining(const Rational& zeta_a, const Rational& zeta, int N, int k,
                                      bool mirror, int energy_cap) {
    if (k < 1 || N < 1) throw std::invalid_argument("check_intertwining: k,N >= 1");
    VerificationReport rep;
    rep.identity = mirror ? "H_k G_-G_+ q_a^{W0/2} = G_-G_+ q_a^{W0/2} ((-1)^{Nk} J_{-Nk} + c)"
                          : "q_a^{W0/2} G_-G_+ H_k = ((-1)^{Nk} J_{Nk} + c) q_a^{W0/2} G_-G_+";
    rep.params = {{"zeta_a", rat_str(zeta_a)},
                  {"zeta", rat_str(zeta)},
                  {"N", std::to_string(N)},
                  {"k", std::to_string(k)}};
    rep.caps = {{"energy", energy_cap}};
    Ctx scalar = make_context({}, {});
    Rational q = zeta * zeta;
    Rational cterm = rat_pow(q, k) / (Rational(1) - rat_pow(q, k));
    Rational sgn = (N * k) % 2 == 0 ? Rational(1) : Rational(-1);
    int W = energy_cap;
    auto w0half = [&](const FockVector& v) {
        return apply_diag(v, [&](const BasisState& s) {
            Rational w0 = w0_eigen(s.shape, s.charge);
            mpz_class num = w0.get_num();  // integer-valued
            return TruncSeries::constant(v.ctx, rat_pow(zeta_a, num.get_si()));
        });
    };
    for (const auto& s : basis_window(W, 2)) {
        FockVector v = basis_ket(scalar, s.charge, s.shape);
        FockVector lhs, rhs;
        if (!mirror) {
            // LHS: H_k, then G_+(a), then G_-(a) capped, then q_a^{W0/2}
            lhs = w0half(apply_transfer(apply_transfer(apply_H(v, k, zeta), +1, zeta_a, kNoCap),
                                        -1, zeta_a, W));
            FockVector base = w0half(
                apply_transfer(apply_transfer(v, +1, zeta_a, kNoCap), -1, zeta_a, W + N * k));
            rhs = apply_J(base, N * k, kNoCap) * sgn +
                  w0half(apply_transfer(apply_transfer(v, +1, zeta_a, kNoCap), -1, zeta_a, W)) *
                      cterm;
        } else {
            // LHS: q_a^{W0/2}, G_+(a), G_-(a) capped, then H_k
            lhs = apply_H(apply_transfer(apply_transfer(w0half(v), +1, zeta_a, kNoCap), -1,
                                         zeta_a, W),
                          k, zeta);
            FockVector jv = apply_J(v, -N * k, kNoCap) * sgn + v * cterm;
            rhs = apply_transfer(apply_transfer(w0half(jv), +1, zeta_a, kNoCap), -1, zeta_a, W);
        }
        Residual r;
        r.where = "on " + s.str();
        r.value = residual_str(lhs, rhs, W);
        r.overflow = lhs.exact_to < W || rhs.exact_to < W;
        rep.residuals.push_back(r);
    }
    return rep;
}

}  // namespace mcm
