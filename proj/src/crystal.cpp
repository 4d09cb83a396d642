#include "mcm/crystal.hpp"

#include <stdexcept>

#include "mcm/schur.hpp"

namespace mcm {

Rational diag_eigenvalue(const Partition& lam, int p, const std::function<Rational(int)>& c) {
    Rational acc(0);
    for (std::size_t i = 0; i < lam.size(); ++i) {
        int ii = static_cast<int>(i) + 1;
        acc += c(p + lam[i] - ii + 1) - c(p - ii + 1);
    }
    if (p >= 0) {
        for (int j = 1; j <= p; ++j) acc += c(j);
    } else {
        for (int j = p + 1; j <= 0; ++j) acc -= c(j);
    }
    return acc;
}

Rational phi_k(const Partition& lam, int p, int k, const Rational& zeta) {
    if (k < 1) throw std::invalid_argument("phi_k: k must be >= 1");
    if (rat_is_zero(zeta)) throw std::invalid_argument("phi_k: zeta must be nonzero");
    Rational q = zeta * zeta;
    Rational acc(0);
    for (std::size_t i = 0; i < lam.size(); ++i) {
        int ii = static_cast<int>(i) + 1;
        acc += rat_pow(q, static_cast<long>(k) * (p + lam[i] - ii + 1)) -
               rat_pow(q, static_cast<long>(k) * (p - ii + 1));
    }
    Rational qk = rat_pow(q, k);
    acc += qk * (Rational(1) - rat_pow(q, static_cast<long>(k) * p)) / (Rational(1) - qk);
    return acc;
}

Rational w0_eigen(const Partition& lam, int p) {
    long pl = p;
    Rational acc(0);
    for (std::size_t i = 0; i < lam.size(); ++i) {
        long ii = static_cast<long>(i) + 1;
        long a = pl + lam[i] - ii + 1;
        long b = pl - ii + 1;
        acc += Rational(a * a - b * b);
    }
    acc += Rational(pl * (pl + 1) * (2 * pl + 1)) / 6;
    return acc;
}

TruncSeries phi_total(const Partition& lam, const PotentialConfig& pot, const QParams& params,
                      const Ctx& ctx) {
    TruncSeries acc(ctx);
    for (std::size_t k = 0; k < pot.t_vars.size(); ++k)
        acc = acc + TruncSeries::variable(ctx, pot.t_vars[k]) *
                        phi_k(lam, pot.p, static_cast<int>(k) + 1, params.zeta);
    return acc;
}

TruncSeries z_simple(const Ctx& ctx, const std::string& q_var) {
    int cap = ctx->caps()[static_cast<std::size_t>(ctx->index_of(q_var))];
    TruncSeries one = TruncSeries::constant(ctx, Rational(1));
    TruncSeries acc(ctx);
    for (const auto& lam : enumerate_partitions(cap)) {
        long lead = weight(lam) + 2 * n_stat(lam);
        if (lead > cap) continue;
        TruncSeries term = TruncSeries::variable(ctx, q_var, static_cast<int>(lead));
        for (int h : hook_lengths(lam)) {
            TruncSeries f = series_invert(one - TruncSeries::variable(ctx, q_var, h));
            term = term * f * f;
        }
        acc = acc + term;
    }
    return acc;
}

TruncSeries macmahon_product(const Ctx& ctx, const std::string& q_var) {
    int cap = ctx->caps()[static_cast<std::size_t>(ctx->index_of(q_var))];
    TruncSeries one = TruncSeries::constant(ctx, Rational(1));
    TruncSeries acc = one;
    for (int l = 1; l <= cap; ++l) {
        TruncSeries inv = series_invert(one - TruncSeries::variable(ctx, q_var, l));
        for (int j = 0; j < l; ++j) acc = acc * inv;
    }
    return acc;
}

TruncSeries z_two_param(const CrystalModel& model) {
    model.params.require_nonzero();
    if (model.N1 > 0 || model.N2 > 0) {
        if (model.N1 <= 0 || model.N2 <= 0)
            throw std::invalid_argument("z_two_param: both N1 and N2 must be set");
        model.params.require_bigraded(model.N1, model.N2);
    }
    const Ctx& ctx = model.ctx;
    int q_cap = ctx->caps()[static_cast<std::size_t>(ctx->index_of(model.Q_var))];
    int p = model.pot.p;
    long offset = model.fermionic_norm ? static_cast<long>(p) * (p + 1) / 2 : 0;
    TruncSeries acc(ctx);
    int max_lam = static_cast<int>(q_cap - offset);
    for (const auto& lam : enumerate_partitions(std::max(max_lam, 0))) {
        long n = weight(lam) + offset;
        if (n > q_cap) continue;
        Rational s = schur_principal_hook(lam, model.params.zeta1) *
                     schur_principal_hook(lam, model.params.zeta2);
        TruncSeries term =
            TruncSeries::variable(ctx, model.Q_var, static_cast<int>(n)) * s;
        if (!model.pot.t_vars.empty())
            term = term * series_exp(phi_total(lam, model.pot, model.params, ctx));
        if (!model.pot.beta_var.empty())
            term = term *
                   series_exp(TruncSeries::variable(ctx, model.pot.beta_var) * w0_eigen(lam, p));
        acc = acc + term;
    }
    return acc;
}

}  // namespace mcm
