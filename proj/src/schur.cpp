#include "mcm/schur.hpp"

#include <stdexcept>
#include <vector>

namespace mcm {

namespace {

long zeta_lead_exponent(const Partition& lam) { return weight(lam) + 2 * n_stat(lam); }

}  // namespace

Rational schur_principal_hook(const Partition& lam, const Rational& zeta) {
    if (!is_valid_partition(lam)) throw std::invalid_argument("schur: invalid partition");
    if (rat_is_zero(zeta)) throw std::invalid_argument("schur: zeta must be nonzero");
    Rational num = rat_pow(zeta, zeta_lead_exponent(lam));
    Rational q = zeta * zeta;
    Rational den(1);
    for (int h : hook_lengths(lam)) {
        Rational f = Rational(1) - rat_pow(q, h);
        if (rat_is_zero(f)) throw std::domain_error("schur: q^h = 1 at a hook length");
        den *= f;
    }
    return num / den;
}

TruncSeries schur_principal_hook(const Partition& lam, const Ctx& ctx,
                                 const std::string& zeta_var) {
    if (!is_valid_partition(lam)) throw std::invalid_argument("schur: invalid partition");
    long lead = zeta_lead_exponent(lam);
    int cap = ctx->caps()[static_cast<std::size_t>(ctx->index_of(zeta_var))];
    if (lead > cap)
        throw std::domain_error("schur: zeta cap " + std::to_string(cap) +
                                " too small for leading term zeta^" + std::to_string(lead));
    TruncSeries one = TruncSeries::constant(ctx, Rational(1));
    TruncSeries r = TruncSeries::variable(ctx, zeta_var, static_cast<int>(lead));
    for (int h : hook_lengths(lam))
        r = r * series_invert(one - TruncSeries::variable(ctx, zeta_var, 2 * h));
    return r;
}

namespace {

// h_n(q^rho) in both coefficient rings; n < 0 -> 0, n = 0 -> 1.
Rational h_numeric(int n, const Rational& zeta) {
    if (n < 0) return Rational(0);
    Rational r = rat_pow(zeta, n);
    Rational q = zeta * zeta;
    for (int i = 1; i <= n; ++i) r /= Rational(1) - rat_pow(q, i);
    return r;
}

TruncSeries h_formal(int n, const Ctx& ctx, const std::string& zeta_var) {
    if (n < 0) return TruncSeries(ctx);
    TruncSeries one = TruncSeries::constant(ctx, Rational(1));
    TruncSeries r = TruncSeries::variable(ctx, zeta_var, n);
    for (int i = 1; i <= n; ++i)
        r = r * series_invert(one - TruncSeries::variable(ctx, zeta_var, 2 * i));
    return r;
}

// Exact determinant by expansion along the first row (sizes here are tiny;
// callers special-case the empty matrix).
template <typename T>
T det_expand(const std::vector<std::vector<T>>& m, std::size_t row,
             const std::vector<std::size_t>& cols) {
    if (cols.size() == 1) return m[row][cols[0]];
    T acc = m[row][cols[0]] - m[row][cols[0]];  // zero of the ring
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (k != j) rest.push_back(cols[k]);
        T term = m[row][cols[j]] * det_expand(m, row + 1, rest);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

template <typename T>
T det_expand(const std::vector<std::vector<T>>& m) {
    std::vector<std::size_t> cols(m.size());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    return det_expand(m, 0, cols);
}

}  // namespace

Rational schur_principal_jt(const Partition& lam, const Rational& zeta) {
    if (!is_valid_partition(lam)) throw std::invalid_argument("schur: invalid partition");
    std::size_t n = lam.size();
    if (n == 0) return Rational(1);
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = h_numeric(lam[i] - static_cast<int>(i) + static_cast<int>(j), zeta);
    return det_expand(m);
}

TruncSeries schur_principal_jt(const Partition& lam, const Ctx& ctx,
                               const std::string& zeta_var) {
    if (!is_valid_partition(lam)) throw std::invalid_argument("schur: invalid partition");
    std::size_t n = lam.size();
    if (n == 0) return TruncSeries::constant(ctx, Rational(1));
    std::vector<std::vector<TruncSeries>> m(n, std::vector<TruncSeries>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = h_formal(lam[i] - static_cast<int>(i) + static_cast<int>(j), ctx, zeta_var);
    return det_expand(m);
}

namespace {

void gen_ssyt(const Partition& lam, std::size_t row, std::size_t col,
              std::vector<std::vector<int>>& t, int max_entry, long wt2, const Ctx& ctx,
              const std::string& zeta_var, int zeta_cap, TruncSeries& acc) {
    if (row == lam.size()) {
        if (wt2 <= zeta_cap)
            acc.add_term([&] {
                Exps e(ctx->nvars(), 0);
                e[static_cast<std::size_t>(ctx->index_of(zeta_var))] = static_cast<int>(wt2);
                return e;
            }(), Rational(1));
        return;
    }
    if (col == static_cast<std::size_t>(lam[row])) {
        gen_ssyt(lam, row + 1, 0, t, max_entry, wt2, ctx, zeta_var, zeta_cap, acc);
        return;
    }
    int lo = 1;
    if (col > 0) lo = std::max(lo, t[row][col - 1]);                       // rows weakly increase
    if (row > 0 && col < t[row - 1].size()) lo = std::max(lo, t[row - 1][col] + 1);  // cols strict
    for (int v = lo; v <= max_entry; ++v) {
        long w2 = wt2 + 2 * v - 1;
        if (w2 > zeta_cap) break;  // larger entries only increase the weight
        t[row].push_back(v);
        gen_ssyt(lam, row, col + 1, t, max_entry, w2, ctx, zeta_var, zeta_cap, acc);
        t[row].pop_back();
    }
}

}  // namespace

TruncSeries schur_principal_ssyt(const Partition& lam, const Ctx& ctx,
                                 const std::string& zeta_var, int max_entry) {
    if (!is_valid_partition(lam)) throw std::invalid_argument("schur: invalid partition");
    if (max_entry < 1) throw std::invalid_argument("schur_ssyt: max_entry must be >= 1");
    TruncSeries acc(ctx);
    int cap = ctx->caps()[static_cast<std::size_t>(ctx->index_of(zeta_var))];
    std::vector<std::vector<int>> t(lam.size());
    gen_ssyt(lam, 0, 0, t, max_entry, 0, ctx, zeta_var, cap, acc);
    return acc;
}

TruncSeries cauchy_product_side(const Rational& zeta1, const Rational& zeta2, const Ctx& ctx,
                                const std::string& Q_var) {
    if (rat_is_zero(zeta1) || rat_is_zero(zeta2))
        throw std::invalid_argument("cauchy_product_side: zero zeta");
    int cap = ctx->caps()[static_cast<std::size_t>(ctx->index_of(Q_var))];
    TruncSeries logs(ctx);
    for (int j = 1; j <= cap; ++j) {
        Rational pj = rat_pow(zeta1 * zeta2, j) /
                      ((Rational(1) - rat_pow(zeta1, 2 * j)) * (Rational(1) - rat_pow(zeta2, 2 * j)));
        logs = logs + TruncSeries::variable(ctx, Q_var, j) * (pj / Rational(j));
    }
    return series_exp(logs);
}

}  // namespace mcm
