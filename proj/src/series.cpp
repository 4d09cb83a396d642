#include "mcm/series.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mcm {

SeriesContext::SeriesContext(std::vector<std::string> vars, std::vector<int> caps,
                             std::vector<int> mins)
    : vars_(std::move(vars)), caps_(std::move(caps)), mins_(std::move(mins)) {
    if (mins_.empty()) mins_.assign(vars_.size(), 0);
    if (caps_.size() != vars_.size() || mins_.size() != vars_.size())
        throw std::invalid_argument("SeriesContext: vars/caps/mins size mismatch");
    std::set<std::string> seen;
    for (const auto& v : vars_)
        if (!seen.insert(v).second)
            throw std::invalid_argument("SeriesContext: duplicate variable '" + v + "'");
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (caps_[i] < mins_[i])
            throw std::invalid_argument("SeriesContext: cap < min for '" + vars_[i] + "'");
}

int SeriesContext::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("SeriesContext: unknown variable '" + name + "'");
}

bool SeriesContext::same(const SeriesContext& o) const {
    return vars_ == o.vars_ && caps_ == o.caps_ && mins_ == o.mins_;
}

Ctx make_context(std::vector<std::string> vars, std::vector<int> caps, std::vector<int> mins) {
    return std::make_shared<const SeriesContext>(std::move(vars), std::move(caps),
                                                 std::move(mins));
}

namespace {

void require_ctx(const Ctx& c, const char* who) {
    if (!c) throw std::invalid_argument(std::string(who) + ": series without context");
}

void require_same(const TruncSeries& a, const TruncSeries& b, const char* who) {
    require_ctx(a.context(), who);
    require_ctx(b.context(), who);
    if (a.context().get() == b.context().get()) return;
    if (!a.context()->same(*b.context()))
        throw std::invalid_argument(std::string(who) + ": context mismatch");
}

}  // namespace

TruncSeries TruncSeries::constant(const Ctx& ctx, const Rational& c) {
    require_ctx(ctx, "constant");
    TruncSeries s(ctx);
    if (!rat_is_zero(c)) {
        Exps e(ctx->nvars(), 0);
        s.add_term(e, c);
    }
    return s;
}

TruncSeries TruncSeries::monomial(const Ctx& ctx, const Exps& e, const Rational& c) {
    require_ctx(ctx, "monomial");
    if (e.size() != ctx->nvars()) throw std::invalid_argument("monomial: exponent arity mismatch");
    TruncSeries s(ctx);
    s.add_term(e, c);
    return s;
}

TruncSeries TruncSeries::variable(const Ctx& ctx, const std::string& name, int power) {
    require_ctx(ctx, "variable");
    Exps e(ctx->nvars(), 0);
    e[static_cast<std::size_t>(ctx->index_of(name))] = power;
    return monomial(ctx, e, Rational(1));
}

Rational TruncSeries::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncSeries::constant_term() const {
    if (!ctx_) return Rational(0);
    return coeff(Exps(ctx_->nvars(), 0));
}

void TruncSeries::add_term(const Exps& e, const Rational& c) {
    if (rat_is_zero(c)) return;
    const auto& caps = ctx_->caps();
    const auto& mins = ctx_->mins();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > caps[i]) return;  // quotient by the cap ideal
        if (e[i] < mins[i])
            throw std::domain_error("series: exponent below Laurent floor for '" +
                                    ctx_->vars()[i] + "'");
    }
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (rat_is_zero(it->second)) terms_.erase(it);
    }
}

bool TruncSeries::operator==(const TruncSeries& o) const {
    require_same(*this, o, "operator==");
    return terms_ == o.terms_;
}

std::string TruncSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_str(c) << ")";
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) os << "*" << ctx_->vars()[i] << "^" << e[i];
    }
    return os.str();
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    require_same(a, b, "series_add");
    TruncSeries r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    require_same(a, b, "series_sub");
    TruncSeries r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, Rational(-c));
    return r;
}

TruncSeries operator-(const TruncSeries& a) {
    TruncSeries r(a.context());
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, Rational(-c));
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    require_same(a, b, "series_mul");
    TruncSeries r(a.context());
    if (a.terms_.empty() || b.terms_.empty()) return r;
    const auto& caps = a.context()->caps();
    Exps e(a.context()->nvars());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            bool over = false;
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                if (e[i] > caps[i]) {
                    over = true;
                    break;
                }
            }
            if (over) continue;
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

TruncSeries operator*(const TruncSeries& a, const Rational& c) {
    TruncSeries r(a.context());
    if (rat_is_zero(c)) return r;
    for (const auto& [e, v] : a.terms_) r.terms_.emplace(e, Rational(v * c));
    return r;
}

TruncSeries series_exp(const TruncSeries& a) {
    require_ctx(a.context(), "series_exp");
    if (!rat_is_zero(a.constant_term()))
        throw std::domain_error("series_exp: nonzero constant term");
    TruncSeries acc = TruncSeries::constant(a.context(), Rational(1));
    TruncSeries term = acc;
    for (long n = 1;; ++n) {
        term = term * a;
        if (term.is_zero()) break;
        term = term * Rational(mpz_class(1), mpz_class(n));
        acc = acc + term;
    }
    return acc;
}

TruncSeries series_invert(const TruncSeries& a) {
    require_ctx(a.context(), "series_invert");
    Rational c0 = a.constant_term();
    if (rat_is_zero(c0)) throw std::domain_error("series_invert: zero constant term");
    Rational ic = Rational(1) / c0;
    // a = c0 (1 - u) with u nilpotent; a^{-1} = c0^{-1} sum u^n.
    TruncSeries u = TruncSeries::constant(a.context(), Rational(1)) - a * ic;
    TruncSeries acc = TruncSeries::constant(a.context(), Rational(1));
    TruncSeries pw = acc;
    for (;;) {
        pw = pw * u;
        if (pw.is_zero()) break;
        acc = acc + pw;
    }
    return acc * ic;
}

TruncSeries series_scale_var(const TruncSeries& a, const std::string& var, const Rational& c) {
    require_ctx(a.context(), "series_scale_var");
    std::size_t idx = static_cast<std::size_t>(a.context()->index_of(var));
    TruncSeries r(a.context());
    for (const auto& [e, v] : a.terms()) {
        if (e[idx] == 0) {
            r.add_term(e, v);
        } else {
            r.add_term(e, v * rat_pow(c, e[idx]));
        }
    }
    return r;
}

TruncSeries series_derive(const TruncSeries& a, const std::string& var) {
    require_ctx(a.context(), "series_derive");
    std::size_t idx = static_cast<std::size_t>(a.context()->index_of(var));
    TruncSeries r(a.context());
    for (const auto& [e, v] : a.terms()) {
        if (e[idx] == 0) continue;
        Exps e2 = e;
        e2[idx] -= 1;
        r.add_term(e2, v * Rational(e[idx]));
    }
    return r;
}

TruncSeries series_eval_var(const TruncSeries& a, const std::string& var, const Rational& c) {
    require_ctx(a.context(), "series_eval_var");
    std::size_t idx = static_cast<std::size_t>(a.context()->index_of(var));
    std::vector<std::string> vars;
    std::vector<int> caps, mins;
    for (std::size_t i = 0; i < a.context()->nvars(); ++i) {
        if (i == idx) continue;
        vars.push_back(a.context()->vars()[i]);
        caps.push_back(a.context()->caps()[i]);
        mins.push_back(a.context()->mins()[i]);
    }
    Ctx nctx = make_context(vars, caps, mins);
    TruncSeries r(nctx);
    for (const auto& [e, v] : a.terms()) {
        Exps e2;
        e2.reserve(e.size() - 1);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != idx) e2.push_back(e[i]);
        r.add_term(e2, e[idx] == 0 ? v : Rational(v * rat_pow(c, e[idx])));
    }
    return r;
}

TruncSeries series_subst_scaled_monomial(const TruncSeries& a, const std::string& var,
                                         const Rational& c,
                                         const std::vector<std::pair<std::string, int>>& others) {
    require_ctx(a.context(), "series_subst_scaled_monomial");
    std::size_t idx = static_cast<std::size_t>(a.context()->index_of(var));
    std::vector<std::pair<std::size_t, int>> oidx;
    for (const auto& [name, mult] : others)
        oidx.emplace_back(static_cast<std::size_t>(a.context()->index_of(name)), mult);
    TruncSeries r(a.context());
    for (const auto& [e, v] : a.terms()) {
        int ev = e[idx];
        Exps e2 = e;
        for (const auto& [j, mult] : oidx) e2[j] += ev * mult;
        r.add_term(e2, ev == 0 ? v : Rational(v * rat_pow(c, ev)));
    }
    return r;
}

TruncSeries series_coeff_of(const TruncSeries& a, const std::string& var, int want) {
    require_ctx(a.context(), "series_coeff_of");
    std::size_t idx = static_cast<std::size_t>(a.context()->index_of(var));
    TruncSeries r(a.context());
    for (const auto& [e, v] : a.terms()) {
        if (e[idx] != want) continue;
        Exps e2 = e;
        e2[idx] = 0;
        r.add_term(e2, v);
    }
    return r;
}

}  // namespace mcm
