#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mcm/rational.hpp"

namespace mcm {

// Exponent box shared by a family of series. A series is its coefficient
// table on [mins, caps]^#vars; exponents above a cap are quotiented away by
// every operation, exponents below a min are a hard error (the Laurent floor
// is a representation bound, not an ideal).
class SeriesContext {
public:
    SeriesContext(std::vector<std::string> vars, std::vector<int> caps, std::vector<int> mins);

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<int>& caps() const { return caps_; }
    const std::vector<int>& mins() const { return mins_; }
    int index_of(const std::string& name) const;  // throws on unknown variable
    bool same(const SeriesContext& o) const;

private:
    std::vector<std::string> vars_;
    std::vector<int> caps_;
    std::vector<int> mins_;
};

using Ctx = std::shared_ptr<const SeriesContext>;

Ctx make_context(std::vector<std::string> vars, std::vector<int> caps, std::vector<int> mins = {});

using Exps = std::vector<int>;

// Truncated multivariate formal series over Rational. Immutable value
// semantics; the coefficient map is sorted lexicographically by exponent
// tuple, which fixes the canonical term order everywhere (iteration, JSON,
// comparison).
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(Ctx ctx) : ctx_(std::move(ctx)) {}

    static TruncSeries constant(const Ctx& ctx, const Rational& c);
    static TruncSeries monomial(const Ctx& ctx, const Exps& e, const Rational& c);
    static TruncSeries variable(const Ctx& ctx, const std::string& name, int power = 1);

    const Ctx& context() const { return ctx_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exps, Rational>& terms() const { return terms_; }
    Rational coeff(const Exps& e) const;
    Rational constant_term() const;

    // In-place accumulation of one term (drops above caps, throws below mins).
    void add_term(const Exps& e, const Rational& c);

    bool operator==(const TruncSeries& o) const;
    bool operator!=(const TruncSeries& o) const { return !(*this == o); }

    std::string str() const;  // debug rendering, deterministic

private:
    Ctx ctx_;
    std::map<Exps, Rational> terms_;

    friend TruncSeries operator+(const TruncSeries&, const TruncSeries&);
    friend TruncSeries operator-(const TruncSeries&, const TruncSeries&);
    friend TruncSeries operator-(const TruncSeries&);
    friend TruncSeries operator*(const TruncSeries&, const TruncSeries&);
    friend TruncSeries operator*(const TruncSeries&, const Rational&);
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const Rational& c);
inline TruncSeries operator*(const Rational& c, const TruncSeries& a) { return a * c; }

// exp(a) = sum a^n/n!; requires zero constant term (a nilpotent in the box).
TruncSeries series_exp(const TruncSeries& a);

// Multiplicative inverse; requires invertible (nonzero) constant term.
TruncSeries series_invert(const TruncSeries& a);

// Substitute var -> c*var (coefficient of var^e multiplied by c^e).
TruncSeries series_scale_var(const TruncSeries& a, const std::string& var, const Rational& c);

// Formal partial derivative.
TruncSeries series_derive(const TruncSeries& a, const std::string& var);

// Substitute var -> c and drop the variable from the context. Exact only when
// the series is complete in var over the needed range; callers arrange that.
TruncSeries series_eval_var(const TruncSeries& a, const std::string& var, const Rational& c);

// Substitute var^e -> c^e * prod_j other_j^{e*mult_j} inside the same context
// (used for arguments like Q -> (zeta1 zeta2)^{-1} x y Q).
TruncSeries series_subst_scaled_monomial(const TruncSeries& a, const std::string& var,
                                         const Rational& c,
                                         const std::vector<std::pair<std::string, int>>& others);

// Coefficient of var^e as a series in the remaining variables (context keeps
// the variable with exponent pinned to zero).
TruncSeries series_coeff_of(const TruncSeries& a, const std::string& var, int e);

}  // namespace mcm
