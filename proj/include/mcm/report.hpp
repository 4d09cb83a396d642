#pragma once

#include <map>
#include <string>
#include <vector>

namespace mcm {

// Structured outcome of one identity check. A residual row records one
// compared coefficient; `value` must be "0" for a pass. Rows whose exactness
// could not be certified at the configured truncation carry overflow = true
// and make the verdict inconclusive instead of failed.
struct Residual {
    std::string where;
    std::string value;
    bool overflow = false;
};

struct VerificationReport {
    enum class Verdict { Pass, Fail, InconclusiveOverflow };

    std::string identity;
    std::map<std::string, std::string> params;
    std::map<std::string, int> caps;
    std::vector<Residual> residuals;
    std::vector<std::string> notes;

    Verdict verdict() const {
        bool overflow = false;
        for (const auto& r : residuals) {
            if (r.overflow) {
                overflow = true;
            } else if (r.value != "0") {
                return Verdict::Fail;
            }
        }
        return overflow ? Verdict::InconclusiveOverflow : Verdict::Pass;
    }

    bool passed() const { return verdict() == Verdict::Pass; }

    static const char* verdict_name(Verdict v) {
        switch (v) {
            case Verdict::Pass: return "pass";
            case Verdict::Fail: return "fail";
            default: return "inconclusive-overflow";
        }
    }
};

}  // namespace mcm
