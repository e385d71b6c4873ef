#include "qscale/log_real.hpp"

#include <algorithm>

namespace qscale {

LogReal log_add(const LogReal& a, const LogReal& b) {
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;

    const LogReal& big = mag_less(a, b) ? b : a;
    const LogReal& small = mag_less(a, b) ? a : b;
    Real d = small.logmag() - big.logmag(); // <= 0

    if (a.sign() == b.sign())
        return LogReal::from_log(big.sign(), big.logmag() + log1p(exp(d)));

    if (d == 0)
        return LogReal::zero(); // exact cancellation

    // log(1 - e^d) via expm1: keeps accuracy both for d near 0 and d << 0.
    return LogReal::from_log(big.sign(), big.logmag() + log(-expm1(d)));
}

SumTrace log_sum(std::vector<LogReal> terms) {
    SumTrace out;
    std::vector<LogReal> pos, neg;
    pos.reserve(terms.size());
    neg.reserve(terms.size());
    for (auto& t : terms) {
        if (t.is_zero())
            continue;
        out.terms++;
        if (out.terms == 1 || out.peak_logmag < t.logmag())
            out.peak_logmag = t.logmag();
        (t.sign() > 0 ? pos : neg).push_back(std::move(t));
    }
    auto fold = [](std::vector<LogReal>& v) {
        std::sort(v.begin(), v.end(),
                  [](const LogReal& x, const LogReal& y) { return mag_less(y, x); });
        LogReal acc = LogReal::zero();
        for (const auto& t : v)
            acc = log_add(acc, t);
        return acc;
    };
    out.value = log_add(fold(pos), fold(neg));
    return out;
}

Real rel_diff(const LogReal& a, const LogReal& b) {
    if (b.is_zero())
        throw domain_error("rel_diff: reference value is zero");
    LogReal d = a - b;
    if (d.is_zero())
        return Real(0);
    return exp(d.logmag() - b.logmag());
}

} // namespace qscale
