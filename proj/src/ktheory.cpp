#include "nsi/ktheory.hpp"

#include <algorithm>
#include <numeric>

namespace nsi {

FormalClass FormalClass::sheaf(TorusDivisor d) {
    FormalClass c;
    c.terms_.push_back({std::move(d), 1});
    return c;
}

FormalClass FormalClass::structure_sheaf(const Fan& f) {
    return sheaf(TorusDivisor(f.rays.size(), 0));
}

FormalClass FormalClass::divisor_sheaf(const Fan& f, const TorusDivisor& d) {
    if (d.size() != f.rays.size()) throw DimensionMismatch("divisor length");
    FormalClass c;
    c.add(d, 1);
    c.add(TorusDivisor(f.rays.size(), 0), -1);
    return c;
}

void FormalClass::add(const TorusDivisor& d, long long mult) {
    if (mult == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), d,
                               [](const FormalTerm& t, const TorusDivisor& key) {
                                   return t.d < key;
                               });
    if (it != terms_.end() && it->d == d) {
        it->mult += mult;
        if (it->mult == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {d, mult});
    }
}

FormalClass c1_apply(const Fan& f, const FormalClass& a, const TorusDivisor& L) {
    if (L.size() != f.rays.size()) throw DimensionMismatch("twist length");
    if (!is_cartier(f, L)) throw NotCartier("twist divisor is not Cartier");
    FormalClass out;
    for (const auto& t : a.terms()) {
        out.add(t.d, t.mult);
        TorusDivisor shifted(t.d.size());
        for (std::size_t i = 0; i < t.d.size(); ++i) shifted[i] = t.d[i] - L[i];
        out.add(shifted, -t.mult);
    }
    return out;
}

long long chi_formal(const Fan& f, const FormalClass& a) {
    long long total = 0;
    for (const auto& t : a.terms()) total += t.mult * chi(f, t.d);
    return total;
}

namespace {

// exact quadratic through three samples at x1 < x2 < x3
struct QuadFit {
    long long x1 = 0, x2 = 0, x3 = 0;
    Rat y1, y2, y3;

    Rat leading() const {
        return y1 / Rat(Int(x1 - x2) * Int(x1 - x3)) +
               y2 / Rat(Int(x2 - x1) * Int(x2 - x3)) +
               y3 / Rat(Int(x3 - x1) * Int(x3 - x2));
    }

    Rat eval(long long x) const {
        Rat t1 = y1 * Rat(Int(x - x2) * Int(x - x3)) / Rat(Int(x1 - x2) * Int(x1 - x3));
        Rat t2 = y2 * Rat(Int(x - x1) * Int(x - x3)) / Rat(Int(x2 - x1) * Int(x2 - x3));
        Rat t3 = y3 * Rat(Int(x - x1) * Int(x - x2)) / Rat(Int(x3 - x1) * Int(x3 - x2));
        return t1 + t2 + t3;
    }
};

TorusDivisor scale_divisor(const TorusDivisor& d, long long k) {
    TorusDivisor out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] * k;
    return out;
}

void check_twists(const Fan& f, const std::vector<TorusDivisor>& Ls,
                  std::size_t expected) {
    if (Ls.size() != expected)
        throw DimensionMismatch("need rank-2 twist divisors, got " +
                                std::to_string(Ls.size()));
    for (const auto& L : Ls) {
        if (L.size() != f.rays.size()) throw DimensionMismatch("twist length");
        if (!is_cartier(f, L)) throw NotCartier("twist divisor is not Cartier");
    }
}

long long sample_chi(const Fan& f, const TorusDivisor& d, long long k,
                     const std::vector<TorusDivisor>& Ls) {
    FormalClass cls = FormalClass::sheaf(scale_divisor(d, k));
    for (const auto& L : Ls) cls = c1_apply(f, cls, L);
    return chi_formal(f, cls);
}

// One quadratic per residue class r = 1..p of m mod p, built from the
// samples at r, r+p, r+2p; residue class of m picks fits[(m-1) % p].
struct ResidueFits {
    long long period = 1;
    std::vector<QuadFit> fits;
    std::vector<std::pair<long long, long long>> samples;

    const QuadFit& fit_for(long long m) const { return fits[(m - 1) % period]; }
};

ResidueFits fit_residues(const Fan& f, const TorusDivisor& d, long long period,
                         const std::vector<TorusDivisor>& Ls) {
    ResidueFits rf;
    rf.period = period;
    std::vector<long long> values(3 * period + 1);
    for (long long m = 1; m <= 3 * period; ++m) {
        values[m] = sample_chi(f, d, m, Ls);
        rf.samples.push_back({m, values[m]});
    }
    for (long long r = 1; r <= period; ++r) {
        QuadFit q;
        q.x1 = r;
        q.x2 = r + period;
        q.x3 = r + 2 * period;
        q.y1 = Rat(values[q.x1]);
        q.y2 = Rat(values[q.x2]);
        q.y3 = Rat(values[q.x3]);
        rf.fits.push_back(q);
    }
    return rf;
}

} // namespace

LimitResult self_pair_limit(const Fan& f, const TorusDivisor& d,
                            const std::vector<TorusDivisor>& Ls,
                            long long period_override) {
    validate_fan(f);
    if (d.size() != f.rays.size()) throw DimensionMismatch("divisor length");
    check_twists(f, Ls, static_cast<std::size_t>(f.rank - 2));
    if (period_override < 0) throw InvalidPair("period override must be positive");
    long long period = period_override > 0 ? period_override : cartier_index(f, d);

    ResidueFits rf = fit_residues(f, d, period, Ls);

    LimitResult res;
    res.period_used = period;
    for (const auto& q : rf.fits) res.residue_leading_coefficients.push_back(q.leading());
    const Rat& lead = res.residue_leading_coefficients.front();
    for (std::size_t r = 1; r < res.residue_leading_coefficients.size(); ++r)
        if (res.residue_leading_coefficients[r] != lead)
            throw QuasiPolynomialMismatch("leading coefficient differs at residue " +
                                          std::to_string(r + 1));
    for (long long m = 3 * period + 1; m <= 3 * period + 2; ++m) {
        long long exact = sample_chi(f, d, m, Ls);
        rf.samples.push_back({m, exact});
        if (rf.fit_for(m).eval(m) != Rat(exact))
            throw QuasiPolynomialMismatch("held-out sample m=" + std::to_string(m));
    }
    res.samples = std::move(rf.samples);
    res.value = Rat(2) * lead;
    return res;
}

Rat pair_limit(const Fan& f, const TorusDivisor& d1, const TorusDivisor& d2,
               const std::vector<TorusDivisor>& Ls, long long period_override) {
    if (d1.size() != d2.size()) throw DimensionMismatch("divisor lengths differ");
    TorusDivisor sum(d1.size());
    for (std::size_t i = 0; i < d1.size(); ++i) sum[i] = d1[i] + d2[i];
    Rat s12 = self_pair_limit(f, sum, Ls, period_override).value;
    Rat s1 = self_pair_limit(f, d1, Ls, period_override).value;
    Rat s2 = self_pair_limit(f, d2, Ls, period_override).value;
    return (s12 - s1 - s2) / Rat(2);
}

Rat frobenius_ch2_limit(const Fan& f, const TorusDivisor& d, long long p,
                        const std::vector<TorusDivisor>& Ls) {
    validate_fan(f);
    if (d.size() != f.rays.size()) throw DimensionMismatch("divisor length");
    check_twists(f, Ls, static_cast<std::size_t>(f.rank - 2));
    if (p < 2) throw InvalidPair("p must be at least 2");
    long long period = cartier_index(f, d);

    ResidueFits rf = fit_residues(f, d, period, Ls);
    Rat lead = rf.fits.front().leading();
    for (std::size_t r = 1; r < rf.fits.size(); ++r)
        if (rf.fits[r].leading() != lead)
            throw QuasiPolynomialMismatch("leading coefficient differs at residue " +
                                          std::to_string(r + 1));

    // walk k = p, p^2, ... until two consecutive exact values match the fit
    int consecutive = 0;
    long long k = 1;
    for (int step = 0; step < 8; ++step) {
        if (k > 2000000 / p) break;
        k *= p;
        long long exact = sample_chi(f, d, k, Ls);
        if (rf.fit_for(k).eval(k) == Rat(exact)) {
            if (++consecutive == 2) return lead;
        } else {
            consecutive = 0;
        }
    }
    throw NonStabilizing("no two consecutive Frobenius samples matched the fit");
}

Rat cartier_product(const Fan& f, const std::vector<TorusDivisor>& Ls) {
    validate_fan(f);
    check_twists(f, Ls, static_cast<std::size_t>(f.rank));
    FormalClass cls = FormalClass::structure_sheaf(f);
    for (const auto& L : Ls) cls = c1_apply(f, cls, L);
    return Rat(chi_formal(f, cls));
}

} // namespace nsi
