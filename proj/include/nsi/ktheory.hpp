#pragma once

#include <utility>
#include <vector>

#include "nsi/cohomology.hpp"
#include "nsi/fan.hpp"

namespace nsi {

struct FormalTerm {
    TorusDivisor d;
    long long mult = 0;
    bool operator==(const FormalTerm&) const = default;
};

// Signed formal sum of classes [O(D)] in the Grothendieck group.
// Normalization merges equal divisors and drops zero multiplicities;
// terms are kept sorted for value semantics.
class FormalClass {
public:
    FormalClass() = default;

    static FormalClass sheaf(TorusDivisor d);                       // [O(D)]
    static FormalClass structure_sheaf(const Fan& f);               // [O_X]
    // class of the divisor itself: [O(D)] - [O_X]
    static FormalClass divisor_sheaf(const Fan& f, const TorusDivisor& d);

    void add(const TorusDivisor& d, long long mult);
    const std::vector<FormalTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool operator==(const FormalClass&) const = default;

private:
    std::vector<FormalTerm> terms_;
};

// First Chern operator of a Cartier divisor L: each [O(D)] becomes
// [O(D)] - [O(D - L)].
FormalClass c1_apply(const Fan& f, const FormalClass& a, const TorusDivisor& L);

long long chi_formal(const Fan& f, const FormalClass& a);

struct LimitResult {
    Rat value;
    long long period_used = 1;
    std::vector<std::pair<long long, long long>> samples; // (m, chi)
    std::vector<Rat> residue_leading_coefficients;
};

// D^2 . L_1 ... L_{rank-2} as twice the leading coefficient of the
// degree-2 quasi-polynomial m -> chi(c1(L_1)...c1(L_{rank-2}) [O(mD)]),
// fitted exactly per residue class mod the Cartier index and validated on
// two held-out samples.
LimitResult self_pair_limit(const Fan& f, const TorusDivisor& d,
                            const std::vector<TorusDivisor>& Ls,
                            long long period_override = 0);

// Polarization: D1.D2 = ((D1+D2)^2 - D1^2 - D2^2) / 2.
Rat pair_limit(const Fan& f, const TorusDivisor& d1, const TorusDivisor& d2,
               const std::vector<TorusDivisor>& Ls,
               long long period_override = 0);

// ch_2 along Frobenius-style rescaling: the quasi-polynomial
// k -> chi(c1(L_1)... [O(kD)]) is fitted exactly, then checked against the
// exact values at k = p, p^2, ... until two consecutive powers agree; the
// limit chi / p^{2m} is the leading coefficient.
Rat frobenius_ch2_limit(const Fan& f, const TorusDivisor& d, long long p,
                        const std::vector<TorusDivisor>& Ls);

// Classical intersection number of `rank` Cartier divisors:
// chi(c1(L_1)...c1(L_rank) [O_X]).
Rat cartier_product(const Fan& f, const std::vector<TorusDivisor>& Ls);

} // namespace nsi
