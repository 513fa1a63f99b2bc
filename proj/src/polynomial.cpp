#include "splitforge/polynomial.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace splitforge {

Polynomial3::Polynomial3(std::vector<Term> terms) {
    std::map<std::array<int, 3>, Real> merged;
    for (auto& t : terms) {
        auto it = merged.find(t.exps);
        if (it == merged.end()) merged.emplace(t.exps, t.coeff);
        else it->second += t.coeff;
    }
    for (auto& [e, c] : merged)
        if (!c.is_zero()) terms_.push_back({c, e});
}

int Polynomial3::max_degree() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.exps[0] + t.exps[1] + t.exps[2]);
    return m;
}

Polynomial3 Polynomial3::partial(int var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.exps[var] == 0) continue;
        Term d{t.coeff * Real(t.exps[var]), t.exps};
        d.exps[var] -= 1;
        out.push_back(d);
    }
    return Polynomial3(std::move(out));
}

Real Polynomial3::coefficient(const std::array<int, 3>& exps) const {
    for (const auto& t : terms_)
        if (t.exps == exps) return t.coeff;
    return Real(0);
}

Polynomial5::Polynomial5(std::vector<Monomial> monomials) : monomials_(std::move(monomials)) {}

int Polynomial5::min_degree() const {
    if (monomials_.empty()) return 0;
    int m = 1 << 30;
    for (const auto& t : monomials_) {
        int d = 0;
        for (int e : t.exps) d += e;
        m = std::min(m, d);
    }
    return m;
}

bool Polynomial5::has_duplicates() const {
    std::set<std::array<int, 5>> seen;
    for (const auto& t : monomials_)
        if (!seen.insert(t.exps).second) return true;
    return false;
}

Polynomial3 Polynomial5::rescaled(const Real& delta, const Real& sigma) const {
    std::vector<Polynomial3::Term> out;
    for (const auto& t : monomials_) {
        const auto& e = t.exps;
        const int deg = e[0] + e[1] + e[2] + e[3] + e[4];
        Real c = t.coeff * pow(delta, static_cast<long>(deg - 2));
        if (e[4] > 0) c *= pow(sigma, static_cast<long>(e[4]));
        out.push_back({c, {e[0], e[1], e[2]}});
    }
    return Polynomial3(std::move(out));
}

Polynomial3 Polynomial5::at_zero_parameters() const {
    std::vector<Polynomial3::Term> out;
    for (const auto& t : monomials_)
        if (t.exps[3] == 0 && t.exps[4] == 0) out.push_back({t.coeff, {t.exps[0], t.exps[1], t.exps[2]}});
    return Polynomial3(std::move(out));
}

Real Polynomial5::eval(const Real& X, const Real& Y, const Real& Z, const Real& D, const Real& S) const {
    const std::array<const Real*, 5> v{&X, &Y, &Z, &D, &S};
    Real acc(0);
    for (const auto& t : monomials_) {
        Real m = t.coeff;
        for (int k = 0; k < 5; ++k)
            if (t.exps[k] > 0) m *= pow(*v[k], static_cast<long>(t.exps[k]));
        acc += m;
    }
    return acc;
}

}  // namespace splitforge
