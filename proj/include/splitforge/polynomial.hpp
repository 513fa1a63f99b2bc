#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "splitforge/real.hpp"

namespace splitforge {

// Polynomial in three variables, evaluable on any ring-like scalar.
class Polynomial3 {
public:
    struct Term {
        Real coeff;
        std::array<int, 3> exps;
    };

    Polynomial3() = default;
    explicit Polynomial3(std::vector<Term> terms);  // merges duplicates, drops zeros

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int max_degree() const;
    Polynomial3 partial(int var) const;
    // Coefficient of the monomial with exactly these exponents.
    Real coefficient(const std::array<int, 3>& exps) const;

    template <class S>
    S eval(const S& x, const S& y, const S& z) const {
        S acc = S(0);
        if (terms_.empty()) return acc;
        const int m = max_degree();
        std::array<std::vector<S>, 3> pw;
        const std::array<const S*, 3> base{&x, &y, &z};
        for (int v = 0; v < 3; ++v) {
            int need = 0;
            for (const auto& t : terms_) need = std::max(need, t.exps[v]);
            pw[v].reserve(static_cast<std::size_t>(need) + 1);
            pw[v].push_back(S(1));
            for (int k = 1; k <= need && k <= m; ++k) pw[v].push_back(k == 1 ? *base[v] : pw[v].back() * *base[v]);
        }
        for (const auto& t : terms_) {
            S mono = S(t.coeff);
            for (int v = 0; v < 3; ++v)
                if (t.exps[v] > 0) mono = mono * pw[v][static_cast<std::size_t>(t.exps[v])];
            acc = acc + mono;
        }
        return acc;
    }

private:
    std::vector<Term> terms_;
};

// Polynomial in the formal variables (X, Y, Z, D, S).
class Polynomial5 {
public:
    struct Monomial {
        Real coeff;
        std::array<int, 5> exps;
    };

    Polynomial5() = default;
    explicit Polynomial5(std::vector<Monomial> monomials);

    const std::vector<Monomial>& monomials() const { return monomials_; }
    bool empty() const { return monomials_.empty(); }
    int min_degree() const;  // 0 for the zero polynomial
    bool has_duplicates() const;

    // delta^-2 * p(delta x, delta y, delta z, delta, delta sigma) as a polynomial in (x, y, z).
    Polynomial3 rescaled(const Real& delta, const Real& sigma) const;
    // p(X, Y, Z, 0, 0)
    Polynomial3 at_zero_parameters() const;

    Real eval(const Real& X, const Real& Y, const Real& Z, const Real& D, const Real& S) const;

private:
    std::vector<Monomial> monomials_;
};

}  // namespace splitforge
