#pragma once

#include <map>
#include <utility>

#include "fop/rational.hpp"

namespace fop {

// Sparse formal linear combination of basis objects with rational
// coefficients. Zero coefficients are never stored, so equality of
// combinations is equality of the underlying maps.
template <typename T, typename Cmp = std::less<T>>
class LinComb {
public:
    using Terms = std::map<T, Rational, Cmp>;

    LinComb() = default;
    explicit LinComb(const T& basis_elem, Rational coeff = 1) {
        add(basis_elem, std::move(coeff));
    }

    void add(const T& basis_elem, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(basis_elem, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add(const LinComb& other, const Rational& scale = 1) {
        if (scale == 0) return;
        for (const auto& [b, c] : other.terms_) add(b, c * scale);
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coeff(const T& basis_elem) const {
        auto it = terms_.find(basis_elem);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const Terms& terms() const { return terms_; }

    LinComb operator+(const LinComb& o) const {
        LinComb r = *this;
        r.add(o);
        return r;
    }
    LinComb operator-(const LinComb& o) const {
        LinComb r = *this;
        r.add(o, Rational(-1));
        return r;
    }
    LinComb operator*(const Rational& s) const {
        LinComb r;
        for (const auto& [b, c] : terms_) r.add(b, c * s);
        return r;
    }
    bool operator==(const LinComb& o) const { return terms_ == o.terms_; }
    bool operator!=(const LinComb& o) const { return !(*this == o); }

private:
    Terms terms_;
};

}  // namespace fop
