#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace kh {

// Integer Laurent polynomial in q. Zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(int exponent, std::int64_t coeff = 1) {
        LaurentPoly p;
        p.add(exponent, coeff);
        return p;
    }

    // q + q^{-1}
    static LaurentPoly loop_value() {
        LaurentPoly p;
        p.add(1, 1);
        p.add(-1, 1);
        return p;
    }

    void add(int exponent, std::int64_t coeff) {
        if (coeff == 0) return;
        auto it = coeffs_.find(exponent);
        if (it == coeffs_.end()) {
            coeffs_.emplace(exponent, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto [e, c] : o.coeffs_) add(e, c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto [ea, ca] : a.coeffs_)
            for (auto [eb, cb] : b.coeffs_)
                r.add(ea + eb, ca * cb);
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly pow(unsigned n) const {
        LaurentPoly r = monomial(0);
        for (unsigned i = 0; i < n; ++i) r *= *this;
        return r;
    }

    std::int64_t coeff(int exponent) const {
        auto it = coeffs_.find(exponent);
        return it == coeffs_.end() ? 0 : it->second;
    }

    bool is_zero() const { return coeffs_.empty(); }

    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    const std::map<int, std::int64_t>& terms() const { return coeffs_; }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (auto [e, c] : coeffs_) {
            if (!s.empty() || c < 0) s += (c < 0 ? " - " : " + ");
            std::int64_t a = c < 0 ? -c : c;
            if (a != 1 || e == 0) s += std::to_string(a);
            if (e != 0) {
                if (a != 1) s += "*";
                s += "q";
                if (e != 1) s += "^" + std::to_string(e);
            }
        }
        return s;
    }

private:
    std::map<int, std::int64_t> coeffs_;
};

} // namespace kh
