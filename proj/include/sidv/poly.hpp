#pragma once
// Laurent polynomials with exact rational coefficients over jet variables,
// independent coordinates and parameters.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sidv {

using Rational = mpq_class;

/// Dependent symbols living in jet space.
enum class Sym : uint8_t { U = 0, Rho = 1 };

/// Parameters and other non-jet ring variables.
enum Param : uint16_t {
    kX = 0,      // independent x
    kT = 1,      // independent t
    kLog = 2,    // L = ln|u|, D_x L = u_x/u
    kEps = 8,
    kA = 9,
    kC = 10,
    kLam = 11,
    kK = 12,     // wave number (dispersion check)
    kOmega = 13,
    kI = 14,     // imaginary unit, reduced with I^2 = -1 on request
    kDelta = 15,
};

constexpr int kMaxXOrder = 63;
constexpr uint16_t kJetBase = 64;

using VarId = uint16_t;

inline constexpr VarId jetId(Sym s, int tOrder, int xOrder) {
    return static_cast<VarId>(kJetBase + static_cast<int>(s) * 128 + tOrder * 64 + xOrder);
}
inline bool isJet(VarId v) { return v >= kJetBase; }
inline Sym jetSym(VarId v) { return static_cast<Sym>((v - kJetBase) / 128); }
inline int jetT(VarId v) { return ((v - kJetBase) % 128) / 64; }
inline int jetX(VarId v) { return (v - kJetBase) % 64; }
inline bool isParam(VarId v) { return v >= kEps && v < kJetBase; }

std::string varName(VarId v);

/// Sparse exponent vector, sorted by variable id, no zero exponents.
using Monomial = std::vector<std::pair<VarId, int>>;

int exponentOf(const Monomial& m, VarId v);
Monomial monoMul(const Monomial& a, const Monomial& b);
Monomial monoPow(const Monomial& a, int k);
Monomial monoWithout(const Monomial& a, VarId v);
Monomial monoSet(const Monomial& a, VarId v, int e);

/// Lexicographic order on exponent vectors; smaller ids are more significant.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonoLess>;

    Poly() = default;
    explicit Poly(const Rational& c);
    static Poly var(VarId v, int e = 1);
    static Poly term(const Monomial& m, const Rational& c);

    bool isZero() const { return t_.empty(); }
    bool isConstant() const;
    bool isMonomial() const { return t_.size() == 1; }
    Rational constantValue() const;
    const Terms& terms() const { return t_; }
    size_t size() const { return t_.size(); }

    void addTerm(const Monomial& m, const Rational& c);
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& c) const;
    Poly mulMono(const Monomial& m, const Rational& c) const;
    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(t_ == o.t_); }

    /// Partial derivative in v (L is treated as independent here).
    Poly diff(VarId v) const;
    bool contains(VarId v) const;
    bool containsJet() const;
    std::vector<VarId> vars() const;
    /// Decompose as sum_e C_e v^e.
    std::map<int, Poly> splitBy(VarId v) const;
    int minExp(VarId v) const;
    int maxExp(VarId v) const;

    /// Per-variable minimum exponent over all terms (monomial content).
    Monomial monomialContent() const;
    const std::pair<const Monomial, Rational>& leading() const { return *t_.rbegin(); }

    /// Replace I^2 by -1.
    Poly reduceImaginary() const;

private:
    Terms t_;
};

/// Exact division num/den of Laurent polynomials; false when den does not divide.
bool exactDivide(const Poly& num, const Poly& den, Poly& q);

}  // namespace sidv
