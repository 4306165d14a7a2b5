#pragma once
// Exact rational expressions in jet space and the total-derivative calculus.

#include "sidv/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sidv {

struct SymbolicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingRule : SymbolicError {
    using SymbolicError::SymbolicError;
};
struct SecondTimeDerivative : SymbolicError {
    using SymbolicError::SymbolicError;
};
struct NotExact : SymbolicError {
    using SymbolicError::SymbolicError;
};
struct ParseError : SymbolicError {
    using SymbolicError::SymbolicError;
};

/// numerator / denominator, both Laurent polynomials.  The denominator is
/// kept free of monomial factors and has leading coefficient 1.
class DiffExpr {
public:
    DiffExpr() : den_(Rational(1)) {}
    DiffExpr(long v) : num_(Rational(v)), den_(Rational(1)) {}  // NOLINT
    DiffExpr(const Rational& v) : num_(v), den_(Rational(1)) {}  // NOLINT
    explicit DiffExpr(Poly n) : num_(std::move(n)), den_(Rational(1)) {}
    DiffExpr(Poly n, Poly d);

    static DiffExpr var(VarId v, int e = 1) { return DiffExpr(Poly::var(v, e)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isPolyDen() const { return den_.isConstant(); }
    bool denHasJet() const { return den_.containsJet(); }
    bool contains(VarId v) const { return num_.contains(v) || den_.contains(v); }
    std::vector<VarId> vars() const;

    DiffExpr operator+(const DiffExpr& o) const;
    DiffExpr operator-(const DiffExpr& o) const;
    DiffExpr operator-() const;
    DiffExpr operator*(const DiffExpr& o) const;
    DiffExpr operator/(const DiffExpr& o) const;
    DiffExpr& operator+=(const DiffExpr& o) { return *this = *this + o; }
    DiffExpr& operator-=(const DiffExpr& o) { return *this = *this - o; }
    DiffExpr& operator*=(const DiffExpr& o) { return *this = *this * o; }
    DiffExpr pow(int k) const;

    /// Canonical equality by cross-multiplication.
    bool equals(const DiffExpr& o) const;
    bool operator==(const DiffExpr& o) const { return equals(o); }
    bool operator!=(const DiffExpr& o) const { return !equals(o); }

    DiffExpr diff(VarId v) const;  ///< partial derivative, L independent
    DiffExpr substitute(VarId v, const DiffExpr& value) const;
    DiffExpr reduceImaginary() const;

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

DiffExpr operator*(long c, const DiffExpr& e);
inline DiffExpr operator+(long c, const DiffExpr& e) { return DiffExpr(c) + e; }
inline DiffExpr operator-(long c, const DiffExpr& e) { return DiffExpr(c) - e; }
inline DiffExpr operator/(long c, const DiffExpr& e) { return DiffExpr(c) / e; }
DiffExpr rat(long p, long q = 1);

// convenience constructors
DiffExpr jet(Sym s, int tOrder, int xOrder);
inline DiffExpr U(int xOrder = 0) { return jet(Sym::U, 0, xOrder); }
inline DiffExpr Ut(int xOrder = 0) { return jet(Sym::U, 1, xOrder); }
inline DiffExpr Rho(int xOrder = 0) { return jet(Sym::Rho, 0, xOrder); }
inline DiffExpr Rhot(int xOrder = 0) { return jet(Sym::Rho, 1, xOrder); }
DiffExpr X();
DiffExpr T();
DiffExpr Log();
DiffExpr P(Param p);

/// subject_t = rhs, rhs in tOrder 0 variables of the subject.
struct EvolutionRule {
    Sym subject;
    DiffExpr rhs;
};
using RuleSet = std::vector<EvolutionRule>;

DiffExpr parse(const std::string& text);
inline std::string print(const DiffExpr& e) { return e.str(); }

DiffExpr totalDx(const DiffExpr& e);
DiffExpr totalDxN(const DiffExpr& e, int n);
/// formal=true keeps t-derivatives of rule-less symbols symbolic.
DiffExpr totalDt(const DiffExpr& e, const RuleSet& rules, bool formal = false);
/// Eliminate every tOrder=1 variable via the rules.
DiffExpr reduceByRules(const DiffExpr& e, const RuleSet& rules);
DiffExpr eulerOperator(const DiffExpr& e, Sym s = Sym::U);
DiffExpr frechet(const DiffExpr& K, const DiffExpr& Q);
/// Throws NotExact.
DiffExpr integrateX(const DiffExpr& e);
std::optional<DiffExpr> tryIntegrateX(const DiffExpr& e);

}  // namespace sidv
