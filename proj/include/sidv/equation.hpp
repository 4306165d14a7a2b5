#pragma once
// Members of the evolution family and the two sech2-sharing variants.

#include "sidv/diffexpr.hpp"

#include <string>

namespace sidv {

enum class EqKind { Family, VariantL2, VariantCubic };

/// u_t + 2a u_x u_xx/u = eps a u_xxx, or one of
///   VariantL2:    u_t + 3(1-d) u u_x + (1+d) u_x u_xx/u   = d u_xxx
///   VariantCubic: u_t + 2(1-2d) u u_x + (1+d) u_x^3/u^2   = d u_xxx
struct EquationSpec {
    EqKind kind = EqKind::Family;
    Rational eps = 1, a = 1, delta = 0;

    static EquationSpec family(const Rational& eps, const Rational& a);
    static EquationSpec variantL2(const Rational& delta);
    static EquationSpec variantCubic(const Rational& delta);

    /// u_t = rhs()
    DiffExpr rhs() const;
    RuleSet rules() const { return {{Sym::U, rhs()}}; }
    /// w_t for w = ln u (family only), written with u-jets standing for w.
    DiffExpr logRhs() const;
    /// coefficient of u_xxx in rhs()
    double dispersion() const;
    std::string name() const;
};

/// Right-hand side of the family with symbolic or numeric eps, a.
DiffExpr familyRhs(const DiffExpr& eps, const DiffExpr& a);
/// rho_t = -(2/3) a rho_xxx
EvolutionRule rhoRule(const DiffExpr& a);

}  // namespace sidv
