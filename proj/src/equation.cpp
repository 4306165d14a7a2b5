#include "sidv/equation.hpp"

namespace sidv {

EquationSpec EquationSpec::family(const Rational& eps, const Rational& a) {
    if (a == 0) throw std::invalid_argument("family requires a != 0");
    EquationSpec e;
    e.kind = EqKind::Family;
    e.eps = eps;
    e.a = a;
    return e;
}

EquationSpec EquationSpec::variantL2(const Rational& delta) {
    EquationSpec e;
    e.kind = EqKind::VariantL2;
    e.delta = delta;
    return e;
}

EquationSpec EquationSpec::variantCubic(const Rational& delta) {
    EquationSpec e;
    e.kind = EqKind::VariantCubic;
    e.delta = delta;
    return e;
}

DiffExpr familyRhs(const DiffExpr& eps, const DiffExpr& a) {
    return eps * a * U(3) - 2 * a * U(1) * U(2) / U();
}

EvolutionRule rhoRule(const DiffExpr& a) { return {Sym::Rho, rat(-2, 3) * a * Rho(3)}; }

DiffExpr EquationSpec::rhs() const {
    DiffExpr d(delta);
    switch (kind) {
        case EqKind::Family:
            return familyRhs(DiffExpr(eps), DiffExpr(a));
        case EqKind::VariantL2:
            return d * U(3) - 3 * (1 - d) * U() * U(1) - (1 + d) * U(1) * U(2) / U();
        case EqKind::VariantCubic:
            return d * U(3) - 2 * (1 - 2 * d) * U() * U(1) - (1 + d) * U(1).pow(3) / U().pow(2);
    }
    return {};
}

DiffExpr EquationSpec::logRhs() const {
    if (kind != EqKind::Family) throw std::invalid_argument("log form exists for the family only");
    DiffExpr e(eps), A(a);
    return e * A * U(3) + (3 * e - 2) * A * U(1) * U(2) + (e - 2) * A * U(1).pow(3);
}

double EquationSpec::dispersion() const {
    return kind == EqKind::Family ? Rational(eps * a).get_d() : delta.get_d();
}

std::string EquationSpec::name() const {
    switch (kind) {
        case EqKind::Family:
            return "eps=" + eps.get_str() + ",a=" + a.get_str();
        case EqKind::VariantL2:
            return "variant=l2,delta=" + delta.get_str();
        case EqKind::VariantCubic:
            return "variant=cubic,delta=" + delta.get_str();
    }
    return {};
}

}  // namespace sidv
