#include "sidv/operators.hpp"

#include <functional>
#include <stdexcept>

namespace sidv {

PseudoDiffOp PseudoDiffOp::identity() { return {{{DiffExpr(1), 0}}, std::nullopt}; }

DiffExpr applyOp(const PseudoDiffOp& R, const DiffExpr& Q) {
    DiffExpr r;
    for (auto& t : R.terms) {
        if (t.power < 0) throw std::invalid_argument("negative power outside the nonlocal slot");
        r += t.coeff * totalDxN(Q, t.power);
    }
    if (R.nonlocal) r += R.nonlocal->leftMul * integrateX(R.nonlocal->integrand * Q);
    return r;
}

DiffExpr applyOpN(const PseudoDiffOp& R, const DiffExpr& Q, int n) {
    DiffExpr r = Q;
    for (int i = 0; i < n; ++i) r = applyOp(R, r);
    return r;
}

PseudoDiffOp recursionMinus() {
    return {{{DiffExpr(1), 2}, {2 * U(1) / U(), 1}, {U(2) / U(), 0}}, std::nullopt};
}

namespace {

PseudoDiffOp plusBase(const DiffExpr& extra, const DiffExpr& nonlocalScale) {
    DiffExpr integrand = U(2) / U().pow(2) - U(1).pow(2) / U().pow(3);
    return {{{DiffExpr(1), 2}, {-2 * U(1) / U(), 1}, {-U(2) / U() + extra, 0}},
            PseudoDiffOp::Nonlocal{nonlocalScale * U(1), integrand}};
}

}  // namespace

PseudoDiffOp recursionPlusPrinted() { return plusBase(U(1) / U().pow(2), 1); }
PseudoDiffOp recursionPlusSuggested() { return plusBase(U(1).pow(2) / U().pow(2), 1); }
PseudoDiffOp recursionPlusDerived() { return plusBase(-2 * U(1).pow(2) / U().pow(2), 4); }

DiffExpr checkSymmetry(const DiffExpr& K, const DiffExpr& Q) {
    RuleSet rules{{Sym::U, K}};
    DiffExpr q = reduceByRules(Q, rules);
    return totalDt(q, rules) - frechet(K, q);
}

DiffExpr checkSymmetry(const EquationSpec& eq, const DiffExpr& Q) { return checkSymmetry(eq.rhs(), Q); }

DiffExpr checkConservation(const ConservedVector& v) {
    return reduceByRules(totalDt(v.density, v.rules) + totalDx(v.flux), v.rules);
}

DiffExpr logDensityCheck(const ConservedVector& v) { return checkConservation(v); }

DiffExpr hierarchyDensity(int n) {
    if (n < 0) throw std::invalid_argument("hierarchyDensity: n < 0");
    DiffExpr q = 3 * T() * Ut() + X() * U(1);
    return U().pow(3) * applyOpN(recursionMinus(), q, n);
}

// ------------------------------------------------------------ zero curvature

namespace {

DiffExpr wPot() { return U(2) / U(); }

}  // namespace

ZeroCurvaturePair laxPairFromOperators() {
    DiffExpr w = wPot(), lam = P(kLam);
    // B = 4D^3 - 6wD - 3w_x acting on phi with phi_xx = (w - lam) phi
    std::vector<DiffExpr> bcoef = {-3 * totalDx(w), -6 * w, DiffExpr(0), DiffExpr(4)};
    DiffExpr alpha = 1, beta = 0, v11, v12;
    for (size_t k = 0; k < bcoef.size(); ++k) {
        v11 += bcoef[k] * alpha;
        v12 += bcoef[k] * beta;
        DiffExpr na = totalDx(alpha) + beta * (w - lam);
        DiffExpr nb = alpha + totalDx(beta);
        alpha = na;
        beta = nb;
    }
    ZeroCurvaturePair p;
    p.U = {{{DiffExpr(0), DiffExpr(1)}, {w - lam, DiffExpr(0)}}};
    p.V = {{{v11, v12}, {totalDx(v11) + v12 * (w - lam), v11 + totalDx(v12)}}};
    return p;
}

ZeroCurvaturePair laxPairPrinted() {
    DiffExpr w = wPot(), lam = P(kLam);
    DiffExpr d = U(3) / U() - U(1) * U(2) / U().pow(2);
    ZeroCurvaturePair p;
    p.U = {{{DiffExpr(0), DiffExpr(1)}, {w - lam, DiffExpr(0)}}};
    p.V = {{{d, 2 * w - 4 * lam},
            {totalDxN(w, 2) + 6 * (lam - w) * w + 4 * (lam - w).pow(2), -d}}};
    return p;
}

Mat2 zeroCurvatureResidual(const ZeroCurvaturePair& p) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            DiffExpr comm;
            for (int k = 0; k < 2; ++k) comm += p.U[i][k] * p.V[k][j] - p.V[i][k] * p.U[k][j];
            r[i][j] = totalDt(p.U[i][j], {}, true) - totalDx(p.V[i][j]) + comm;
        }
    return r;
}

DiffExpr miuraFactorization() {
    DiffExpr E = Ut() + 3 * U(1) * U(2) / U() - U(3);
    return totalDxN(E, 2) / U() - U(2) / U().pow(2) * E;
}

// ------------------------------------------------------------ Mikhailov

namespace {

struct MikhailovInputs {
    RuleSet rules;
    DiffExpr F0, F1, F2;
};

std::optional<MikhailovInputs> mikhailovInputs(const DiffExpr& K, std::string& note) {
    DiffExpr F = K - U(3);
    for (VarId v : F.vars())
        if (isJet(v) && (jetX(v) >= 3 || jetT(v) > 0 || jetSym(v) != Sym::U)) {
            note = "equation is not of the form u_t = u_xxx + F(x,u,u_x,u_xx)";
            return std::nullopt;
        }
    return MikhailovInputs{{{Sym::U, K}}, F.diff(jetId(Sym::U, 0, 0)), F.diff(jetId(Sym::U, 0, 1)),
                           F.diff(jetId(Sym::U, 0, 2))};
}

DiffExpr cond3Argument(const MikhailovInputs& in, const DiffExpr& sigma1) {
    return 9 * sigma1 + 2 * in.F2.pow(3) - 9 * in.F2 * in.F1 + 27 * in.F0;
}

}  // namespace

MikhailovResult mikhailovTest(const EquationSpec& eq) { return mikhailovTest(eq.rhs()); }

MikhailovResult mikhailovTest(const DiffExpr& K) {
    MikhailovResult res;
    auto in = mikhailovInputs(K, res.note);
    if (!in) {
        res.applicable = false;
        return res;
    }
    auto Dt = [&](const DiffExpr& e) { return totalDt(e, in->rules); };
    res.lhs[0] = Dt(in->F2);
    res.lhs[1] = Dt(3 * in->F1 - in->F2.pow(2));
    res.sigma[0] = tryIntegrateX(res.lhs[0]);
    res.sigma[1] = tryIntegrateX(res.lhs[1]);
    res.exact[0] = res.sigma[0].has_value();
    res.exact[1] = res.sigma[1].has_value();
    if (res.exact[0]) {
        res.lhs[2] = Dt(cond3Argument(*in, *res.sigma[0]));
        res.sigma[2] = tryIntegrateX(res.lhs[2]);
        res.exact[2] = res.sigma[2].has_value();
    }
    if (res.exact[1]) {
        res.lhs[3] = Dt(*res.sigma[1]);
        res.sigma[3] = tryIntegrateX(res.lhs[3]);
        res.exact[3] = res.sigma[3].has_value();
    }
    res.pass = res.exact[0] && res.exact[1] && res.exact[2] && res.exact[3];
    return res;
}

MikhailovResult mikhailovWithLogSigmas(const EquationSpec& eq) {
    MikhailovResult res;
    auto in = mikhailovInputs(eq.rhs(), res.note);
    if (!in) {
        res.applicable = false;
        return res;
    }
    auto Dt = [&](const DiffExpr& e) { return totalDt(e, in->rules); };
    DiffExpr L = Log();
    std::array<DiffExpr, 4> s = {Dt(3 * L), Dt(totalDx(9 * L)), Dt(totalDxN(27 * L, 2)), Dt(Dt(9 * L))};
    res.lhs[0] = Dt(in->F2);
    res.lhs[1] = Dt(3 * in->F1 - in->F2.pow(2));
    res.lhs[2] = Dt(cond3Argument(*in, s[0]));
    res.lhs[3] = Dt(s[1]);
    for (int i = 0; i < 4; ++i) {
        res.sigma[i] = s[i];
        res.exact[i] = (totalDx(s[i]) - res.lhs[i]).isZero();
    }
    res.pass = res.exact[0] && res.exact[1] && res.exact[2] && res.exact[3];
    return res;
}

// ------------------------------------------------------------ dispersion

DispersionResult dispersionCheck(const DiffExpr& eps, const DiffExpr& a) {
    DiffExpr pde = Ut() - familyRhs(eps, a);
    DiffExpr ik = P(kI) * P(kK), miw = -P(kI) * P(kOmega);
    for (VarId v : pde.vars()) {
        if (!isJet(v) || jetSym(v) != Sym::U || (jetT(v) == 0 && jetX(v) == 0)) continue;
        DiffExpr f = ik.pow(jetX(v)) * (jetT(v) ? miw : DiffExpr(1));
        pde = pde.substitute(v, f * U());
    }
    pde = pde.reduceImaginary();
    if (!pde.isPolyDen()) throw SymbolicError("dispersion: unexpected denominator");
    auto parts = pde.num().splitBy(kOmega);
    for (auto& kv : parts)
        if (kv.first != 0 && kv.first != 1) throw SymbolicError("dispersion: nonlinear in omega");
    DiffExpr alpha(parts[1]), beta(parts[0]);
    DispersionResult r;
    r.omega = (-beta / alpha).reduceImaginary();
    r.matchesLaw = (r.omega - (eps - 2) * a * P(kK).pow(3)).isZero();
    r.oddInK = (r.omega.substitute(kK, -P(kK)) + r.omega).isZero();
    return r;
}

// ------------------------------------------------------------ reference data

std::string hierarchyReferenceDensity(int n) {
    switch (n) {
        case 1:
            return "2*u^3*u_xx + 3*t*u^3*u_txx + x*u^3*u_3x + 2*u^2*u_x^2 + 6*t*u^2*u_x*u_tx"
                   " + 3*t*u^2*u_t*u_xx + 3*x*u^2*u_x*u_xx";
        case 2:
            return "4*u^3*u_4x + 3*t*u^3*u_t4x + x*u^3*u_5x + 12*u^2*u_xx^2 + 18*t*u^2*u_xx*u_txx"
                   " + 16*u^2*u_x*u_3x + 12*t*u^2*u_tx*u_3x + 10*x*u^2*u_xx*u_3x + 12*t*u^2*u_x*u_t3x"
                   " + 3*t*u^2*u_t*u_t4x + 5*x*u^2*u_x*u_4x";
        case 3:
            return "6*u^3*u_6x + 3*t*u^3*u_t6x + x*u^3*u_7x + 60*u^2*u_3x^2 + 60*t*u^2*u_3x*u_t3x"
                   " + 90*u^2*u_xx*u_4x + 45*t*u^2*u_txx*u_4x + 35*x*u^2*u_3x*u_4x + 45*t*u^2*u_xx*u_t4x"
                   " + 36*u^2*u_x*u_5x + 18*t*u^2*u_tx*u_5x + 21*x*u^2*u_xx*u_5x + 18*t*u^2*u_x*u_t5x"
                   " + 3*t*u^2*u_t*u_6x + 7*x*u^2*u_x*u_6x";
        case 4:
            return "8*u^3*u_8x + 3*t*u^3*u_t8x + x*u^3*u_9x + 280*u^2*u_4x^2 + 210*t*u^2*u_4x*u_t4x"
                   " + 448*u^2*u_3x*u_5x + 168*t*u^2*u_t3x*u_5x + 126*x*u^2*u_4x*u_5x"
                   " + 168*t*u^2*u_3x*u_t5x + 224*u^2*u_2x*u_6x + 84*t*u^2*u_txx*u_6x"
                   " + 84*x*u^2*u_3x*u_6x + 84*t*u^2*u_xx*u_t6x + 64*u^2*u_x*u_7x + 24*t*u^2*u_tx*u_7x"
                   " + 36*x*u^2*u_xx*u_7x + 24*t*u^2*u_x*u_t7x + 3*t*u^2*u_t*u_8x + 9*x*u^2*u_x*u_8x";
    }
    throw std::out_of_range("reference density available for n = 1..4");
}

std::string hierarchyReferenceEuler(int n) {
    switch (n) {
        case 1: return "-4*u*(u_x^2 + u*u_xx)";
        case 2: return "0";
        case 3: return "4*u*(10*u_3x^2 + 15*u_xx*u_4x + 6*u_x*u_5x + u*u_6x)";
        case 4: return "8*u*(35*u_4x^2 + 56*u_3x*u_5x + 28*u_xx*u_6x) + 8*u*(8*u_x*u_7x + u*u_8x)";
    }
    throw std::out_of_range("reference Euler column available for n = 1..4");
}

// ------------------------------------------------------------ suites

namespace {

CheckRecord zeroCheck(const std::string& id, const DiffExpr& residual, const std::string& note = {}) {
    return {id, residual.isZero() ? "pass" : "fail", print(residual), note};
}

/// Printed candidate first; the first verifying correction marks it typo-suspect.
CheckRecord candidateCheck(const std::string& id, const std::function<DiffExpr(const DiffExpr&)>& residualOf,
                           const DiffExpr& printed,
                           const std::vector<std::pair<std::string, DiffExpr>>& corrections) {
    DiffExpr r = residualOf(printed);
    if (r.isZero()) return {id, "pass", "0", ""};
    for (auto& [label, c] : corrections) {
        DiffExpr rc = residualOf(c);
        if (rc.isZero())
            return {id, "typo-suspect", print(r), "printed form fails; verified correction: " + label};
    }
    return {id, "fail", print(r), "no listed correction verifies"};
}

/// density u^((e-2)/e), flux (2-e) a u^(-2/e) u_xx, integer exponents only
std::optional<ConservedVector> powerRow(const Rational& e) {
    Rational p = (e - 2) / e, q = Rational(-2) / e;
    if (p.get_den() != 1 || q.get_den() != 1) return std::nullopt;
    int pi = static_cast<int>(p.get_num().get_si()), qi = static_cast<int>(q.get_num().get_si());
    DiffExpr a = P(kA);
    return ConservedVector{U().pow(pi), (2 - DiffExpr(e)) * a * U().pow(qi) * U(2),
                           {{Sym::U, familyRhs(DiffExpr(e), a)}}};
}

}  // namespace

std::vector<CheckRecord> suiteConservation() {
    std::vector<CheckRecord> out;
    DiffExpr eps = P(kEps), a = P(kA);
    auto famRules = [&](const DiffExpr& e) { return RuleSet{{Sym::U, familyRhs(e, a)}}; };

    out.push_back(zeroCheck("conservation.row1.symbolic-eps",
                            checkConservation({U().pow(2), (2 + eps) * a * U(1).pow(2) - 2 * eps * a * U() * U(2),
                                               famRules(eps)})));
    for (Rational e : {Rational(-2), Rational(-2, 3), Rational(2, 5)}) {
        auto row = powerRow(e);
        out.push_back(zeroCheck("conservation.row2.eps=" + e.get_str(), checkConservation(*row)));
    }
    DiffExpr L = Log();
    RuleSet m2 = famRules(-2);
    out.push_back(zeroCheck("conservation.row3.eps=-2.v3",
                            logDensityCheck({2 * U().pow(2) * L - U().pow(2),
                                             8 * a * U() * L * U(2) - 4 * a * U(1).pow(2), m2})));
    out.push_back(zeroCheck("conservation.row4.eps=-2.v4",
                            logDensityCheck({U().pow(2) * L,
                                             -2 * a * U(1).pow(2) + 2 * a * U() * U(2) + 4 * a * U() * L * U(2),
                                             m2})));
    out.push_back(zeroCheck("conservation.row5.eps=2.v3", logDensityCheck({L, -2 * a * U(2) / U(), famRules(2)})));
    {
        DiffExpr r = logDensityCheck({L, -2 * a * U(2) / U(), famRules(1)});
        out.push_back({"conservation.negative-control.log-density.eps=1", r.isZero() ? "fail" : "pass", print(r),
                       "residual must be nonzero"});
    }

    RuleSet rr = {{Sym::U, familyRhs(rat(-2, 3), a)}, rhoRule(a)};
    auto rhoResidual = [&](const DiffExpr& density) {
        return [density, rr](const DiffExpr& flux) { return checkConservation({density, flux, rr}); };
    };
    {
        DiffExpr dens = Rho(1) * U().pow(2);
        DiffExpr printed = parse("-rho_t*u^2 + 4/3*rho_x*u_x^2 - 4/3*a*rho_xx*u*u_x + 4/3*a*rho_x*u*u_xx");
        DiffExpr fixedA = parse("-rho_t*u^2 + 4/3*a*rho_x*u_x^2 - 4/3*a*rho_xx*u*u_x + 4/3*a*rho_x*u*u_xx");
        out.push_back(candidateCheck("conservation.rho.v1", rhoResidual(dens), printed,
                                     {{"4/3*a*rho_x*u_x^2 (factor a restored)", fixedA}}));
    }
    {
        DiffExpr dens = Rho(3) * U().pow(2);
        DiffExpr literal = parse("-4*rho_t*u_x^2 - 2*rho_t*u*u_xx + 2*rho_tx*u*u_x - rho_t2x*u^2");
        DiffExpr fixed = parse("-2*rho_t*u_x^2 - 2*rho_t*u*u_xx + 2*rho_tx*u*u_x - rho_t2x*u^2");
        out.push_back(candidateCheck("conservation.rho.v2", rhoResidual(dens), literal,
                                     {{"-2*rho_t*u_x^2 for the garbled u_x^2 term", fixed}}));
    }
    {
        DiffExpr dens = Rho() * U().pow(2);
        DiffExpr printed = parse("-4/3*a*rho_x*u*u_x + 4/3*a*rho*u_x^2 + 2/3*a*rho_xx*u^2 + 4/3*a*rho*u*u_xx");
        out.push_back(candidateCheck("conservation.rho.v4", rhoResidual(dens), printed, {}));
    }
    return out;
}

std::vector<CheckRecord> suiteHierarchy(int nMin, int nMax) {
    std::vector<CheckRecord> out;
    for (int n = nMin; n <= nMax; ++n) {
        DiffExpr c = hierarchyDensity(n);
        std::string id = "hierarchy.n" + std::to_string(n);
        if (n >= 1 && n <= 4) {
            DiffExpr printed = parse(hierarchyReferenceDensity(n));
            DiffExpr diff = c - printed;
            if (diff.isZero()) {
                out.push_back({id + ".density", "pass", "0", ""});
            } else {
                // the construction is linear in u_t, so a u_t * u_{t,kx} product cannot occur
                std::string fixedText = hierarchyReferenceDensity(n);
                bool fixedOk = false;
                if (n == 2) {
                    auto pos = fixedText.find("3*t*u^2*u_t*u_t4x");
                    if (pos != std::string::npos) {
                        fixedText.replace(pos, 17, "3*t*u^2*u_t*u_4x");
                        fixedOk = (c - parse(fixedText)).isZero();
                    }
                }
                if (fixedOk)
                    out.push_back({id + ".density", "typo-suspect", print(diff),
                                   "printed 3*t*u^2*u_t*u_t4x; computed density has 3*t*u^2*u_t*u_4x"});
                else
                    out.push_back({id + ".density", "fail", print(diff), ""});
            }
            DiffExpr e = eulerOperator(c);
            DiffExpr ediff = e - parse(hierarchyReferenceEuler(n));
            out.push_back({id + ".euler", ediff.isZero() ? "pass" : "fail", print(e), "variational derivative"});
        } else {
            out.push_back({id + ".euler", "pass", print(eulerOperator(c)), "no reference; value reported"});
        }
    }
    return out;
}

std::vector<CheckRecord> suiteLax() {
    std::vector<CheckRecord> out;
    ZeroCurvaturePair derived = laxPairFromOperators();
    ZeroCurvaturePair printed = laxPairPrinted();
    Mat2 r = zeroCurvatureResidual(derived);
    out.push_back(zeroCheck("lax.entry11", r[0][0]));
    out.push_back(zeroCheck("lax.entry12", r[0][1]));
    out.push_back(zeroCheck("lax.entry22", r[1][1]));
    out.push_back(zeroCheck("lax.entry21.factorization", r[1][0] - miuraFactorization()));
    DiffExpr w = U(2) / U();
    DiffExpr kdv = totalDt(w, {}, true) - totalDxN(w, 3) + 6 * w * totalDx(w);
    out.push_back(zeroCheck("lax.entry21.kdv-form", r[1][0] - kdv));
    RuleSet plus = {{Sym::U, U(3) - 3 * U(1) * U(2) / U()}};
    out.push_back(zeroCheck("lax.entry21.on-solutions", reduceByRules(r[1][0], plus)));

    const char* names[2][2] = {{"V11", "V12"}, {"V21", "V22"}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            DiffExpr d = printed.V[i][j] - derived.V[i][j];
            if (d.isZero()) {
                out.push_back({std::string("lax.printed.") + names[i][j], "pass", "0", "matches V reduced from B"});
            } else {
                Mat2 rp = zeroCurvatureResidual(printed);
                out.push_back({std::string("lax.printed.") + names[i][j], "typo-suspect", print(d),
                               "printed entry differs from V reduced from B by the residual shown; with the "
                               "printed V the (1,1) residual is " + print(rp[0][0]) + " and (1,2) is " +
                                   print(rp[0][1]) + "; the B-derived entry is " + print(derived.V[i][j])});
            }
        }
    ZeroCurvaturePair bad = derived;
    bad.V[0][1] += 1;
    DiffExpr nr = zeroCurvatureResidual(bad)[0][0];
    out.push_back({"lax.negative-control", nr.isZero() ? "fail" : "pass", print(nr), "perturbed V12 must not close"});
    return out;
}

std::vector<CheckRecord> suiteRecursion() {
    std::vector<CheckRecord> out;
    EquationSpec minus = EquationSpec::family(Rational(-2, 3), Rational(-3, 2));
    EquationSpec plus = EquationSpec::family(Rational(2, 3), Rational(3, 2));
    DiffExpr K = minus.rhs();
    out.push_back(zeroCheck("recursion.minus.u_x", applyOp(recursionMinus(), U(1)) - parse("u_3x + 3*u_x*u_xx/u")));
    DiffExpr q = U(1);
    for (int k = 0; k <= 3; ++k) {
        out.push_back(zeroCheck("recursion.minus.flow" + std::to_string(2 * k + 1), checkSymmetry(minus, q),
                                "R^" + std::to_string(k) + " u_x"));
        q = applyOp(recursionMinus(), q);
    }
    DiffExpr famK = familyRhs(P(kEps), P(kA));
    out.push_back(zeroCheck("symmetry.v1.u_x", checkSymmetry(famK, U(1))));
    out.push_back(zeroCheck("symmetry.v4.u", checkSymmetry(famK, U())));
    out.push_back(zeroCheck("symmetry.v3.scaling", checkSymmetry(famK, 3 * T() * Ut() + X() * U(1))));

    struct Cand {
        const char* name;
        PseudoDiffOp op;
    };
    std::vector<Cand> cands = {{"printed", recursionPlusPrinted()},
                               {"suggested", recursionPlusSuggested()},
                               {"derived", recursionPlusDerived()}};
    for (auto& c : cands) {
        std::string id = std::string("recursion.plus.") + c.name;
        try {
            DiffExpr q1 = applyOp(c.op, U(1));
            DiffExpr s1 = checkSymmetry(plus, q1);
            bool isK = (q1 - plus.rhs()).isZero();
            bool chainOk = false;
            std::string chainNote;
            if (s1.isZero()) {
                try {
                    DiffExpr q2 = applyOp(c.op, q1);
                    chainOk = checkSymmetry(plus, q2).isZero();
                } catch (const NotExact&) {
                    chainNote = "; second application did not localize";
                }
            }
            bool ok = s1.isZero() && chainOk;
            out.push_back({id, ok ? "pass" : "fail", print(s1),
                           std::string("R u_x ") + (isK ? "equals" : "differs from") + " the flow; symmetry chain " +
                               (ok ? "holds" : "breaks") + chainNote + " (informational)",
                           true});
        } catch (const NotExact& e) {
            out.push_back({id, "fail", "", std::string("nonlocal term did not localize: ") + e.what(), true});
        }
    }
    return out;
}

std::vector<CheckRecord> suiteMikhailov() {
    std::vector<CheckRecord> out;
    EquationSpec minus = EquationSpec::family(Rational(-2, 3), Rational(-3, 2));
    MikhailovResult r = mikhailovWithLogSigmas(minus);
    for (int i = 0; i < 4; ++i)
        out.push_back({"mikhailov.eps=-2/3.condition" + std::to_string(i + 1), r.exact[i] ? "pass" : "fail",
                       print(totalDx(*r.sigma[i]) - r.lhs[i]), "sigma = " + print(*r.sigma[i])});
    EquationSpec plus = EquationSpec::family(Rational(2, 3), Rational(3, 2));
    MikhailovResult p = mikhailovTest(plus);
    for (int i = 0; i < 4; ++i) {
        std::string note = p.sigma[i] ? "sigma = " + print(*p.sigma[i]) : "not an exact derivative";
        out.push_back({"mikhailov.eps=2/3.condition" + std::to_string(i + 1), p.exact[i] ? "pass" : "fail",
                       print(p.lhs[i]), note + " (informational)", true});
    }
    MikhailovResult airy = mikhailovTest(U(3));
    bool zeroSigmas = airy.pass;
    for (auto& sg : airy.sigma) zeroSigmas = zeroSigmas && sg && sg->isZero();
    out.push_back({"mikhailov.airy", zeroSigmas ? "pass" : "fail", "0", "F=0, all sigma vanish"});
    return out;
}

std::vector<CheckRecord> suiteDispersion(const std::optional<Rational>& eps) {
    std::vector<CheckRecord> out;
    if (eps) {
        DispersionResult r = dispersionCheck(DiffExpr(*eps), P(kA));
        std::string note = r.omega.isZero() ? "stationary: omega=0" : "omega=" + print(r.omega);
        out.push_back({"dispersion.eps=" + eps->get_str(), r.matchesLaw ? "pass" : "fail", print(r.omega), note});
        return out;
    }
    DispersionResult r = dispersionCheck(P(kEps), P(kA));
    out.push_back({"dispersion.symbolic", r.matchesLaw ? "pass" : "fail", print(r.omega), "omega=(eps-2)*a*k^3"});
    out.push_back({"dispersion.odd-in-k", r.oddInK ? "pass" : "fail", print(r.omega), ""});
    DispersionResult s = dispersionCheck(2, P(kA));
    out.push_back({"dispersion.eps=2", s.omega.isZero() ? "pass" : "fail", print(s.omega), "stationary: omega=0"});
    DiffExpr w = dispersionCheck(0, 1).omega.substitute(kK, 1);
    out.push_back({"dispersion.eps=0.a=1.k=1", (w - DiffExpr(-2)).isZero() ? "pass" : "fail", print(w), ""});
    return out;
}

}  // namespace sidv
