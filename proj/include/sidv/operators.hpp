#pragma once
// Integrability structures: symmetries, conservation laws, recursion
// operators, the conserved-density hierarchy, zero curvature, Mikhailov
// conditions and the plane-wave dispersion law.

#include "sidv/diffexpr.hpp"
#include "sidv/equation.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sidv {

/// sum coeff * D_x^power, plus at most one nonlocal leftMul * D_x^{-1} * integrand.
struct PseudoDiffOp {
    struct Term {
        DiffExpr coeff;
        int power;
    };
    struct Nonlocal {
        DiffExpr leftMul, integrand;
    };
    std::vector<Term> terms;
    std::optional<Nonlocal> nonlocal;

    static PseudoDiffOp identity();
};

/// Throws NotExact when the nonlocal term does not localize on Q.
DiffExpr applyOp(const PseudoDiffOp& R, const DiffExpr& Q);
DiffExpr applyOpN(const PseudoDiffOp& R, const DiffExpr& Q, int n);

/// D^2 + 2u^{-1}u_x D + u^{-1}u_xx
PseudoDiffOp recursionMinus();
/// Three readings of the eps=2/3 operator: as printed, with u^{-2}u_x -> u^{-2}u_x^2,
/// and re-derived from the factorized form.
PseudoDiffOp recursionPlusPrinted();
PseudoDiffOp recursionPlusSuggested();
PseudoDiffOp recursionPlusDerived();

/// D_t Q - K_*[Q] modulo u_t = K.
DiffExpr checkSymmetry(const EquationSpec& eq, const DiffExpr& Q);
DiffExpr checkSymmetry(const DiffExpr& K, const DiffExpr& Q);

struct ConservedVector {
    DiffExpr density, flux;
    RuleSet rules;
};
/// D_t C0 + D_x C1 with every t-derivative eliminated.
DiffExpr checkConservation(const ConservedVector& v);
/// Same check; densities may contain logu standing for ln|u|.
DiffExpr logDensityCheck(const ConservedVector& v);

/// u^3 R^n (3t u_t + x u_x) with R = recursionMinus(), u_t formal.
DiffExpr hierarchyDensity(int n);

using Mat2 = std::array<std::array<DiffExpr, 2>, 2>;
struct ZeroCurvaturePair {
    Mat2 U, V;
};
/// U from L = -D^2 + w, V reduced from B = 4D^3 - 6wD - 3w_x, w = u_xx/u.
ZeroCurvaturePair laxPairFromOperators();
/// The matrices exactly as printed.
ZeroCurvaturePair laxPairPrinted();
/// U_t - V_x + [U,V] with u_t formal.
Mat2 zeroCurvatureResidual(const ZeroCurvaturePair& p);
/// (u^{-1}D^2 - u_xx/u^2)(u_t + 3u_x u_xx/u - u_xxx)
DiffExpr miuraFactorization();

struct MikhailovResult {
    bool pass = false;
    bool applicable = true;
    std::array<bool, 4> exact{};
    std::array<std::optional<DiffExpr>, 4> sigma;
    std::array<DiffExpr, 4> lhs;
    std::string note;
    bool informational = false;  ///< reported, never counted as a failure
};
/// Exactness of each condition; sigmas found by integrateX.
MikhailovResult mikhailovTest(const EquationSpec& eq);
/// Same for u_t = K given directly (e.g. K = u_xxx).
MikhailovResult mikhailovTest(const DiffExpr& K);
/// Checks the supplied sigma list (D_t of multiples of ln|u|) verbatim.
MikhailovResult mikhailovWithLogSigmas(const EquationSpec& eq);

struct DispersionResult {
    DiffExpr omega;        ///< solved frequency
    bool matchesLaw;       ///< omega == (eps-2) a k^3
    bool oddInK;
};
/// eps, a may be symbolic (P(kEps), P(kA)) or numbers.
DispersionResult dispersionCheck(const DiffExpr& eps, const DiffExpr& a);

// ------------------------------------------------------------ verify suites

struct CheckRecord {
    std::string id;
    std::string status;  // pass | fail | typo-suspect
    std::string residual;
    std::string note;
    bool informational = false;  // reported, never counted toward the exit code
};

std::vector<CheckRecord> suiteConservation();
std::vector<CheckRecord> suiteHierarchy(int nMin = 1, int nMax = 4);
std::vector<CheckRecord> suiteLax();
std::vector<CheckRecord> suiteRecursion();
std::vector<CheckRecord> suiteMikhailov();
std::vector<CheckRecord> suiteDispersion(const std::optional<Rational>& eps = std::nullopt);

/// Reference densities and variational derivatives for n = 1..4, as printed.
std::string hierarchyReferenceDensity(int n);
std::string hierarchyReferenceEuler(int n);

}  // namespace sidv
