#include "sidv/diffexpr.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace sidv {

// ---------------------------------------------------------------- DiffExpr

DiffExpr::DiffExpr(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.isZero()) throw std::domain_error("DiffExpr: zero denominator");
    normalize();
}

void DiffExpr::normalize() {
    if (num_.isZero()) {
        den_ = Poly(Rational(1));
        return;
    }
    if (den_.isMonomial()) {
        auto [m, c] = den_.leading();
        Rational ic = 1 / c;
        num_ = num_.mulMono(monoPow(m, -1), ic);
        den_ = Poly(Rational(1));
        return;
    }
    Monomial content = den_.monomialContent();
    if (!content.empty()) {
        Monomial inv = monoPow(content, -1);
        den_ = den_.mulMono(inv, 1);
        num_ = num_.mulMono(inv, 1);
    }
    Rational lc = den_.leading().second;
    if (lc != 1) {
        Rational il = 1 / lc;
        den_ = den_ * il;
        num_ = num_ * il;
    }
    Poly q;
    if (exactDivide(num_, den_, q)) {
        num_ = std::move(q);
        den_ = Poly(Rational(1));
    }
}

std::vector<VarId> DiffExpr::vars() const {
    auto a = num_.vars();
    auto b = den_.vars();
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

DiffExpr DiffExpr::operator+(const DiffExpr& o) const {
    if (den_ == o.den_) {
        if (isPolyDen()) return DiffExpr(num_ + o.num_);
        return DiffExpr(num_ + o.num_, den_);
    }
    return DiffExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

DiffExpr DiffExpr::operator-(const DiffExpr& o) const { return *this + (-o); }

DiffExpr DiffExpr::operator-() const {
    DiffExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

DiffExpr DiffExpr::operator*(const DiffExpr& o) const {
    if (isPolyDen() && o.isPolyDen()) return DiffExpr(num_ * o.num_);
    return DiffExpr(num_ * o.num_, den_ * o.den_);
}

DiffExpr DiffExpr::operator/(const DiffExpr& o) const {
    if (o.isZero()) throw std::domain_error("DiffExpr: division by zero");
    return DiffExpr(num_ * o.den_, den_ * o.num_);
}

DiffExpr DiffExpr::pow(int k) const {
    if (k < 0) return (DiffExpr(1) / *this).pow(-k);
    if (num_.isMonomial() && isPolyDen()) {
        auto [m, c] = num_.leading();
        Rational ck = 1;
        for (int i = 0; i < k; ++i) ck *= c;
        return DiffExpr(Poly::term(monoPow(m, k), ck));
    }
    DiffExpr r(1), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

bool DiffExpr::equals(const DiffExpr& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    return (num_ * o.den_ - o.num_ * den_).isZero();
}

DiffExpr DiffExpr::diff(VarId v) const {
    if (!den_.contains(v)) {
        if (isPolyDen()) return DiffExpr(num_.diff(v));
        return DiffExpr(num_.diff(v), den_);
    }
    return DiffExpr(num_.diff(v) * den_ - num_ * den_.diff(v), den_ * den_);
}

static DiffExpr substPoly(const Poly& p, VarId v, const DiffExpr& value) {
    if (!p.contains(v)) return DiffExpr(p);
    DiffExpr r;
    std::map<int, DiffExpr> powers;
    for (auto& [e, c] : p.splitBy(v)) {
        if (e == 0) {
            r += DiffExpr(c);
            continue;
        }
        r += DiffExpr(c) * value.pow(e);
    }
    return r;
}

DiffExpr DiffExpr::substitute(VarId v, const DiffExpr& value) const {
    if (!contains(v)) return *this;
    DiffExpr n = substPoly(num_, v, value);
    if (!den_.contains(v)) {
        if (isPolyDen()) return n * DiffExpr(Rational(1) / den_.constantValue());
        return n / DiffExpr(den_);
    }
    return n / substPoly(den_, v, value);
}

DiffExpr DiffExpr::reduceImaginary() const {
    DiffExpr n(num_.reduceImaginary());
    if (isPolyDen()) return n * DiffExpr(Rational(1) / den_.constantValue());
    // I in the denominator: multiply through by the conjugate
    Poly d = den_.reduceImaginary();
    Poly conj;
    for (auto& [m, c] : d.terms()) conj.addTerm(m, exponentOf(m, kI) % 2 ? Rational(-c) : c);
    Poly nn = (num_.reduceImaginary() * conj).reduceImaginary();
    Poly dd = (d * conj).reduceImaginary();
    return DiffExpr(nn, dd);
}

static std::string rationalStr(const Rational& c) {
    return c.get_str();
}

static std::string polyStr(const Poly& p) {
    if (p.isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool wroteCoeff = false;
        if (a != 1 || m.empty()) {
            os << rationalStr(a);
            wroteCoeff = true;
        }
        bool firstF = true;
        for (auto& [v, e] : m) {
            if (wroteCoeff || !firstF) os << "*";
            firstF = false;
            os << varName(v);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

std::string DiffExpr::str() const {
    if (isPolyDen()) return polyStr(num_);
    return "(" + polyStr(num_) + ")/(" + polyStr(den_) + ")";
}

DiffExpr operator*(long c, const DiffExpr& e) { return DiffExpr(c) * e; }
DiffExpr rat(long p, long q) { return DiffExpr(Rational(p, q)); }

DiffExpr jet(Sym s, int tOrder, int xOrder) {
    if (tOrder < 0 || tOrder > 1) throw SecondTimeDerivative("tOrder must be 0 or 1");
    if (xOrder < 0 || xOrder > kMaxXOrder) throw SymbolicError("xOrder out of range");
    return DiffExpr::var(jetId(s, tOrder, xOrder));
}
DiffExpr X() { return DiffExpr::var(kX); }
DiffExpr T() { return DiffExpr::var(kT); }
DiffExpr Log() { return DiffExpr::var(kLog); }
DiffExpr P(Param p) { return DiffExpr::var(p); }

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at position " + std::to_string(i) + " in '" + s + "'");
    }

    DiffExpr expr() {
        DiffExpr r = term();
        for (;;) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }
    DiffExpr term() {
        DiffExpr r = factor();
        for (;;) {
            if (eat('*')) r = r * factor();
            else if (eat('/')) r = r / factor();
            else return r;
        }
    }
    DiffExpr factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        DiffExpr b = primary();
        if (eat('^')) {
            ws();
            bool neg = false;
            if (eat('-')) neg = true;
            ws();
            size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (st == i) fail("integer exponent expected");
            int e = std::stoi(s.substr(st, i - st));
            b = b.pow(neg ? -e : e);
        }
        return b;
    }
    DiffExpr primary() {
        ws();
        if (i >= s.size()) fail("unexpected end");
        if (eat('(')) {
            DiffExpr r = expr();
            if (!eat(')')) fail("')' expected");
            return r;
        }
        char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            return DiffExpr(Rational(mpz_class(s.substr(st, i - st))));
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            size_t st = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                                    (s[i] == ',' && i >= 2 && s.compare(i - 2, 2, "_t") == 0)))
                ++i;
            return ident(s.substr(st, i - st));
        }
        fail(std::string("unexpected character '") + ch + "'");
    }
    DiffExpr ident(const std::string& id) {
        static const std::map<std::string, VarId> named = {
            {"x", kX},     {"t", kT},         {"logu", kLog}, {"eps", kEps},     {"a", kA},
            {"c", kC},     {"lam", kLam},     {"k", kK},      {"omega", kOmega}, {"I", kI},
            {"delta", kDelta}};
        if (auto it = named.find(id); it != named.end()) return DiffExpr::var(it->second);
        Sym sym;
        std::string rest;
        if (id.rfind("rho", 0) == 0) {
            sym = Sym::Rho;
            rest = id.substr(3);
        } else if (id[0] == 'u') {
            sym = Sym::U;
            rest = id.substr(1);
        } else {
            fail("unknown identifier '" + id + "'");
        }
        if (rest.empty()) return jet(sym, 0, 0);
        if (rest[0] != '_') fail("unknown identifier '" + id + "'");
        rest = rest.substr(1);
        int tOrder = 0, xOrder = 0;
        size_t p = 0;
        if (p < rest.size() && rest[p] == 't') {
            tOrder = 1;
            ++p;
            if (p < rest.size() && rest[p] == ',') ++p;
        }
        if (p < rest.size()) {
            size_t st = p;
            while (p < rest.size() && std::isdigit(static_cast<unsigned char>(rest[p]))) ++p;
            if (st != p) {
                xOrder = std::stoi(rest.substr(st, p - st));
                if (p >= rest.size() || rest[p] != 'x' || p + 1 != rest.size()) fail("bad jet name '" + id + "'");
                ++p;
            } else {
                while (p < rest.size() && rest[p] == 'x') {
                    ++xOrder;
                    ++p;
                }
            }
            if (p != rest.size()) fail("bad jet name '" + id + "'");
        }
        if (tOrder == 0 && xOrder == 0) fail("bad jet name '" + id + "'");
        return jet(sym, tOrder, xOrder);
    }
};

}  // namespace

DiffExpr parse(const std::string& text) {
    Parser p{text};
    DiffExpr r = p.expr();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

// ---------------------------------------------------------------- calculus

namespace {

/// D_x on a polynomial; every D_x(var) is a monomial.
Poly dxPoly(const Poly& p) {
    Poly r;
    for (auto& [m, c] : p.terms()) {
        for (auto& [v, e] : m) {
            Monomial base = monoSet(m, v, e - 1);
            Rational ce = c * e;
            if (v == kX) {
                r.addTerm(base, ce);
            } else if (isJet(v)) {
                if (jetX(v) >= kMaxXOrder) throw SymbolicError("x-order overflow");
                r.addTerm(monoMul(base, Monomial{{static_cast<VarId>(v + 1), 1}}), ce);
            } else if (v == kLog) {
                Monomial d{{jetId(Sym::U, 0, 0), -1}, {jetId(Sym::U, 0, 1), 1}};
                r.addTerm(monoMul(base, d), ce);
            }
        }
    }
    return r;
}

/// Cache of D_x^n(rhs) for one rule.
struct RhsTower {
    DiffExpr base;
    std::vector<DiffExpr> cache;
    const DiffExpr& at(int n) {
        if (cache.empty()) cache.push_back(base);
        while (static_cast<int>(cache.size()) <= n) cache.push_back(totalDx(cache.back()));
        return cache[n];
    }
};

}  // namespace

DiffExpr totalDx(const DiffExpr& e) {
    Poly dn = dxPoly(e.num());
    if (e.isPolyDen()) return DiffExpr(dn) * DiffExpr(Rational(1) / e.den().constantValue());
    Poly dd = dxPoly(e.den());
    if (dd.isZero()) return DiffExpr(dn, e.den());
    return DiffExpr(dn * e.den() - e.num() * dd, e.den() * e.den());
}

DiffExpr totalDxN(const DiffExpr& e, int n) {
    DiffExpr r = e;
    for (int i = 0; i < n; ++i) r = totalDx(r);
    return r;
}

DiffExpr reduceByRules(const DiffExpr& e, const RuleSet& rules) {
    DiffExpr r = e;
    for (auto& rule : rules) {
        RhsTower tower{rule.rhs, {}};
        for (VarId v : r.vars()) {
            if (!isJet(v) || jetSym(v) != rule.subject || jetT(v) != 1) continue;
            r = r.substitute(v, tower.at(jetX(v)));
        }
    }
    return r;
}

DiffExpr totalDt(const DiffExpr& e0, const RuleSet& rules, bool formal) {
    DiffExpr e = reduceByRules(e0, rules);
    std::map<int, RhsTower> towers;
    for (auto& r : rules) towers[static_cast<int>(r.subject)] = RhsTower{r.rhs, {}};

    auto dtVar = [&](VarId v) -> DiffExpr {
        if (v == kT) return DiffExpr(1);
        if (v == kLog) {
            VarId u0 = jetId(Sym::U, 0, 0);
            DiffExpr ut;
            if (auto it = towers.find(0); it != towers.end()) ut = it->second.at(0);
            else if (formal) ut = Ut();
            else throw MissingRule("no evolution rule for u");
            return ut * DiffExpr::var(u0, -1);
        }
        if (!isJet(v)) return DiffExpr();
        Sym s = jetSym(v);
        auto it = towers.find(static_cast<int>(s));
        if (it != towers.end()) return it->second.at(jetX(v));  // tOrder is 0 after reduction
        if (!formal) throw MissingRule("no evolution rule for " + varName(v));
        if (jetT(v) == 1) throw SecondTimeDerivative("D_t of " + varName(v));
        return jet(s, 1, jetX(v));
    };

    bool denT = e.den().containsJet() || e.den().contains(kT);
    DiffExpr acc;
    for (VarId v : e.num().vars()) {
        if (!(v == kT || v == kLog || isJet(v))) continue;
        DiffExpr dv = dtVar(v);
        if (dv.isZero()) continue;
        acc += DiffExpr(e.num().diff(v)) * dv;
    }
    if (!denT) return acc * DiffExpr(Poly(Rational(1)), e.den());
    DiffExpr dd;
    for (VarId v : e.den().vars()) {
        if (!(v == kT || v == kLog || isJet(v))) continue;
        dd += DiffExpr(e.den().diff(v)) * dtVar(v);
    }
    DiffExpr n(e.num()), d(e.den());
    return (acc * d - n * dd) / (d * d);
}

namespace {

/// partial derivative in a jet variable with L = ln|u| treated as a function of u
DiffExpr partialJet(const DiffExpr& e, VarId v) {
    DiffExpr r = e.diff(v);
    if (v == jetId(Sym::U, 0, 0) && e.contains(kLog)) r += e.diff(kLog) * DiffExpr::var(v, -1);
    return r;
}

/// Euler operator of a single x-channel (symbol, tOrder), x-derivatives only.
DiffExpr eulerChannelX(const DiffExpr& e, Sym s, int tOrder) {
    DiffExpr r;
    for (VarId v : e.vars()) {
        if (!isJet(v) || jetSym(v) != s || jetT(v) != tOrder) continue;
        DiffExpr term = partialJet(e, v);
        int n = jetX(v);
        term = totalDxN(term, n);
        if (n % 2) term = -term;
        r += term;
    }
    if (s == Sym::U && tOrder == 0 && e.contains(kLog) && !e.contains(jetId(Sym::U, 0, 0)))
        r += partialJet(e, jetId(Sym::U, 0, 0));
    return r;
}

}  // namespace

DiffExpr eulerOperator(const DiffExpr& e, Sym s) {
    DiffExpr r;
    VarId u0 = jetId(s, 0, 0);
    std::vector<VarId> vs = e.vars();
    if (s == Sym::U && e.contains(kLog) && !e.contains(u0)) vs.push_back(u0);
    for (VarId v : vs) {
        if (!isJet(v) || jetSym(v) != s) continue;
        DiffExpr term = partialJet(e, v);
        int n = jetX(v);
        term = totalDxN(term, n);
        if (n % 2) term = -term;
        if (jetT(v) == 1) term = -totalDt(term, {}, true);
        r += term;
    }
    return r;
}

DiffExpr frechet(const DiffExpr& K, const DiffExpr& Q) {
    DiffExpr r;
    std::vector<VarId> vs = K.vars();
    VarId u0 = jetId(Sym::U, 0, 0);
    if (K.contains(kLog) && !K.contains(u0)) vs.push_back(u0);
    DiffExpr dq = Q;
    int have = 0;
    std::sort(vs.begin(), vs.end());
    for (VarId v : vs) {
        if (!isJet(v) || jetSym(v) != Sym::U || jetT(v) != 0) continue;
        int n = jetX(v);
        while (have < n) {
            dq = totalDx(dq);
            ++have;
        }
        r += partialJet(K, v) * dq;
    }
    return r;
}

namespace {

/// antiderivative of c*u^p*L^l with respect to u (L = ln|u|)
void integrateLogTerm(const Monomial& rest, int p, int l, const Rational& c, Poly& out) {
    VarId u0 = jetId(Sym::U, 0, 0);
    if (p == -1) {
        out.addTerm(monoSet(monoSet(rest, u0, 0), kLog, l + 1), c / (l + 1));
        return;
    }
    Rational k = c / (p + 1);
    out.addTerm(monoSet(monoSet(rest, u0, p + 1), kLog, l), k);
    if (l > 0) integrateLogTerm(rest, p, l - 1, -k * l, out);
}

Poly antiderivative(const Poly& A, VarId w) {
    Poly out;
    VarId u0 = jetId(Sym::U, 0, 0);
    for (auto& [m, c] : A.terms()) {
        int p = exponentOf(m, w);
        int l = exponentOf(m, kLog);
        if (w == u0 && (l > 0 || p == -1)) {
            Monomial rest = monoWithout(monoWithout(m, u0), kLog);
            if (l < 0) throw NotExact("negative power of ln|u|");
            integrateLogTerm(rest, p, l, c, out);
            continue;
        }
        if (p == -1) throw NotExact("logarithmic antiderivative in " + varName(w));
        out.addTerm(monoSet(m, w, p + 1), c / (p + 1));
    }
    return out;
}

}  // namespace

std::optional<DiffExpr> tryIntegrateX(const DiffExpr& e) {
    try {
        return integrateX(e);
    } catch (const NotExact&) {
        return std::nullopt;
    }
}

DiffExpr integrateX(const DiffExpr& e) {
    if (e.isZero()) return DiffExpr();
    if (e.den().containsJet() || e.den().contains(kX))
        throw NotExact("integrateX: non-constant denominator is not supported");
    for (Sym s : {Sym::U, Sym::Rho})
        for (int tt = 0; tt < 2; ++tt)
            if (!eulerChannelX(e, s, tt).isZero()) throw NotExact("Euler operator does not vanish");

    Poly P = e.num();
    Poly F;
    for (int iter = 0;; ++iter) {
        if (iter > 5000) throw SymbolicError("integrateX: no convergence");
        VarId top = 0;
        int best = 0;
        for (VarId v : P.vars()) {
            if (!isJet(v) || jetX(v) < 1) continue;
            if (jetX(v) > best || (jetX(v) == best && v > top)) {
                best = jetX(v);
                top = v;
            }
        }
        if (best == 0) break;
        auto parts = P.splitBy(top);
        for (auto& kv : parts)
            if (kv.first != 0 && kv.first != 1) throw NotExact("nonlinear in " + varName(top));
        Poly F1 = antiderivative(parts[1], static_cast<VarId>(top - 1));
        P -= dxPoly(F1);
        F += F1;
    }
    for (VarId v : P.vars())
        if (isJet(v) || v == kLog) throw NotExact("residual depends on the field");
    for (auto& [m, c] : P.terms()) {
        int p = exponentOf(m, kX);
        if (p == -1) throw NotExact("ln x antiderivative");
        F.addTerm(monoSet(m, kX, p + 1), c / (p + 1));
    }
    DiffExpr res = e.isPolyDen() ? DiffExpr(F) * DiffExpr(Rational(1) / e.den().constantValue())
                                 : DiffExpr(F, e.den());
    if (!totalDx(res).equals(e)) throw SymbolicError("integrateX: internal check failed");
    return res;
}

}  // namespace sidv
