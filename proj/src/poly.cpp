#include "sidv/poly.hpp"

#include <algorithm>

namespace sidv {

std::string varName(VarId v) {
    if (isJet(v)) {
        std::string s = jetSym(v) == Sym::U ? "u" : "rho";
        int tt = jetT(v), xx = jetX(v);
        if (tt == 0 && xx == 0) return s;
        s += "_";
        if (tt) s += "t";
        if (xx == 1) s += "x";
        else if (xx > 1) s += std::to_string(xx) + "x";
        return s;
    }
    switch (v) {
        case kX: return "x";
        case kT: return "t";
        case kLog: return "logu";
        case kEps: return "eps";
        case kA: return "a";
        case kC: return "c";
        case kLam: return "lam";
        case kK: return "k";
        case kOmega: return "omega";
        case kI: return "I";
        case kDelta: return "delta";
        default: return "v" + std::to_string(v);
    }
}

int exponentOf(const Monomial& m, VarId v) {
    for (auto& [id, e] : m)
        if (id == v) return e;
    return 0;
}

Monomial monoMul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            int e = a[i].second + b[j].second;
            if (e != 0) r.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return r;
}

Monomial monoPow(const Monomial& a, int k) {
    if (k == 0) return {};
    Monomial r = a;
    for (auto& p : r) p.second *= k;
    return r;
}

Monomial monoWithout(const Monomial& a, VarId v) {
    Monomial r;
    for (auto& p : a)
        if (p.first != v) r.push_back(p);
    return r;
}

Monomial monoSet(const Monomial& a, VarId v, int e) {
    Monomial r = monoWithout(a, v);
    if (e != 0) {
        auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(v, 0),
                                   [](auto& x, auto& y) { return x.first < y.first; });
        r.insert(it, {v, e});
    }
    return r;
}

bool MonoLess::operator()(const Monomial& a, const Monomial& b) const {
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        VarId va = i < a.size() ? a[i].first : 0xFFFF;
        VarId vb = j < b.size() ? b[j].first : 0xFFFF;
        if (va == vb) {
            if (a[i].second != b[j].second) return a[i].second < b[j].second;
            ++i;
            ++j;
        } else if (va < vb) {
            return a[i].second < 0;  // b has exponent 0 there
        } else {
            return 0 < b[j].second;
        }
    }
    return false;
}

Poly::Poly(const Rational& c) {
    if (c != 0) t_.emplace(Monomial{}, c);
}

Poly Poly::var(VarId v, int e) {
    Poly p;
    p.t_.emplace(e == 0 ? Monomial{} : Monomial{{v, e}}, Rational(1));
    return p;
}

Poly Poly::term(const Monomial& m, const Rational& c) {
    Poly p;
    if (c != 0) p.t_.emplace(m, c);
    return p;
}

bool Poly::isConstant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

Rational Poly::constantValue() const {
    auto it = t_.find(Monomial{});
    return it == t_.end() ? Rational(0) : it->second;
}

void Poly::addTerm(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = t_.emplace(m, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) addTerm(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) addTerm(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& kv : r.t_) kv.second = -kv.second;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (auto& [ma, ca] : t_)
        for (auto& [mb, cb] : o.t_) r.addTerm(monoMul(ma, mb), ca * cb);
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& kv : r.t_) kv.second *= c;
    return r;
}

Poly Poly::mulMono(const Monomial& m, const Rational& c) const {
    Poly r;
    if (c == 0) return r;
    for (auto& [mm, cc] : t_) r.t_.emplace_hint(r.t_.end(), monoMul(mm, m), cc * c);
    return r;
}

Poly Poly::diff(VarId v) const {
    Poly r;
    for (auto& [m, c] : t_) {
        int e = exponentOf(m, v);
        if (e == 0) continue;
        r.addTerm(monoSet(m, v, e - 1), c * e);
    }
    return r;
}

bool Poly::contains(VarId v) const {
    for (auto& kv : t_)
        if (exponentOf(kv.first, v) != 0) return true;
    return false;
}

bool Poly::containsJet() const {
    for (auto& kv : t_)
        for (auto& p : kv.first)
            if (isJet(p.first) || p.first == kLog) return true;
    return false;
}

std::vector<VarId> Poly::vars() const {
    std::vector<VarId> r;
    for (auto& kv : t_)
        for (auto& p : kv.first) r.push_back(p.first);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

std::map<int, Poly> Poly::splitBy(VarId v) const {
    std::map<int, Poly> r;
    for (auto& [m, c] : t_) r[exponentOf(m, v)].addTerm(monoWithout(m, v), c);
    return r;
}

int Poly::minExp(VarId v) const {
    int r = 0;
    bool first = true;
    for (auto& kv : t_) {
        int e = exponentOf(kv.first, v);
        if (first || e < r) r = e;
        first = false;
    }
    return r;
}

int Poly::maxExp(VarId v) const {
    int r = 0;
    bool first = true;
    for (auto& kv : t_) {
        int e = exponentOf(kv.first, v);
        if (first || e > r) r = e;
        first = false;
    }
    return r;
}

Monomial Poly::monomialContent() const {
    Monomial r;
    for (VarId v : vars()) {
        int e = minExp(v);
        if (e != 0) r.emplace_back(v, e);
    }
    return r;
}

Poly Poly::reduceImaginary() const {
    Poly r;
    for (auto& [m, c] : t_) {
        int e = exponentOf(m, kI);
        if (e == 0) {
            r.addTerm(m, c);
            continue;
        }
        int q = e >= 0 ? e / 2 : -((-e + 1) / 2);
        int rem = e - 2 * q;
        Rational s = (q % 2 == 0) ? c : Rational(-c);
        r.addTerm(monoSet(m, kI, rem), s);
    }
    return r;
}

bool exactDivide(const Poly& num, const Poly& den, Poly& q) {
    if (den.isZero()) throw std::domain_error("division by zero polynomial");
    if (num.isZero()) {
        q = Poly();
        return true;
    }
    // shift both into the ordinary polynomial ring
    Monomial cn = num.monomialContent(), cd = den.monomialContent();
    Monomial sn = monoPow(cn, -1), sd = monoPow(cd, -1);
    Poly n = num.mulMono(sn, 1), d = den.mulMono(sd, 1);
    Poly quot;
    auto [dm, dc] = d.leading();
    int guard = 0;
    while (!n.isZero()) {
        auto [nm, nc] = n.leading();
        Monomial qm = monoMul(nm, monoPow(dm, -1));
        for (auto& p : qm)
            if (p.second < 0) return false;
        Rational qc = nc / dc;
        quot.addTerm(qm, qc);
        n -= d.mulMono(qm, qc);
        if (++guard > 200000) return false;
    }
    q = quot.mulMono(monoMul(cn, sd), 1);
    return true;
}

}  // namespace sidv
