#include "cusp/forms.hpp"

#include <stdexcept>

namespace cusp {

std::string OneForm::str() const {
    const auto &names = vars()->names;
    std::string out;
    for (int i = 0; i < 3; ++i) {
        if (!out.empty()) out += " + ";
        out += "(" + a[i].str() + ")*d" + names[i];
    }
    return out;
}

PolyMap PolyMap::identity(const CycloFieldPtr &f, const VarSetPtr &v) {
    PolyMap m;
    m.source = v;
    m.target = v;
    for (size_t i = 0; i < v->names.size(); ++i)
        m.images.push_back(Polynomial::variable(f, v, i));
    return m;
}

PolyMap PolyMap::after(const PolyMap &inner) const {
    if (!(inner.target == source || *inner.target == *source))
        throw std::invalid_argument("PolyMap::after: chart mismatch");
    PolyMap r;
    r.source = inner.source;
    r.target = target;
    for (const auto &im : images)
        r.images.push_back(im.compose(inner.images));
    return r;
}

OneForm exterior_derivative(const Polynomial &f) {
    return {{f.derivative(0), f.derivative(1), f.derivative(2)}};
}

TwoForm exterior_derivative(const OneForm &w) {
    // d(A dx + B dy + C dz) = (Bx - Ay) dx^dy + (Cx - Az) dx^dz + (Cy - Bz) dy^dz
    return {{w.a[1].derivative(0) - w.a[0].derivative(1),
             w.a[2].derivative(0) - w.a[0].derivative(2),
             w.a[2].derivative(1) - w.a[1].derivative(2)}};
}

ThreeForm exterior_derivative(const TwoForm &w) {
    // d(P dx^dy + Q dx^dz + R dy^dz) = (Pz - Qy + Rx) dx^dy^dz
    return {w.c[0].derivative(2) - w.c[1].derivative(1) + w.c[2].derivative(0)};
}

TwoForm wedge(const OneForm &w, const OneForm &e) {
    if (!(w.vars() == e.vars() || *w.vars() == *e.vars()))
        throw std::invalid_argument("wedge: chart mismatch");
    return {{w.a[0] * e.a[1] - w.a[1] * e.a[0],
             w.a[0] * e.a[2] - w.a[2] * e.a[0],
             w.a[1] * e.a[2] - w.a[2] * e.a[1]}};
}

ThreeForm wedge(const OneForm &w, const TwoForm &e) {
    // dz^(dx^dy) = +, dy^(dx^dz) = -, dx^(dy^dz) = +
    return {w.a[2] * e.c[0] - w.a[1] * e.c[1] + w.a[0] * e.c[2]};
}

Polynomial pullback(const Polynomial &f, const PolyMap &m) {
    if (!(f.vars() == m.target || *f.vars() == *m.target))
        throw std::invalid_argument("pullback: form not in the map's target chart");
    return f.compose(m.images);
}

OneForm pullback(const OneForm &w, const PolyMap &m) {
    if (!(w.vars() == m.target || *w.vars() == *m.target))
        throw std::invalid_argument("pullback: form not in the map's target chart");
    const auto &f = w.field();
    OneForm r{{Polynomial::zero(f, m.source), Polynomial::zero(f, m.source), Polynomial::zero(f, m.source)}};
    for (int i = 0; i < 3; ++i) {
        Polynomial ci = w.a[i].compose(m.images);
        if (ci.is_zero()) continue;
        for (int j = 0; j < 3; ++j) {
            Polynomial dj = m.images[i].derivative(j);
            if (dj.is_zero()) continue;
            r.a[j] = r.a[j] + ci * dj;
        }
    }
    return r;
}

TwoForm pullback(const TwoForm &w, const PolyMap &m) {
    if (!(w.c[0].vars() == m.target || *w.c[0].vars() == *m.target))
        throw std::invalid_argument("pullback: form not in the map's target chart");
    const auto &f = w.c[0].field();
    auto zero = Polynomial::zero(f, m.source);
    std::array<OneForm, 3> dm;
    for (int i = 0; i < 3; ++i)
        dm[i] = OneForm{{m.images[i].derivative(0), m.images[i].derivative(1), m.images[i].derivative(2)}};
    TwoForm r{{zero, zero, zero}};
    const int pair_index[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int k = 0; k < 3; ++k) {
        Polynomial ck = w.c[k].compose(m.images);
        if (ck.is_zero()) continue;
        TwoForm wk = wedge(dm[pair_index[k][0]], dm[pair_index[k][1]]);
        r = r + wk * ck;
    }
    return r;
}

Polynomial contract(const OneForm &w, const VectorField &x) {
    return w.a[0] * x.comp[0] + w.a[1] * x.comp[1] + w.a[2] * x.comp[2];
}

bool integrability_check(const OneForm &w) {
    return wedge(w, exterior_derivative(w)).is_zero();
}

} // namespace cusp
