#ifndef CUSP_FORMS_HPP
#define CUSP_FORMS_HPP

#include <array>
#include <string>

#include "cusp/poly.hpp"

namespace cusp {

// Differential forms over a three-variable chart. Basis conventions:
//   1-form:  a0*dx1 + a1*dx2 + a2*dx3
//   2-form:  c0*dx1^dx2 + c1*dx1^dx3 + c2*dx2^dx3
//   3-form:  c*dx1^dx2^dx3
struct OneForm {
    std::array<Polynomial, 3> a;

    const CycloFieldPtr &field() const { return a[0].field(); }
    const VarSetPtr &vars() const { return a[0].vars(); }
    bool is_zero() const { return a[0].is_zero() && a[1].is_zero() && a[2].is_zero(); }

    OneForm operator+(const OneForm &o) const { return {{a[0] + o.a[0], a[1] + o.a[1], a[2] + o.a[2]}}; }
    OneForm operator-(const OneForm &o) const { return {{a[0] - o.a[0], a[1] - o.a[1], a[2] - o.a[2]}}; }
    OneForm operator*(const Polynomial &f) const { return {{a[0] * f, a[1] * f, a[2] * f}}; }
    bool operator==(const OneForm &o) const { return a[0] == o.a[0] && a[1] == o.a[1] && a[2] == o.a[2]; }

    std::string str() const;
};

struct TwoForm {
    std::array<Polynomial, 3> c;

    bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
    TwoForm operator+(const TwoForm &o) const { return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}}; }
    TwoForm operator*(const Polynomial &f) const { return {{c[0] * f, c[1] * f, c[2] * f}}; }
    bool operator==(const TwoForm &o) const { return c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2]; }
};

struct ThreeForm {
    Polynomial c;
    bool is_zero() const { return c.is_zero(); }
};

// Polynomial map between charts: target coordinate i is images[i], a
// polynomial in the source chart's variables. Pullback moves forms from the
// target chart to the source chart.
struct PolyMap {
    VarSetPtr source;
    VarSetPtr target;
    std::vector<Polynomial> images;   // length = target arity, in source vars

    static PolyMap identity(const CycloFieldPtr &f, const VarSetPtr &v);
    // this o inner : evaluate this after inner (inner maps A -> B, this B -> C)
    PolyMap after(const PolyMap &inner) const;
};

// Vector field a0*d/dx1 + a1*d/dx2 + a2*d/dx3.
struct VectorField {
    std::array<Polynomial, 3> comp;
};

OneForm exterior_derivative(const Polynomial &f);
TwoForm exterior_derivative(const OneForm &w);
ThreeForm exterior_derivative(const TwoForm &w);

TwoForm wedge(const OneForm &w, const OneForm &e);
ThreeForm wedge(const OneForm &w, const TwoForm &e);

Polynomial pullback(const Polynomial &f, const PolyMap &m);
OneForm pullback(const OneForm &w, const PolyMap &m);
TwoForm pullback(const TwoForm &w, const PolyMap &m);

Polynomial contract(const OneForm &w, const VectorField &x);

// true iff w ^ dw == 0 identically
bool integrability_check(const OneForm &w);

} // namespace cusp

#endif
