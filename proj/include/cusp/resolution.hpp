#ifndef CUSP_RESOLUTION_HPP
#define CUSP_RESOLUTION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusp/foliation.hpp"

namespace cusp {

// One exceptional (or separatrix) locus visible in a chart as {var == value}.
struct DivisorSlice {
    int component = -1;
    size_t var = 0;
    CycloScalar value;
};

struct Chart {
    int id = 0;
    int parent = -1;
    int created_by_step = -1;   // blow-up step index, -1 for the origin chart
    bool alive = true;          // false once replaced by blow-up children
    PolyMap to_parent;          // this chart -> parent chart
    PolyMap to_origin;          // this chart -> (C^3, 0)
    std::vector<DivisorSlice> divisors;
    // components disjoint from all centers of this chart's history can show up
    // with non-coordinate equations; they are fully charted elsewhere and kept
    // only so the singular-locus decomposition can recognize their corners
    std::vector<std::pair<int, Polynomial>> shadow_divisors;
    // separatrix crossing lines over the branch roots, tracked per chart so
    // translated blow-ups keep sibling lines addressable
    struct RootLine {
        std::string tag;
        std::pair<size_t, CycloScalar> pin1, pin2;
    };
    std::vector<RootLine> root_lines;
    OneForm omega;              // strict transform of Omega in this chart
    Polynomial separatrix;      // strict transform of z^2 + phi
    std::vector<int> omega_powers; // powers of the new exceptional divided at creation
    std::vector<int> sep_powers;
};

enum class Stage { I = 1, II = 2, III = 3 };

struct CenterAppearance {
    int chart;
    // (var, value) pairs; 3 entries pin a point, 2 pin a line
    std::vector<std::pair<size_t, CycloScalar>> pinned;
};

struct BlowupStep {
    int index = 0;
    Stage stage = Stage::I;
    bool point_center = false;
    std::string center_key;
    std::vector<CenterAppearance> appearances;
    std::vector<int> charts_created;
    int new_component = -1;
    int continuation_chart = -1;
};

struct ComponentInfo {
    int id = -1;
    enum class Family { StepI, StepII, StepIII, Separatrix } family = Family::StepI;
    int created_by_step = -1;
    int alpha = 0;             // Step I creation position, 1-based
    int chain_base = -1;       // component the chain grew from
    int chain_root_alpha = 0;  // Step I position the chain is rooted over
    int chain_pos = 0;         // position along its chain, 1-based
    std::string root_tag;      // Step III: identifies the root line
    int base_crossings = 0;    // crossings of the center line with other components
    bool chain_continued = false; // a later center line lay inside this component
    int sep_classes = 0;       // separatrix section classes left on the component
    std::string label;         // complement topology label, filled by the graph pass
};

struct StepOneShape {
    int chart = -1;
    size_t var_k = 0, var_j = 1, var_z = 2;   // roles: last divisor, previous divisor, square term
    long long a = 0, b = 0;
    long long m_raw = 0, n_raw = 0;   // coefficients of the linear form as extracted
    long long m = 0, n = 0;           // normalized (coprime) pair
    Polynomial unit_factor;           // U
    OneForm eta;                      // with strict form = S * (m_raw y dx + n_raw x dy) + x y eta
    Polynomial delta_coeff;           // solved from the dz part of eta - dS
};

struct StepTwoShape {
    int chart = -1;
    size_t var_k = 0, var_j = 1, var_z = 2;
    long long wx = 0, wy = 0;     // omega coefficients (y dx and x dy)
    long long p_invariant = 0;    // P = a at the end of Step I
    long long q_invariant = 0;    // Q = n q d - (m + n - 1)
    Polynomial h_power;           // the z-free part, expected h^r
};

struct SingularComponent {
    int chart = -1;
    // Line: two pinned coordinates (corner lines, separatrix crossing lines);
    // Curve: one pinned coordinate plus a curve equation in the slice;
    // Point: all coordinates pinned, possibly one algebraically.
    enum class Kind { Line, Curve, Point, Unresolved } kind = Kind::Line;
    std::vector<std::pair<size_t, CycloScalar>> pinned;
    Polynomial equation;          // curve equation in the slice, or leftover equation
    bool has_alg = false;   // point with an algebraic coordinate
    size_t alg_var = 0;
    Polynomial alg_min_poly;
    std::vector<int> on_components;
    bool sep_related = false;     // the separatrix strict transform vanishes along it
    bool is_singular = true;
    bool simple = false;
    bool redundant = false;       // copy of a component fully analyzed in another chart
    std::string eigen_note;
};

struct ResolutionTrace {
    CuspidalInput input;
    DerivedParams params;
    std::vector<Chart> charts;
    std::vector<ComponentInfo> components;
    std::vector<BlowupStep> steps;
    StepOneShape step1;
    StepTwoShape step2;
    int separatrix_node = -1;     // pseudo component id of the separatrix
    std::vector<SingularComponent> singular;
    bool all_simple = false;
    long long guard_limit = 0;
    long long step1_count = 0, step2_count = 0, step3_count = 0;
    int parity_case = 0;          // 1: d even; 2: d odd, one final point blow-up not needed; 3: with it
    long long catalog_c0 = 0;     // initial Euclid run length (first nonzero cf digit)
};

// Standard blow-up chart maps (source = child chart, target = parent chart).
std::vector<PolyMap> point_blowup_maps(const CycloFieldPtr &f, const VarSetPtr &v,
                                       const std::vector<CycloScalar> &center);
std::vector<PolyMap> line_blowup_maps(const CycloFieldPtr &f, const VarSetPtr &v,
                                      const std::vector<std::pair<size_t, CycloScalar>> &pinned);

// Divide the maximal power of each listed variable out of all coefficients.
std::pair<std::vector<int>, OneForm> strict_form(const OneForm &w, const std::vector<size_t> &vars);

struct ResolveOptions {
    long long guard_override = 0;       // 0: use the default formula
    bool run_step1_only = false;        // stop after the point blow-ups
    bool skip_final_analysis = false;   // skip the singular-locus certification
};

struct GuardExhausted : std::runtime_error {
    explicit GuardExhausted(const std::string &what) : std::runtime_error(what) {}
};

ResolutionTrace resolve(const CuspidalInput &in, const ResolveOptions &opt = {});

struct ShapeReport {
    bool ok = true;
    std::vector<std::string> checks;    // human-readable pass lines
    std::vector<std::string> failures;  // failed checks with residuals
};

ShapeReport verify_shapes(const ResolutionTrace &t);

// Eigen-pair analysis of the dual planar vector field along a singular line:
// entries of trace/determinant live in K[param]. Returns (simple?, note).
struct EigenVerdict {
    bool singular = true;
    bool simple = false;
    bool degenerate = false;   // transversal family carries no information here
    std::string note;
};

// Exposed for tests: decide simplicity from trace and determinant of the
// linearized dual field, with entries polynomial in the line parameter.
EigenVerdict eigen_verdict(const Polynomial &trace, const Polynomial &det);

// Square root in Q(zeta_M) for scalars of the shape rho * zeta^(2k) with
// rational rho up to sign (covers products of branch data); empty otherwise.
std::optional<CycloScalar> scalar_sqrt(const CycloScalar &v);

// Exact polynomial square root attempt.
std::optional<Polynomial> poly_sqrt(const Polynomial &p);

// Replays all chart maps of a trace: recomposes to_origin from the parent
// chain and recomputes every stored strict form from scratch; throws on the
// first mismatch. Used by the trace replay oracle.
void replay_check(const ResolutionTrace &t);

} // namespace cusp

#endif
