#include "cusp/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cusp {

namespace {

std::string removed_factor(int removed) {
    if (removed <= 0) return "C";
    if (removed == 1) return "C*";
    return "(C-" + std::to_string(removed) + "pts)";
}

std::string pin_str(const ResolutionTrace &t, const SingularComponent &sc) {
    std::ostringstream os;
    const auto &names = t.charts[(size_t)sc.chart].separatrix.vars()->names;
    bool first = true;
    for (const auto &[v, val] : sc.pinned) {
        if (!first) os << ", ";
        os << names[v] << " = " << val.str();
        first = false;
    }
    if (sc.kind == SingularComponent::Kind::Curve)
        os << ", " << sc.equation.str() << " = 0";
    os << "  [chart " << sc.chart << "]";
    return os.str();
}

} // namespace

std::string step_one_label(int alpha, long long catalog_c0) {
    if (alpha == 1) return "CxC";
    if (alpha > 1 && alpha <= catalog_c0 + 1) return "CxC*";
    return "C*xC*";
}

DivisorGraph build_graph(const ResolutionTrace &t) {
    DivisorGraph g;
    g.separatrix_node = t.separatrix_node;

    for (const auto &ci : t.components) {
        GraphNode n;
        n.id = ci.id;
        n.alpha = ci.alpha;
        n.chain_root_alpha = ci.chain_root_alpha;
        n.chain_pos = ci.chain_pos;
        n.root_tag = ci.root_tag;
        n.created_by_step = ci.created_by_step;
        switch (ci.family) {
            case ComponentInfo::Family::StepI: n.family = "D"; break;
            case ComponentInfo::Family::StepII: n.family = "Dchain"; break;
            case ComponentInfo::Family::StepIII: n.family = "A"; break;
            case ComponentInfo::Family::Separatrix: n.family = "separatrix"; break;
        }
        g.nodes.push_back(n);
    }

    // edges from the singular components
    std::set<std::pair<int, int>> seen;
    auto add_edge = [&](int a, int b, const SingularComponent &sc) {
        if (a == b) return;
        auto key = std::minmax(a, b);
        if (seen.count({key.first, key.second})) return;
        seen.insert({key.first, key.second});
        GraphEdge e;
        e.a = key.first;
        e.b = key.second;
        e.curve = pin_str(t, sc);
        e.chart = sc.chart;
        g.edges.push_back(e);
    };
    for (const auto &sc : t.singular) {
        if (!sc.is_singular) continue;
        if (sc.kind == SingularComponent::Kind::Line ||
            sc.kind == SingularComponent::Kind::Curve) {
            for (size_t i = 0; i < sc.on_components.size(); ++i)
                for (size_t j = i + 1; j < sc.on_components.size(); ++j)
                    add_edge(sc.on_components[i], sc.on_components[j], sc);
            if (sc.sep_related)
                for (int c : sc.on_components)
                    add_edge(c, t.separatrix_node, sc);
        }
    }

    // essential component: latest Step II component adjacent to the separatrix
    for (const auto &ci : t.components) {
        if (ci.family != ComponentInfo::Family::StepII) continue;
        bool adj = false;
        for (const auto &e : g.edges)
            if ((e.a == ci.id && e.b == t.separatrix_node) ||
                (e.b == ci.id && e.a == t.separatrix_node))
                adj = true;
        if (!adj) continue;
        if (g.essential < 0 || ci.created_by_step >
            t.components[(size_t)g.essential].created_by_step)
            g.essential = ci.id;
    }
    if (g.essential < 0) {
        g.consistent = false;
        g.diagnostics.push_back("no Step II component adjacent to the separatrix");
    }

    // labels
    for (auto &n : g.nodes) {
        const auto &ci = t.components[(size_t)n.id];
        if (ci.family == ComponentInfo::Family::StepI) {
            n.label = step_one_label(ci.alpha, t.catalog_c0);
        } else if (ci.family == ComponentInfo::Family::Separatrix) {
            n.label = "separatrix";
        } else {
            int sections = ci.sep_classes + (ci.chain_continued ? 1 : 0);
            if (ci.family == ComponentInfo::Family::StepII) sections += 1;  // base trace
            int fibers = std::max(1, ci.base_crossings);
            if (n.id == g.essential) {
                n.label = "(C*xC)-curve";
            } else if (ci.family == ComponentInfo::Family::StepII) {
                n.label = removed_factor(fibers - 1) + "x" + removed_factor(sections - 1);
            } else {
                n.label = removed_factor(std::max(0, sections - 1)) + "xC" +
                          (fibers > 1 ? std::string("*") : std::string(""));
            }
        }
    }

    // special components: ends of the chains over alpha = 1 and alpha = c0+1
    for (long long root : {1ll, t.catalog_c0 + 1}) {
        int best = -1;
        for (const auto &ci : t.components) {
            if (ci.family != ComponentInfo::Family::StepII) continue;
            if (ci.chain_root_alpha != (int)root) continue;
            if (ci.chain_continued) continue;   // not the end of the chain
            if (best < 0 || ci.chain_pos > t.components[(size_t)best].chain_pos)
                best = ci.id;
        }
        if (best < 0) continue;
        if (g.nodes[(size_t)best].label != "Cx(C-2pts)") continue;
        if (std::find(g.specials.begin(), g.specials.end(), best) == g.specials.end())
            g.specials.push_back(best);
    }

    // validation: essential label
    if (g.essential >= 0 && g.nodes[(size_t)g.essential].label != "(C*xC)-curve") {
        g.consistent = false;
        g.diagnostics.push_back("essential component label mismatch");
    }
    return g;
}

std::string to_dot(const DivisorGraph &g) {
    std::ostringstream os;
    os << "graph divisor {\n";
    std::vector<const GraphNode *> order;
    for (const auto &n : g.nodes) order.push_back(&n);
    std::sort(order.begin(), order.end(), [](const GraphNode *a, const GraphNode *b) {
        if (a->created_by_step != b->created_by_step)
            return a->created_by_step < b->created_by_step;
        return a->id < b->id;
    });
    for (const auto *n : order) {
        os << "  n" << n->id << " [label=\"" << n->family;
        if (n->family == "D") os << n->alpha;
        if (n->family == "Dchain" || n->family == "A") {
            os << " root=" << (n->family == "Dchain" ? std::to_string(n->chain_root_alpha)
                                                     : n->root_tag);
            os << " pos=" << n->chain_pos;
        }
        os << "\\n" << n->label << "\\nstep=" << n->created_by_step << "\"";
        if (n->id == g.essential) os << " shape=doublecircle";
        else if (std::find(g.specials.begin(), g.specials.end(), n->id) != g.specials.end())
            os << " shape=box";
        os << "];\n";
    }
    std::vector<GraphEdge> edges = g.edges;
    std::sort(edges.begin(), edges.end(), [](const GraphEdge &a, const GraphEdge &b) {
        if (a.a != b.a) return a.a < b.a;
        return a.b < b.b;
    });
    for (const auto &e : edges) {
        os << "  n" << e.a << " -- n" << e.b << " [label=\"" << e.curve << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace cusp
