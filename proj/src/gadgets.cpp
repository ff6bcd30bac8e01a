#include "lfree/gadgets.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lfree/jsonio.hpp"
#include "lfree/labeler.hpp"

namespace lfree::gadgets {

namespace {

using labeler::Congruence;
using labeler::ConstraintSystem;
using labeler::LinearForm;
using labeler::Schedule;
using labeler::VarId;

// Item a sequence slot may take: a variable or a fixed integer.
struct SeqItem {
    bool is_var = true;
    VarId var = -1;
    Int value{0};
};

struct Ctx {
    ConstraintSystem sys;
    std::vector<std::uint64_t> edge_masks;  // variable sets of the edge tuples
    // formal combinations already processed (variable part + constant)
    std::set<std::vector<std::pair<VarId, Int>>> seen;
    bool allow_special = false;
    std::function<bool(std::uint64_t)> is_special_support;
    std::size_t special_skips = 0;
};

std::uint64_t var_bit(VarId v) { return std::uint64_t(1) << v; }

// Reduce, then either record the constraint, discard it when vacuous, or
// report the vanishing according to `precondition_zero`.
void add_constraint(Ctx& c, const LinearForm& original, bool precondition_zero,
                    const std::string& what) {
    LinearForm red = labeler::reduce_form(original, c.sys.substitutions);
    if (red.terms.empty()) {
        if (red.constant != 0) return;  // constant and nonzero: nothing to do
        std::uint64_t support = 0;
        for (const auto& [v, coeff] : original.terms) support |= var_bit(v);
        if (c.allow_special && c.is_special_support &&
            c.is_special_support(support)) {
            ++c.special_skips;
            return;
        }
        if (precondition_zero) throw PreconditionError(what);
        throw InternalInvariantError(what);
    }
    labeler::add_form(c.sys, red, original);
}

struct SeqOpts {
    bool skip_edge_sequences = false;
    // homogeneous case: a combination whose per-variable coefficients all
    // cancel corresponds to trivial solutions only
    bool trivial_skip = false;
    // all-constant slots: solution inside the fixed set (precondition breach)
    std::string const_zero_msg = "fixed set admits a solution";
    std::string zero_msg = "reduced combination vanished";
    bool zero_is_precondition = false;
};

// Enumerates index tuples; within a run of equal coefficients the indices are
// non-decreasing, which visits every distinct formal combination at least
// once while cutting the bulk of permutation duplicates.
void odometer(const std::vector<bool>& same, std::size_t n,
              const std::function<void(const std::vector<std::size_t>&)>& visit) {
    const std::size_t l = same.size();
    if (n == 0) return;
    std::vector<std::size_t> idx(l, 0);
    while (true) {
        visit(idx);
        std::size_t p = l;
        do {
            if (p == 0) return;
            --p;
        } while (idx[p] + 1 >= n);
        ++idx[p];
        for (std::size_t q = p + 1; q < l; ++q) idx[q] = same[q] ? idx[q - 1] : 0;
    }
}

// All constraints coming from sequences z with lc(z) = sum coeffs_i * z_i - k.
void add_sequences(Ctx& c, const std::vector<Int>& coeffs, const Int& k,
                   const std::vector<SeqItem>& items, const SeqOpts& opts) {
    const std::size_t l = coeffs.size();
    std::vector<bool> same(l, false);
    for (std::size_t i = 1; i < l; ++i) same[i] = coeffs[i] == coeffs[i - 1];

    std::map<VarId, Int> acc;
    odometer(same, items.size(), [&](const std::vector<std::size_t>& idx) {
        acc.clear();
        Int constant = -k;
        bool all_vars = true;
        std::uint64_t support = 0;
        for (std::size_t i = 0; i < l; ++i) {
            const SeqItem& it = items[idx[i]];
            if (it.is_var) {
                acc[it.var] += coeffs[i];
                support |= var_bit(it.var);
            } else {
                all_vars = false;
                constant += coeffs[i] * it.value;
            }
        }
        if (opts.skip_edge_sequences && all_vars) {
            for (std::uint64_t m : c.edge_masks)
                if (m == support) return;
        }
        std::vector<std::pair<VarId, Int>> key;
        key.reserve(acc.size() + 1);
        for (const auto& [v, coeff] : acc)
            if (coeff != 0) key.emplace_back(v, coeff);
        if (key.empty()) {
            if (all_vars && opts.trivial_skip && constant == 0) return;
            if (constant == 0) throw PreconditionError(opts.const_zero_msg);
            return;  // unsatisfiable combination, no constraint needed
        }
        key.emplace_back(VarId(-1), constant);
        if (!c.seen.insert(key).second) return;

        LinearForm lc;
        lc.constant = constant;
        for (const auto& [v, coeff] : acc)
            if (coeff != 0) lc.terms[v] = coeff;
        add_constraint(c, lc, opts.zero_is_precondition, opts.zero_msg);
    });
}

std::pair<std::size_t, std::size_t> oriented(const graphs::Graph& g,
                                             std::size_t e) {
    auto [v, w] = g.edges[e];
    if (!g.before(v, w)) std::swap(v, w);
    return {v, w};
}

std::vector<std::size_t> vertex_assignment_order(const graphs::Graph& g) {
    std::vector<std::size_t> verts(g.n);
    for (std::size_t v = 0; v < g.n; ++v) verts[v] = v;
    std::sort(verts.begin(), verts.end(), [&](std::size_t a, std::size_t b) {
        return g.vertex_order[a] < g.vertex_order[b];
    });
    return verts;
}

void check_var_budget(std::size_t total) {
    if (total > 62)
        throw BudgetError("constraint enumeration needs at most 62 labels");
}

// Shared core of the homogeneous constructions: `copies` label groups per
// edge, each with one dependent and l-3 free labels.
struct HomSystem {
    Ctx ctx;
    std::vector<VarId> xvar;
    // [edge][copy][0] dependent, then free labels
    std::vector<std::vector<std::vector<VarId>>> evar;
    std::vector<VarId> all_vars;
};

HomSystem make_hom_system(const eqmodel::StandardForm& sf,
                          const graphs::Graph& g, std::size_t copies,
                          bool allow_special) {
    const std::size_t l = sf.arity();
    HomSystem hs;
    Ctx& c = hs.ctx;
    check_var_budget(g.n + copies * g.m() * (l - 2));

    hs.xvar.resize(g.n);
    VarId next = 0;
    for (std::size_t v = 0; v < g.n; ++v) {
        hs.xvar[v] = next++;
        c.sys.names[hs.xvar[v]] = "x" + std::to_string(v);
        hs.all_vars.push_back(hs.xvar[v]);
    }
    // copy -> (edge, copy index), for the special-case support test
    std::map<VarId, std::pair<std::size_t, std::size_t>> group_of;
    hs.evar.resize(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) {
        hs.evar[e].resize(copies);
        for (std::size_t j = 0; j < copies; ++j) {
            auto& grp = hs.evar[e][j];
            grp.resize(l - 2);
            for (std::size_t i = 0; i < l - 2; ++i) {
                grp[i] = next++;
                std::string nm = "y" + std::to_string(e) + "_" + std::to_string(i);
                if (copies > 1) nm += "_" + std::to_string(j);
                c.sys.names[grp[i]] = nm;
                hs.all_vars.push_back(grp[i]);
                group_of[grp[i]] = {e, j};
            }
        }
    }

    for (std::size_t v : vertex_assignment_order(g))
        c.sys.variables.push_back(hs.xvar[v]);
    for (std::size_t e = 0; e < g.m(); ++e)
        for (std::size_t j = 0; j < copies; ++j)
            for (std::size_t i = 1; i < l - 2; ++i)
                c.sys.variables.push_back(hs.evar[e][j][i]);

    for (std::size_t e = 0; e < g.m(); ++e) {
        auto [v, w] = oriented(g, e);
        for (std::size_t j = 0; j < copies; ++j) {
            const auto& grp = hs.evar[e][j];
            LinearForm body;
            body.add(hs.xvar[v], make_rat(sf.a1, sf.b0));
            body.add(hs.xvar[w], make_rat(sf.a2, sf.b0));
            for (std::size_t i = 0; i < sf.b.size(); ++i)
                body.add(grp[i + 1], make_rat(sf.b[i], sf.b0));
            c.sys.substitutions[grp[0]] = body;

            std::uint64_t mask = var_bit(hs.xvar[v]) | var_bit(hs.xvar[w]);
            for (VarId y : grp) mask |= var_bit(y);
            c.edge_masks.push_back(mask);
        }
    }

    Schedule block;
    block.kind = Schedule::Kind::Block;
    block.base = sf.b0;
    for (VarId v : c.sys.variables) c.sys.schedules[v] = block;

    c.allow_special = allow_special;
    if (allow_special) {
        c.is_special_support = [group_of](std::uint64_t support) {
            std::set<std::pair<std::size_t, std::size_t>> groups;
            std::size_t count = 0;
            for (VarId v = 0; v < 62; ++v) {
                if (!(support & (std::uint64_t(1) << v))) continue;
                ++count;
                auto it = group_of.find(v);
                if (it == group_of.end()) return false;  // a vertex label
                groups.insert(it->second);
            }
            if (count != 4 || groups.size() != 2) return false;
            auto a = *groups.begin(), b = *std::next(groups.begin());
            return a.first == b.first && a.second != b.second;
        };
    }

    // distinctness of every pair of labels
    for (std::size_t i = 0; i < hs.all_vars.size(); ++i)
        for (std::size_t j = i + 1; j < hs.all_vars.size(); ++j) {
            LinearForm diff = LinearForm::var(hs.all_vars[i]);
            diff.add(hs.all_vars[j], -1);
            add_constraint(c, diff, false, "label distinctness vanished");
        }

    std::vector<SeqItem> items;
    for (VarId v : hs.all_vars) items.push_back({true, v, Int(0)});
    SeqOpts opts;
    opts.skip_edge_sequences = true;
    opts.trivial_skip = true;
    opts.zero_msg = "non-edge combination reduced to zero";
    add_sequences(c, eqmodel::standard_coefficient_vector(sf), 0, items, opts);
    return hs;
}

void fill_hom_labels(GadgetSet& gs, const HomSystem& hs,
                     const std::map<VarId, Int>& values,
                     const graphs::Graph& g, std::size_t copies,
                     std::size_t l, bool use_copies) {
    gs.vertex_label.resize(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
        gs.vertex_label[v] = values.at(hs.xvar[v]);
    if (!use_copies) {
        gs.edge_labels.resize(g.m());
        for (std::size_t e = 0; e < g.m(); ++e)
            for (std::size_t i = 0; i < l - 2; ++i)
                gs.edge_labels[e].push_back(values.at(hs.evar[e][0][i]));
    } else {
        gs.edge_copy_labels.resize(g.m());
        for (std::size_t e = 0; e < g.m(); ++e) {
            gs.edge_copy_labels[e].resize(copies);
            for (std::size_t j = 0; j < copies; ++j)
                for (std::size_t i = 0; i < l - 2; ++i)
                    gs.edge_copy_labels[e][j].push_back(
                        values.at(hs.evar[e][j][i]));
        }
    }
}

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// Inhomogeneous core, shared by the decision and counting builders. The
// vertex parts are tied to the first three coefficients; every label carries
// a congruence that makes the dependent labels integral.
struct InhomSystem {
    Ctx ctx;
    std::vector<VarId> xvar;
    std::vector<std::vector<VarId>> evar;  // [edge][0] dependent, then free
    std::vector<std::size_t> part_of;      // 0-based part per vertex
    std::vector<std::size_t> dep_part;     // 0-based coefficient slot per edge
    Int modulus;
    Int bound{0};  // window mode only: max center + max(radius, R)
};

InhomSystem make_inhom_system(const eqmodel::LinearEquation& eq,
                              const graphs::Graph& g,
                              const graphs::VertexPartition& partition,
                              const std::vector<Int>& s_prime) {
    const std::size_t l = eq.arity();
    if (l < 3) throw PreconditionError("equation must have at least 3 terms");
    if (eq.homogeneous())
        throw PreconditionError("construction requires an inhomogeneous equation");

    InhomSystem is;
    Ctx& c = is.ctx;
    check_var_budget(g.n + g.m() * (l - 2));

    if (partition.parts.size() < 2 || partition.parts.size() > 3)
        throw PreconditionError("partition must have two or three parts");
    is.part_of.assign(g.n, 3);
    for (std::size_t p = 0; p < partition.parts.size(); ++p)
        for (std::size_t v : partition.parts[p]) {
            if (v >= g.n || is.part_of[v] != 3)
                throw PreconditionError("invalid vertex partition");
            is.part_of[v] = p;
        }
    for (std::size_t v = 0; v < g.n; ++v)
        if (is.part_of[v] == 3)
            throw PreconditionError("partition misses a vertex");
    for (auto [v, w] : g.edges)
        if (is.part_of[v] == is.part_of[w])
            throw PreconditionError("partition parts are not independent");

    // Bezout certificate for gcd(c_1..c_l)
    Int gcd = eq.coefficients[0];
    std::vector<Int> q(l, 0);
    q[0] = 1;
    for (std::size_t i = 1; i < l; ++i) {
        Int old_r = gcd, r = eq.coefficients[i];
        Int old_s = 1, s = 0;
        while (r != 0) {
            Int quot = old_r / r;
            Int tmp = old_r - quot * r;
            old_r = r;
            r = tmp;
            tmp = old_s - quot * s;
            old_s = s;
            s = tmp;
        }
        Int t = (old_r - old_s * gcd) / eq.coefficients[i];
        for (std::size_t j = 0; j < i; ++j) q[j] *= old_s;
        q[i] = t;
        gcd = old_r;
    }
    if (gcd < 0) {
        gcd = -gcd;
        for (auto& qi : q) qi = -qi;
    }
    if (eq.constant % gcd != 0)
        throw PreconditionError("gcd of coefficients must divide the constant");
    const Int k_prime = eq.constant / gcd;
    is.modulus =
        abs_int(eq.coefficients[0] * eq.coefficients[1] * eq.coefficients[2]);

    is.xvar.resize(g.n);
    VarId next = 0;
    for (std::size_t v = 0; v < g.n; ++v) {
        is.xvar[v] = next++;
        c.sys.names[is.xvar[v]] = "x" + std::to_string(v);
    }
    is.evar.resize(g.m());
    is.dep_part.resize(g.m());
    for (std::size_t e = 0; e < g.m(); ++e) {
        is.evar[e].resize(l - 2);
        for (std::size_t i = 0; i < l - 2; ++i) {
            is.evar[e][i] = next++;
            c.sys.names[is.evar[e][i]] =
                "y" + std::to_string(e) + "_" + std::to_string(i);
        }
        auto [v, w] = g.edges[e];
        is.dep_part[e] = 3 - is.part_of[v] - is.part_of[w];
    }

    for (std::size_t v : vertex_assignment_order(g))
        c.sys.variables.push_back(is.xvar[v]);
    for (std::size_t e = 0; e < g.m(); ++e)
        for (std::size_t i = 1; i < l - 2; ++i)
            c.sys.variables.push_back(is.evar[e][i]);

    std::vector<VarId> all_vars;
    for (std::size_t v = 0; v < g.n; ++v) all_vars.push_back(is.xvar[v]);
    for (std::size_t e = 0; e < g.m(); ++e)
        for (VarId y : is.evar[e]) all_vars.push_back(y);

    for (std::size_t e = 0; e < g.m(); ++e) {
        auto [v, w] = g.edges[e];
        const Int dep_c = eq.coefficients[is.dep_part[e]];
        LinearForm body;
        body.constant = make_rat(eq.constant, dep_c);
        body.add(is.xvar[v], -make_rat(eq.coefficients[is.part_of[v]], dep_c));
        body.add(is.xvar[w], -make_rat(eq.coefficients[is.part_of[w]], dep_c));
        for (std::size_t i = 3; i < l; ++i)
            body.add(is.evar[e][i - 2], -make_rat(eq.coefficients[i], dep_c));
        c.sys.substitutions[is.evar[e][0]] = body;

        std::uint64_t mask = var_bit(is.xvar[v]) | var_bit(is.xvar[w]);
        for (VarId y : is.evar[e]) mask |= var_bit(y);
        c.edge_masks.push_back(mask);
    }

    for (std::size_t i = 0; i < all_vars.size(); ++i) {
        for (std::size_t j = i + 1; j < all_vars.size(); ++j) {
            LinearForm diff = LinearForm::var(all_vars[i]);
            diff.add(all_vars[j], -1);
            add_constraint(c, diff, false, "label distinctness vanished");
        }
        for (const Int& s : s_prime) {
            LinearForm diff = LinearForm::var(all_vars[i]);
            diff.constant = -Rat(s);
            add_constraint(c, diff, true, "label collides with the fixed set");
        }
    }

    std::vector<SeqItem> items;
    for (VarId v : all_vars) items.push_back({true, v, Int(0)});
    for (const Int& s : s_prime) items.push_back({false, -1, s});
    SeqOpts opts;
    opts.skip_edge_sequences = true;
    opts.const_zero_msg = "the fixed set is not free for the equation";
    opts.zero_msg = "the fixed set forces a vanishing combination";
    opts.zero_is_precondition = true;
    add_sequences(c, eq.coefficients, eq.constant, items, opts);

    // congruences, keyed by the coefficient slot of each label
    auto slot_of_var = [&](VarId var) -> std::size_t {
        for (std::size_t v = 0; v < g.n; ++v)
            if (is.xvar[v] == var) return is.part_of[v];
        for (std::size_t e = 0; e < g.m(); ++e)
            for (std::size_t i = 0; i < l - 2; ++i)
                if (is.evar[e][i] == var) return i == 0 ? is.dep_part[e] : i + 2;
        throw InternalInvariantError("unknown variable");
    };
    for (VarId v : c.sys.variables) {
        Congruence cong;
        cong.modulus = is.modulus;
        cong.residue = k_prime * q[slot_of_var(v)];
        c.sys.congruences[v] = cong;
    }

    bool positive = false, negative = false;
    for (const Int& ci : eq.coefficients) (ci > 0 ? positive : negative) = true;
    const Int m_forms = Int(c.sys.nonzero_forms.size());
    if (positive && negative) {
        // window placement around an all-positive rational solution
        const Int radius = (m_forms + 1) * is.modulus / 2 + 1;
        Int sum_abs = 0, min_abs = abs_int(eq.coefficients[0]);
        for (const Int& ci : eq.coefficients) {
            sum_abs += abs_int(ci);
            min_abs = std::min(min_abs, abs_int(ci));
        }
        const Int big_r =
            ceil_rat(Rat(abs_int(eq.constant) + radius * sum_abs, min_abs));
        const Int t_floor = big_r + 1;
        std::size_t slot_i = 0, slot_j = 0;
        for (std::size_t i = 0; i < l; ++i) {
            if (eq.coefficients[i] < eq.coefficients[slot_i]) slot_i = i;
            if (eq.coefficients[i] > eq.coefficients[slot_j]) slot_j = i;
        }
        std::vector<Rat> centers(l);
        Int n_sum = 0;
        for (std::size_t i = 0; i < l; ++i) {
            if (i == slot_i || i == slot_j) continue;
            centers[i] = t_floor + Int(i);
            n_sum += eq.coefficients[i] * (t_floor + Int(i));
        }
        Int m_i = ceil_rat(Rat(t_floor * eq.coefficients[slot_j] -
                                   eq.constant + n_sum,
                               -eq.coefficients[slot_i]));
        m_i = std::max(m_i, t_floor);
        centers[slot_i] = m_i;
        centers[slot_j] = make_rat(
            eq.constant - n_sum - eq.coefficients[slot_i] * m_i,
            eq.coefficients[slot_j]);
        if (centers[slot_j] < Rat(t_floor))
            throw InternalInvariantError("window placement failed");
        for (VarId v : c.sys.variables) {
            Schedule sch;
            sch.kind = Schedule::Kind::Window;
            sch.center = centers[slot_of_var(v)];
            sch.radius = radius;
            c.sys.schedules[v] = sch;
        }
        Rat top = centers[0];
        for (const Rat& m : centers) top = std::max(top, m);
        is.bound = ceil_rat(top) + std::max(radius, big_r);
    } else {
        for (VarId v : c.sys.variables) {
            Schedule sch;
            sch.kind = Schedule::Kind::Ascend;
            c.sys.schedules[v] = sch;
        }
    }
    return is;
}

}  // namespace

std::vector<Int> GadgetSet::base_elements() const {
    std::vector<Int> out = vertex_label;
    for (const auto& ls : edge_labels) out.insert(out.end(), ls.begin(), ls.end());
    for (const auto& copies : edge_copy_labels)
        for (const auto& ls : copies) out.insert(out.end(), ls.begin(), ls.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> GadgetSet::elements() const {
    std::vector<Int> out = base_elements();
    for (const auto& us : u_labels)
        for (const auto& [a, b] : us) {
            out.push_back(a);
            out.push_back(b);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Int, Role>> GadgetSet::roles() const {
    std::vector<std::pair<Int, Role>> out;
    for (std::size_t v = 0; v < vertex_label.size(); ++v)
        out.push_back({vertex_label[v], {Role::Kind::Vertex, v, 0, 0, 0, 0}});
    for (std::size_t e = 0; e < edge_labels.size(); ++e)
        for (std::size_t i = 0; i < edge_labels[e].size(); ++i)
            out.push_back({edge_labels[e][i], {Role::Kind::EdgeLabel, 0, e, i, 0, 0}});
    for (std::size_t e = 0; e < edge_copy_labels.size(); ++e)
        for (std::size_t j = 0; j < edge_copy_labels[e].size(); ++j)
            for (std::size_t i = 0; i < edge_copy_labels[e][j].size(); ++i)
                out.push_back({edge_copy_labels[e][j][i],
                               {Role::Kind::EdgeLabelCopy, 0, e, i, j, 0}});
    for (std::size_t e = 0; e < u_labels.size(); ++e)
        for (std::size_t i = 0; i < u_labels[e].size(); ++i) {
            out.push_back({u_labels[e][i].first,
                           {Role::Kind::ULabel, source.edges[e].first, e, i, 0, 0}});
            out.push_back({u_labels[e][i].second,
                           {Role::Kind::ULabel, source.edges[e].second, e, i, 1, 0}});
        }
    return out;
}

std::vector<std::vector<Int>> GadgetSet::expected_supports() const {
    std::vector<std::vector<Int>> out;
    auto push = [&](std::vector<Int> s) {
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
    };
    for (std::size_t e = 0; e < source.m(); ++e) {
        auto [v, w] = source.edges[e];
        if (!edge_labels.empty()) {
            std::vector<Int> s = {vertex_label[v], vertex_label[w]};
            s.insert(s.end(), edge_labels[e].begin(), edge_labels[e].end());
            push(s);
        }
        if (!edge_copy_labels.empty())
            for (const auto& copy : edge_copy_labels[e]) {
                std::vector<Int> s = {vertex_label[v], vertex_label[w]};
                s.insert(s.end(), copy.begin(), copy.end());
                push(s);
            }
        if (!u_labels.empty())
            for (const auto& [u1, u2] : u_labels[e]) {
                std::vector<Int> s = {u1, u2};
                s.insert(s.end(), edge_labels[e].begin(), edge_labels[e].end());
                push(s);
            }
        if (special_case && !edge_copy_labels.empty()) {
            const auto& copies = edge_copy_labels[e];
            for (std::size_t j = 0; j < copies.size(); ++j)
                for (std::size_t j2 = j + 1; j2 < copies.size(); ++j2) {
                    std::vector<Int> s = copies[j];
                    s.insert(s.end(), copies[j2].begin(), copies[j2].end());
                    push(s);
                }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GadgetSet build_homogeneous(const eqmodel::StandardForm& sf,
                            const eqmodel::LinearEquation& eq,
                            const graphs::Graph& g) {
    const std::size_t l = sf.arity();
    HomSystem hs = make_hom_system(sf, g, 1, false);
    auto values = labeler::assign_greedy(hs.ctx.sys);

    GadgetSet gs;
    gs.equation = eq;
    gs.standard = sf;
    gs.source = g;
    fill_hom_labels(gs, hs, values, g, 1, l, false);
    const Int m_forms = Int(hs.ctx.sys.nonzero_forms.size());
    gs.params["forms"] = m_forms;
    gs.params["bound"] =
        Int(g.n + (l - 2) * g.m()) * (m_forms + 1) * abs_int(sf.b0);
    return gs;
}

GadgetSet build_homogeneous_sef(const eqmodel::StandardForm& sf,
                                const eqmodel::LinearEquation& eq,
                                const graphs::Graph& g) {
    const std::size_t l = sf.arity();
    HomSystem hs = make_hom_system(sf, g, 1, false);

    // additionally forbid solutions to every proper sub-equation
    eqmodel::LinearEquation std_eq;
    std_eq.coefficients = eqmodel::standard_coefficient_vector(sf);
    std::set<std::vector<Int>> seen_subs;
    std::vector<SeqItem> items;
    for (VarId v : hs.all_vars) items.push_back({true, v, Int(0)});
    for (const auto& sub : eqmodel::sub_equations(std_eq)) {
        std::vector<Int> coeffs = sub.equation.coefficients;
        std::sort(coeffs.begin(), coeffs.end());
        if (!seen_subs.insert(coeffs).second) continue;
        SeqOpts opts;
        opts.trivial_skip = true;
        opts.zero_msg = "sub-equation combination reduced to zero";
        add_sequences(hs.ctx, coeffs, 0, items, opts);
    }

    auto values = labeler::assign_greedy(hs.ctx.sys);
    GadgetSet gs;
    gs.equation = eq;
    gs.standard = sf;
    gs.source = g;
    fill_hom_labels(gs, hs, values, g, 1, l, false);
    const Int m_forms = Int(hs.ctx.sys.nonzero_forms.size());
    gs.params["forms"] = m_forms;
    gs.params["bound"] =
        Int(g.n + (l - 2) * g.m()) * (m_forms + 1) * abs_int(sf.b0);
    return gs;
}

GadgetSet build_inhomogeneous(const eqmodel::LinearEquation& eq,
                              const graphs::Graph& g,
                              const graphs::VertexPartition& partition,
                              const std::vector<Int>& s_prime) {
    const std::size_t l = eq.arity();
    InhomSystem is = make_inhom_system(eq, g, partition, s_prime);
    auto values = labeler::assign_greedy(is.ctx.sys);

    GadgetSet gs;
    gs.equation = eq;
    gs.source = g;
    gs.partition = partition;
    gs.vertex_label.resize(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
        gs.vertex_label[v] = values.at(is.xvar[v]);
    gs.edge_labels.resize(g.m());
    for (std::size_t e = 0; e < g.m(); ++e)
        for (std::size_t i = 0; i < l - 2; ++i)
            gs.edge_labels[e].push_back(values.at(is.evar[e][i]));
    gs.params["forms"] = Int(is.ctx.sys.nonzero_forms.size());
    gs.params["modulus"] = is.modulus;
    if (is.bound != 0) gs.params["bound"] = is.bound;
    return gs;
}

namespace {

// Greedy multipliers for the three-term counting construction: the signed
// pair {a2*nu, -a1*nu} may only create solutions inside itself (plus zero).
std::vector<Int> choose_l3_multipliers(const Int& a1, const Int& a2,
                                       const Int& b0, std::size_t count,
                                       const Int& cap) {
    std::vector<Int> chosen;
    std::set<Int> ground = {Int(0)};
    const Int coeffs[3] = {a1, a2, -b0};
    for (std::size_t k = 0; k < count; ++k) {
        bool accepted = false;
        for (Int nu = 1; nu <= cap && !accepted; ++nu) {
            const Int p = a2 * nu, q = -a1 * nu;
            if (p == 0 || q == 0 || p == q || ground.count(p) || ground.count(q))
                continue;
            auto allowed = [&](const Int& z) { return z == 0 || z == p || z == q; };
            bool ok = true;
            for (const Int& x : {p, q}) {
                for (int tpos = 0; tpos < 3 && ok; ++tpos)
                    for (int fpos = 0; fpos < 3 && ok; ++fpos) {
                        if (fpos == tpos) continue;
                        const int rpos = 3 - tpos - fpos;
                        auto scan = [&](const Int& s) {
                            const Int val = -(coeffs[tpos] * x + coeffs[fpos] * s);
                            if (val % coeffs[rpos] != 0) return;
                            const Int z = val / coeffs[rpos];
                            if (z != p && z != q && !ground.count(z)) return;
                            if (!(allowed(x) && allowed(s) && allowed(z)))
                                ok = false;
                        };
                        for (const Int& s : ground) {
                            scan(s);
                            if (!ok) break;
                        }
                        if (ok) scan(p);
                        if (ok) scan(q);
                    }
            }
            if (!ok) continue;
            ground.insert(p);
            ground.insert(q);
            chosen.push_back(nu);
            accepted = true;
        }
        if (!accepted)
            throw InternalInvariantError("multiplier scan exceeded its bound");
    }
    return chosen;
}

}  // namespace

GadgetSet build_counting_l3(const eqmodel::StandardForm& sf,
                            const eqmodel::LinearEquation& eq,
                            const graphs::Graph& g, std::size_t r) {
    if (sf.arity() != 3)
        throw PreconditionError("three-term construction needs arity 3");
    GadgetSet gs = build_homogeneous(sf, eq, g);

    const Int cap = 40 * Int(r * g.m() + 1) * Int(r * g.m() + 1) + 1;
    auto mult = choose_l3_multipliers(sf.a1, sf.a2, sf.b0, r * g.m(), cap);
    Int nprime = 0;
    for (const Int& v : mult) nprime = std::max(nprime, v);
    Int c = 0;
    for (const Int& ci : eq.coefficients) c = std::max(c, abs_int(ci));
    const Int scale = 3 * c * c * nprime + 1;

    for (auto& x : gs.vertex_label) x *= scale;
    for (auto& ls : gs.edge_labels)
        for (auto& y : ls) y *= scale;
    gs.u_labels.resize(g.m());
    std::size_t idx = 0;
    for (std::size_t e = 0; e < g.m(); ++e) {
        auto [v, w] = oriented(g, e);
        for (std::size_t i = 0; i < r; ++i, ++idx) {
            const Int uv = gs.vertex_label[v] + mult[idx] * sf.a2;
            const Int uw = gs.vertex_label[w] - mult[idx] * sf.a1;
            // stored against the sorted endpoint pair
            if (v == gs.source.edges[e].first)
                gs.u_labels[e].push_back({uv, uw});
            else
                gs.u_labels[e].push_back({uw, uv});
        }
    }
    gs.params["r"] = Int(r);
    gs.params["scale"] = scale;
    gs.params["multiplier_max"] = nprime;
    gs.params["multiplier_bound"] = cap;
    if (gs.params.count("bound"))
        gs.params["bound"] = gs.params["bound"] * scale +
                             nprime * std::max(abs_int(sf.a1), abs_int(sf.a2));
    return gs;
}

GadgetSet build_counting_l4(const eqmodel::StandardForm& sf,
                            const eqmodel::LinearEquation& eq,
                            const graphs::Graph& g, std::size_t r) {
    const std::size_t l = sf.arity();
    if (l < 4) throw PreconditionError("amplified construction needs arity >= 4");
    const bool special =
        l == 4 && sf.a1 == -sf.b0 && sf.a2 == sf.b0 && sf.b[0] == sf.b0;
    HomSystem hs = make_hom_system(sf, g, r, special);
    auto values = labeler::assign_greedy(hs.ctx.sys);

    GadgetSet gs;
    gs.equation = eq;
    gs.standard = sf;
    gs.source = g;
    gs.special_case = special && r > 0;
    fill_hom_labels(gs, hs, values, g, r, l, true);
    const Int m_forms = Int(hs.ctx.sys.nonzero_forms.size());
    gs.params["forms"] = m_forms;
    gs.params["r"] = Int(r);
    gs.params["bound"] =
        Int(g.n + (l - 2) * r * g.m()) * (m_forms + 1) * abs_int(sf.b0);
    return gs;
}

GadgetSet build_counting_inhom(const eqmodel::LinearEquation& eq,
                               const graphs::Graph& g,
                               const graphs::VertexPartition& bipartition,
                               std::size_t r) {
    const std::size_t l = eq.arity();
    bool positive = false, negative = false;
    for (const Int& ci : eq.coefficients) (ci > 0 ? positive : negative) = true;

    // arrange a positive coefficient first and a negative one second
    eqmodel::LinearEquation arranged = eq;
    if (positive && negative) {
        std::size_t p1 = l, n1 = l;
        for (std::size_t i = 0; i < l; ++i) {
            if (p1 == l && eq.coefficients[i] > 0) p1 = i;
            if (n1 == l && eq.coefficients[i] < 0) n1 = i;
        }
        arranged.coefficients.clear();
        arranged.coefficients.push_back(eq.coefficients[p1]);
        arranged.coefficients.push_back(eq.coefficients[n1]);
        for (std::size_t i = 0; i < l; ++i)
            if (i != p1 && i != n1)
                arranged.coefficients.push_back(eq.coefficients[i]);
    }

    graphs::VertexPartition parts3 = bipartition;
    if (parts3.parts.size() == 2) parts3.parts.push_back({});
    if (parts3.parts.size() != 3 || !parts3.parts[2].empty())
        throw PreconditionError("a bipartition is required");

    GadgetSet gs = build_inhomogeneous(arranged, g, parts3, {});
    gs.partition = bipartition;

    std::vector<std::size_t> part_of(g.n, 2);
    for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t v : bipartition.parts[p]) part_of[v] = p;

    Int c = 0, maxa = 0;
    for (const Int& ci : arranged.coefficients) c = std::max(c, abs_int(ci));
    for (const Int& a : gs.elements()) maxa = std::max(maxa, abs_int(a));
    const Int big_n = 2 * Int(l) * c * maxa + 1;

    // pairwise multiplier constraints: c_{j1} c_1 nu != c_{j2} c_2 mu
    const Int range = 2 * Int(g.m()) * Int(r) * Int(l) * Int(l);
    std::vector<Int> mult;
    for (std::size_t k = 0; k < r * g.m(); ++k) {
        bool accepted = false;
        for (Int nu = 1; nu <= range && !accepted; ++nu) {
            bool ok = true;
            for (const Int& mu : mult) {
                if (nu == mu) {
                    ok = false;
                    break;
                }
                for (std::size_t j1 = 0; j1 < l && ok; ++j1)
                    for (std::size_t j2 = 0; j2 < l && ok; ++j2) {
                        if (j1 == j2) continue;
                        const Int lhs =
                            arranged.coefficients[j1] * arranged.coefficients[0];
                        const Int rhs =
                            arranged.coefficients[j2] * arranged.coefficients[1];
                        if (lhs * nu == rhs * mu || lhs * mu == rhs * nu)
                            ok = false;
                    }
                if (!ok) break;
            }
            if (!ok) continue;
            mult.push_back(nu);
            accepted = true;
        }
        if (!accepted)
            throw InternalInvariantError("multiplier range exhausted");
    }

    gs.u_labels.resize(g.m());
    std::size_t idx = 0;
    for (std::size_t e = 0; e < g.m(); ++e) {
        auto [a, b] = g.edges[e];
        const std::size_t v = part_of[a] == 0 ? a : b;  // endpoint tied to c_1
        const std::size_t w = part_of[a] == 0 ? b : a;
        for (std::size_t i = 0; i < r; ++i, ++idx) {
            const Int uv =
                gs.vertex_label[v] - big_n * mult[idx] * arranged.coefficients[1];
            const Int uw =
                gs.vertex_label[w] + big_n * mult[idx] * arranged.coefficients[0];
            if (v == a)
                gs.u_labels[e].push_back({uv, uw});
            else
                gs.u_labels[e].push_back({uw, uv});
        }
    }
    gs.params["r"] = Int(r);
    gs.params["offset_scale"] = big_n;
    gs.params["multiplier_range"] = range;
    if (gs.params.count("bound"))
        gs.params["bound"] = gs.params["bound"] + big_n * range * c;
    return gs;
}

Int shift_to_sef(const eqmodel::LinearEquation& eq, const std::vector<Int>& s,
                 const std::vector<Int>& extra_excluded) {
    auto profile = eqmodel::classify(eq);
    if (!profile.homogeneous || !profile.translation_invariant)
        throw PreconditionError(
            "shift requires a homogeneous translation-invariant equation");
    if (!oracle::is_free(eq, s))
        throw PreconditionError("the set to shift must be free");
    const std::size_t l = eq.arity();

    std::set<Int> forbidden(extra_excluded.begin(), extra_excluded.end());
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << l); ++mask) {
        std::vector<Int> coeffs;
        for (std::size_t i = 0; i < l; ++i)
            if (mask & (std::uint64_t(1) << i))
                coeffs.push_back(eq.coefficients[i]);
        Int csum = 0;
        for (const Int& ci : coeffs) csum += ci;
        if (csum == 0) continue;
        // alpha = -(sum c_q s_q)/(sum c_q) over all S-tuples
        std::vector<bool> same(coeffs.size(), false);
        for (std::size_t i = 1; i < coeffs.size(); ++i)
            same[i] = coeffs[i] == coeffs[i - 1];
        odometer(same, s.size(), [&](const std::vector<std::size_t>& idx) {
            Int dot = 0;
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                dot += coeffs[i] * s[idx[i]];
            if (dot % csum != 0) return;
            forbidden.insert(-dot / csum);
        });
    }
    Int alpha = 1;
    while (forbidden.count(alpha)) ++alpha;

    std::vector<Int> shifted;
    for (const Int& x : s) shifted.push_back(x + alpha);
    if (!oracle::is_subequation_free(eq, shifted))
        throw InternalInvariantError("shifted set is not sub-equation-free");
    return alpha;
}

ExtendResult extend(const eqmodel::LinearEquation& eq, const std::vector<Int>& a_in,
                    const std::vector<Int>& s_in, const std::vector<Int>& s_prime_in,
                    std::size_t r, std::size_t t, const oracle::Budget& budget) {
    auto dedupe = [](std::vector<Int> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    const std::vector<Int> a = dedupe(a_in), s = dedupe(s_in),
                           s_prime = dedupe(s_prime_in);
    const std::size_t l = eq.arity();
    const Int k = eq.constant;
    Int csum = 0;
    for (const Int& ci : eq.coefficients) csum += ci;

    {
        std::set<Int> in_s(s.begin(), s.end());
        for (const Int& x : s_prime)
            if (!in_s.count(x))
                throw PreconditionError("the kept subset must lie inside S");
        // no element of S may be a forbidden singleton solution
        for (const Int& x : s)
            if (csum != 0 && csum * x == k)
                throw PreconditionError("S meets the singleton solution set");
        if (!oracle::is_free(eq, s_prime, budget))
            throw PreconditionError("the kept subset is not free");
        if (k == 0 && csum == 0) {
            for (const Int& x : s)
                if (x == 0) throw PreconditionError("S must avoid zero");
            if (!oracle::is_subequation_free(eq, s_prime, budget))
                throw PreconditionError("the kept subset is not sub-equation-free");
        }
        if (k == 0 && !oracle::is_proper_subequation_free(eq, a, budget))
            throw PreconditionError("A is not proper-sub-equation-free");
    }

    ConstraintSystem sys;
    std::vector<VarId> dvar(r), uvar(t);
    for (std::size_t i = 0; i < r; ++i) {
        dvar[i] = VarId(i);
        sys.variables.push_back(dvar[i]);
        sys.names[dvar[i]] = "d" + std::to_string(i);
    }
    for (std::size_t i = 0; i < t; ++i) {
        uvar[i] = VarId(r + i);
        sys.variables.push_back(uvar[i]);
        sys.names[uvar[i]] = "u" + std::to_string(i);
    }
    for (VarId v : sys.variables) {
        Schedule sch;
        sch.kind = Schedule::Kind::Ascend;
        sch.center = 1;
        sys.schedules[v] = sch;
    }

    // the solution-preserving copy maps, one shape per equation class
    auto image_form = [&](std::size_t i, const Int& sv) {
        LinearForm f;
        if (k == 0) {
            f.add(dvar[i], sv);
        } else if (csum == 0) {
            f.add(dvar[i], 1);
            f.constant = sv;
        } else {
            f.add(dvar[i], sv * csum - k);
            f.constant = sv;
        }
        return f;
    };

    struct Item {
        LinearForm form;
        int symbol;  // items with equal symbols share their value by design
        bool from_a;
    };
    std::vector<Item> type1;
    int sym = 0;
    for (const Int& x : a) type1.push_back({LinearForm::value(x), sym++, true});
    std::vector<std::size_t> s_prime_at;  // indices into type1
    std::set<Int> prime_set(s_prime.begin(), s_prime.end());
    for (std::size_t i = 0; i < r; ++i)
        for (const Int& sv : s) {
            if (prime_set.count(sv)) s_prime_at.push_back(type1.size());
            type1.push_back({image_form(i, sv), sym++, false});
        }
    for (std::size_t i = 0; i < t; ++i)
        type1.push_back({LinearForm::var(uvar[i]), sym++, false});

    auto add = [&](const LinearForm& original, const std::string& msg) {
        LinearForm red = labeler::reduce_form(original, sys.substitutions);
        if (red.terms.empty()) {
            if (red.constant == 0) throw PreconditionError(msg);
            return;
        }
        labeler::add_form(sys, red, original);
    };

    for (std::size_t i = 0; i < type1.size(); ++i)
        for (std::size_t j = i + 1; j < type1.size(); ++j) {
            if (type1[i].from_a && type1[j].from_a) continue;
            LinearForm diff = type1[i].form;
            diff.add(type1[j].form, -1);
            add(diff, "extension elements cannot be kept distinct");
        }

    // sequences over A, the kept copies and the padding
    std::vector<const Item*> type2;
    for (const Item& it : type1)
        if (it.from_a) type2.push_back(&it);
    for (std::size_t at : s_prime_at) type2.push_back(&type1[at]);
    for (std::size_t i = 0; i < t; ++i)
        type2.push_back(&type1[a.size() + r * s.size() + i]);

    std::vector<bool> same(l, false);
    for (std::size_t i = 1; i < l; ++i)
        same[i] = eq.coefficients[i] == eq.coefficients[i - 1];
    std::map<int, Int> symbol_sum;
    odometer(same, type2.size(), [&](const std::vector<std::size_t>& idx) {
        bool any_new = false;
        for (std::size_t i = 0; i < l; ++i)
            if (!type2[idx[i]]->from_a) any_new = true;
        if (!any_new) return;
        if (k == 0) {
            symbol_sum.clear();
            for (std::size_t i = 0; i < l; ++i)
                symbol_sum[type2[idx[i]]->symbol] += eq.coefficients[i];
            bool trivial = true;
            for (const auto& [s_, c_] : symbol_sum)
                if (c_ != 0) trivial = false;
            if (trivial) return;
        }
        LinearForm comb;
        comb.constant = -k;
        for (std::size_t i = 0; i < l; ++i)
            comb.add(type2[idx[i]]->form, eq.coefficients[i]);
        add(comb, "extension admits an unavoidable solution");
    });

    auto values = labeler::assign_greedy(sys);

    ExtendResult res;
    for (std::size_t i = 0; i < r; ++i) res.multipliers.push_back(values.at(dvar[i]));
    for (std::size_t i = 0; i < t; ++i) res.pad.push_back(values.at(uvar[i]));
    res.images.resize(r);
    res.prime_images.resize(r);
    for (std::size_t i = 0; i < r; ++i)
        for (const Int& sv : s) {
            Rat img = image_form(i, sv).evaluate(values);
            res.images[i].push_back(num(img));
            if (prime_set.count(sv)) res.prime_images[i].push_back(num(img));
        }
    res.b = a;
    for (const auto& img : res.images)
        res.b.insert(res.b.end(), img.begin(), img.end());
    res.b.insert(res.b.end(), res.pad.begin(), res.pad.end());
    std::sort(res.b.begin(), res.b.end());
    if (std::adjacent_find(res.b.begin(), res.b.end()) != res.b.end())
        throw InternalInvariantError("extension produced duplicate elements");

    // the kept part must add no solutions beyond those already in A
    std::vector<Int> kept = a;
    for (const auto& img : res.prime_images)
        kept.insert(kept.end(), img.begin(), img.end());
    kept.insert(kept.end(), res.pad.begin(), res.pad.end());
    std::sort(kept.begin(), kept.end());
    std::set<Int> a_set(a.begin(), a.end());
    for (const auto& rec : oracle::enumerate_nontrivial_solutions(eq, kept, budget))
        for (const Int& v : rec.support)
            if (!a_set.count(v))
                throw InternalInvariantError("extension leaked a solution");
    return res;
}

bool VerificationReport::all_pass() const {
    for (const auto& [name, ok] : conditions)
        if (!ok) return false;
    return true;
}

VerificationReport verify(const GadgetSet& gs, GadgetKind kind,
                          const oracle::Budget& budget,
                          const std::vector<Int>& s_prime) {
    VerificationReport rep;
    auto push = [&](const std::string& name, bool ok) {
        rep.conditions.push_back({name, ok});
    };
    const std::size_t l = gs.equation.arity();
    const std::size_t n = gs.source.n, m = gs.source.m();
    auto elems = gs.elements();

    std::size_t expect_size = 0;
    std::size_t r = 0;
    auto rit = gs.params.find("r");
    if (rit != gs.params.end()) r = std::size_t(rit->second);
    switch (kind) {
        case GadgetKind::Hom:
        case GadgetKind::HomSef:
        case GadgetKind::Inhom:
            expect_size = n + (l - 2) * m;
            break;
        case GadgetKind::Count3:
            expect_size = n + (1 + 2 * r) * m;
            break;
        case GadgetKind::Count4:
            expect_size = n + (l - 2) * r * m;
            break;
        case GadgetKind::CountInhom:
            expect_size = n + (l - 2 + 2 * r) * m;
            break;
    }
    bool distinct =
        std::adjacent_find(elems.begin(), elems.end()) == elems.end();
    push("distinct-labels", distinct);
    push("size", elems.size() == expect_size);

    // every expected support really is realised by a solution, and nothing
    // else appears
    auto expected = gs.expected_supports();
    std::set<std::vector<Int>> expected_set(expected.begin(), expected.end());
    std::set<std::vector<Int>> found;
    for (const auto& rec :
         oracle::enumerate_nontrivial_solutions(gs.equation, elems, budget))
        found.insert(rec.support);
    push("edge-solutions-present",
         std::all_of(expected.begin(), expected.end(),
                     [&](const auto& s) { return found.count(s) != 0; }));
    push("no-extra-solutions",
         std::all_of(found.begin(), found.end(),
                     [&](const auto& s) { return expected_set.count(s) != 0; }));

    bool positive = false, negative = false;
    for (const Int& ci : gs.equation.coefficients)
        (ci > 0 ? positive : negative) = true;
    if (positive && negative) {
        bool all_pos = std::all_of(elems.begin(), elems.end(),
                                   [](const Int& x) { return x > 0; });
        push("positive", all_pos);
    } else {
        push("positive", true);  // no sign requirement for one-signed equations
    }

    auto bit = gs.params.find("bound");
    if (bit != gs.params.end()) {
        bool ok = std::all_of(elems.begin(), elems.end(), [&](const Int& x) {
            return abs_int(x) <= bit->second;
        });
        push("magnitude", ok);
    }
    if (kind == GadgetKind::Count3) {
        auto nb = gs.params.find("multiplier_bound");
        auto nm = gs.params.find("multiplier_max");
        push("multiplier-magnitude", nb != gs.params.end() &&
                                         nm != gs.params.end() &&
                                         nm->second <= nb->second);
    }

    if (kind == GadgetKind::HomSef)
        push("proper-sub-equation-free",
             oracle::is_proper_subequation_free(gs.equation, elems, budget));
    if (kind == GadgetKind::Inhom && !s_prime.empty()) {
        std::vector<Int> joint = elems;
        joint.insert(joint.end(), s_prime.begin(), s_prime.end());
        std::sort(joint.begin(), joint.end());
        joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
        bool ok = true;
        for (const auto& rec :
             oracle::enumerate_nontrivial_solutions(gs.equation, joint, budget))
            if (!expected_set.count(rec.support)) ok = false;
        push("fixed-set-compatible", ok);
    }
    return rep;
}

std::string to_json(const GadgetSet& gs, bool pretty) {
    nlohmann::json j;
    j["equation"]["coefficients"] = int_array_json(gs.equation.coefficients);
    j["equation"]["constant"] = int_json(gs.equation.constant);
    j["graph"] = nlohmann::json::parse(graphs::to_json(gs.source));
    j["vertex_labels"] = int_array_json(gs.vertex_label);
    if (!gs.edge_labels.empty()) {
        j["edge_labels"] = nlohmann::json::array();
        for (const auto& ls : gs.edge_labels)
            j["edge_labels"].push_back(int_array_json(ls));
    }
    if (!gs.edge_copy_labels.empty()) {
        j["edge_copy_labels"] = nlohmann::json::array();
        for (const auto& copies : gs.edge_copy_labels) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& ls : copies) row.push_back(int_array_json(ls));
            j["edge_copy_labels"].push_back(row);
        }
    }
    if (!gs.u_labels.empty()) {
        j["u_labels"] = nlohmann::json::array();
        for (const auto& us : gs.u_labels) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& [x, y] : us)
                row.push_back({int_json(x), int_json(y)});
            j["u_labels"].push_back(row);
        }
    }
    j["elements"] = int_array_json(gs.elements());
    for (const auto& [key, val] : gs.params) j["params"][key] = int_json(val);
    if (gs.special_case) j["special_case"] = true;
    return pretty ? j.dump(2) : j.dump();
}

}  // namespace lfree::gadgets
