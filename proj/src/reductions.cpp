#include "lfree/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lfree::reductions {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// z_t = number of vertex subsets spanning exactly m - t edges
std::vector<Int> edge_count_layers(const graphs::Graph& g) {
    if (g.n > 25) throw BudgetError("vertex subset enumeration limited to 25");
    std::vector<Int> z(g.m() + 1, 0);
    for (std::uint64_t w = 0; w < (std::uint64_t(1) << g.n); ++w) {
        std::size_t inside = 0;
        for (auto [v, u] : g.edges)
            if ((w >> v & 1) && (w >> u & 1)) ++inside;
        z[g.m() - inside] += 1;
    }
    return z;
}

std::size_t smallest_power_exceeding(const Int& num, const Int& den,
                                     const Int& target) {
    // smallest r >= 1 with (num/den)^r > target, by exact comparison
    Int n_pow = 1, d_pow = 1;
    for (std::size_t r = 1;; ++r) {
        n_pow *= num;
        d_pow *= den;
        if (n_pow > d_pow * target) return r;
        if (r > 100000) throw BudgetError("power comparison runaway");
    }
}

}  // namespace

DecisionInstance reduce_decision(const eqmodel::LinearEquation& eq,
                                 const graphs::Graph& g, std::size_t k) {
    if (k > g.n) throw PreconditionError("threshold exceeds the vertex count");
    DecisionInstance inst;
    if (eq.homogeneous()) {
        auto sf = eqmodel::standardize(eq);
        inst.set = gadgets::build_homogeneous(sf, eq, g);
    } else {
        auto partition = graphs::find_partition(g, 3);
        inst.set = gadgets::build_inhomogeneous(eq, g, partition, {});
    }
    inst.threshold = (eq.arity() - 2) * g.m() + k;
    return inst;
}

std::vector<Int> repair_to_edge_superset(const eqmodel::LinearEquation& eq,
                                         const gadgets::GadgetSet& gadget,
                                         const std::vector<Int>& b,
                                         const oracle::Budget& budget) {
    auto elems = gadget.elements();
    auto h = oracle::build_conflict_hypergraph(eq, elems, budget);
    std::map<Int, std::size_t> index;
    for (std::size_t i = 0; i < h.ground.size(); ++i) index[h.ground[i]] = i;

    std::uint64_t cur = 0;
    for (const Int& x : b) {
        auto it = index.find(x);
        if (it == index.end())
            throw PreconditionError("subset leaves the gadget set");
        cur |= std::uint64_t(1) << it->second;
    }
    if (!oracle::subset_is_free(h, cur))
        throw PreconditionError("subset to repair is not free");

    auto bit_of = [&](const Int& x) {
        return std::uint64_t(1) << index.at(x);
    };
    // both endpoints present: drop the smaller vertex label, freeing the edge
    // labels for insertion
    for (std::size_t e = 0; e < gadget.source.m(); ++e) {
        auto [v, w] = gadget.source.edges[e];
        const Int& xv = gadget.vertex_label[v];
        const Int& xw = gadget.vertex_label[w];
        if ((cur & bit_of(xv)) && (cur & bit_of(xw)))
            cur &= ~bit_of(std::min(xv, xw));
    }
    for (const auto& labels : gadget.edge_labels)
        for (const Int& y : labels) cur |= bit_of(y);
    if (!oracle::subset_is_free(h, cur))
        throw InternalInvariantError("exchange step broke freeness");

    for (std::size_t i = 0; i < h.ground.size(); ++i) {
        const std::uint64_t bit = std::uint64_t(1) << i;
        if (cur & bit) continue;
        if (oracle::subset_is_free(h, cur | bit)) cur |= bit;
    }

    std::vector<Int> out;
    for (std::size_t i = 0; i < h.ground.size(); ++i)
        if (cur >> i & 1) out.push_back(h.ground[i]);
    return out;
}

Rat ptas_alpha(std::size_t l, const Rat& epsilon) {
    if (l < 3) throw PreconditionError("equation must have at least 3 terms");
    if (epsilon < 0) throw PreconditionError("negative epsilon");
    return 1 + epsilon / Rat(Int(6 * (l - 2) + 1));
}

EpsilonParameters epsilon_parameters(std::size_t a, std::size_t k,
                                     const Rat& epsilon, std::size_t s_size,
                                     std::size_t s_prime_size) {
    const Rat eps_prime = make_rat(Int(s_prime_size), Int(s_size));
    EpsilonParameters p;
    p.r = 0;
    if (Rat(Int(k)) > epsilon * Int(a))
        p.r = ceil_rat((Rat(Int(k)) - epsilon * Int(a)) /
                       ((epsilon - eps_prime) * Int(s_size)));
    p.k_star = Int(k) + p.r * Int(s_prime_size);
    p.a_star = Int(a) + p.r * Int(s_size);
    p.t = ceil_rat((epsilon * p.a_star - p.k_star) / (1 - epsilon));
    if (p.t < 0) throw InternalInvariantError("negative padding requirement");
    return p;
}

EpsilonInstance reduce_epsilon(const eqmodel::LinearEquation& eq,
                               const std::vector<Int>& a_in, std::size_t k,
                               const std::vector<Int>& s_in,
                               const std::vector<Int>& s_prime_in,
                               const Rat& epsilon,
                               const oracle::Budget& budget) {
    auto dedupe = [](std::vector<Int> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    EpsilonInstance inst;
    inst.a = dedupe(a_in);
    inst.s = dedupe(s_in);
    inst.s_prime = dedupe(s_prime_in);
    inst.epsilon = epsilon;
    inst.k = k;
    if (k > inst.a.size()) throw PreconditionError("k exceeds |A|");
    if (inst.s.empty()) throw PreconditionError("S must be nonempty");
    const Rat eps_prime(Int(inst.s_prime.size()), Int(inst.s.size()));
    if (!(eps_prime < epsilon && epsilon < 1))
        throw PreconditionError("need |S'|/|S| < epsilon < 1");

    auto profile = eqmodel::classify(eq);
    if (profile.homogeneous && profile.translation_invariant) {
        std::vector<Int> excluded;
        for (const Int& x : inst.s) excluded.push_back(-x);
        inst.shift = gadgets::shift_to_sef(eq, inst.s_prime, excluded);
        for (auto& x : inst.s) x += inst.shift;
        for (auto& x : inst.s_prime) x += inst.shift;
    }
    if (!oracle::is_free(eq, inst.s_prime, budget))
        throw PreconditionError("S' is not free");
    if (oracle::max_free_subset(eq, inst.s, budget).first != inst.s_prime.size())
        throw PreconditionError("S' is not a maximum free subset of S");

    auto par = epsilon_parameters(inst.a.size(), k, epsilon, inst.s.size(),
                                  inst.s_prime.size());
    inst.r = par.r;
    inst.k_star = par.k_star;
    inst.a_star = par.a_star;
    inst.t = par.t;

    inst.extension =
        gadgets::extend(eq, inst.a, inst.s, inst.s_prime,
                        std::size_t(inst.r), std::size_t(inst.t), budget);
    inst.b = inst.extension.b;
    inst.target = inst.k_star + inst.t;
    if (ceil_rat(epsilon * Int(inst.b.size())) != inst.target)
        throw InternalInvariantError("ceiling identity failed");
    return inst;
}

std::vector<Int> digit_extract(const Rat& p, std::size_t m, const Rat& s) {
    if (p <= 1) throw PreconditionError("base must exceed 1");
    std::vector<Int> z(m + 1, 0);
    Rat rem = s;
    for (std::size_t i = m + 1; i-- > 0;) {
        Rat power = rpow(p, i);
        Int zi = floor_rat(rem / power);
        if (zi < 0) throw PreconditionError("negative digit; base too small");
        z[i] = zi;
        rem -= zi * power;
    }
    return z;
}

std::vector<Rat> vandermonde_solve(const std::vector<Rat>& points,
                                   const std::vector<Rat>& values) {
    const std::size_t n = points.size();
    if (values.size() != n) throw PreconditionError("size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw PreconditionError("duplicate interpolation points");

    std::vector<std::vector<Rat>> mat(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        Rat pw = 1;
        for (std::size_t j = 0; j < n; ++j) {
            mat[i][j] = pw;
            pw *= points[i];
        }
        mat[i][n] = values[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && mat[pivot][col] == 0) ++pivot;
        if (pivot == n) throw InternalInvariantError("singular system");
        std::swap(mat[col], mat[pivot]);
        const Rat inv = mat[col][col];
        for (std::size_t j = col; j <= n; ++j) mat[col][j] /= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || mat[row][col] == 0) continue;
            const Rat f = mat[row][col];
            for (std::size_t j = col; j <= n; ++j)
                mat[row][j] -= f * mat[col][j];
        }
    }
    std::vector<Rat> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = mat[i][n];
    return out;
}

CountLedger recover_count_l3(const eqmodel::LinearEquation& eq,
                             const graphs::Graph& g) {
    if (eq.arity() != 3 || !eq.homogeneous())
        throw PreconditionError("pipeline needs a homogeneous 3-term equation");
    auto sf = eqmodel::standardize(eq);
    const std::size_t n = g.n, m = g.m();

    CountLedger led;
    led.path = "digit";
    led.r = smallest_power_exceeding(4, 3, ipow(2, n + m));
    auto gs = gadgets::build_counting_l3(sf, eq, g, led.r);

    std::vector<Int> layer;
    for (const auto& labels : gs.edge_labels)
        layer.insert(layer.end(), labels.begin(), labels.end());
    led.z = oracle::count_free_by_layer(eq, gs.base_elements(), layer);

    led.total = 0;
    for (std::size_t t = 0; t <= m; ++t)
        led.total +=
            ipow(3, led.r * t) * ipow(4, led.r * (m - t)) * led.z[m - t];
    led.p = Rat(ipow(4, led.r), ipow(3, led.r));
    const Rat sval = Rat(led.total, ipow(3, led.r * m));
    auto digits = digit_extract(led.p, m, sval);
    if (digits != led.z)
        throw InternalInvariantError("digit extraction disagrees with layers");
    led.recovered = digits[0];
    if (led.recovered != graphs::count_independent_sets(g))
        throw InternalInvariantError("recovered count mismatch");
    return led;
}

CountLedger recover_count_l4(const eqmodel::LinearEquation& eq,
                             const graphs::Graph& g) {
    const std::size_t l = eq.arity();
    if (l < 4 || !eq.homogeneous())
        throw PreconditionError("pipeline needs a homogeneous equation, 4+ terms");
    auto sf = eqmodel::standardize(eq);
    const std::size_t m = g.m();

    CountLedger led;
    led.z = edge_count_layers(g);
    const bool special =
        l == 4 && sf.a1 == -sf.b0 && sf.a2 == sf.b0 && sf.b[0] == sf.b0;
    if (special) {
        // per-edge factors 3^r (edge spanned) and 3^r (r+3)/3 (not spanned)
        led.path = "vandermonde";
        std::vector<Rat> points, values;
        for (std::size_t rr = 1; rr <= m + 1; ++rr) {
            const Rat point = Rat(Int(rr + 3), 3);
            Rat value = 0;
            Rat pw = 1;
            for (std::size_t t = 0; t <= m; ++t) {
                value += pw * led.z[t];
                pw *= point;
            }
            points.push_back(point);
            values.push_back(value);
        }
        led.r = m + 1;
        led.total = num(values.back() * rpow(Rat(3), m * (m + 1)));
        auto sol = vandermonde_solve(points, values);
        for (std::size_t t = 0; t <= m; ++t) {
            if (!is_integer(sol[t]) || num(sol[t]) != led.z[t])
                throw InternalInvariantError("interpolation disagrees with layers");
        }
        led.recovered = led.z[m];
    } else {
        led.path = "digit";
        const Int q = ipow(2, l - 2);
        led.r = smallest_power_exceeding(q, q - 1, ipow(2, g.n));
        led.total = 0;
        for (std::size_t t = 0; t <= m; ++t)
            led.total += ipow(q - 1, led.r * (m - t)) * ipow(q, led.r * t) *
                         led.z[t];
        led.p = Rat(ipow(q, led.r), ipow(q - 1, led.r));
        const Rat sval = Rat(led.total, ipow(q - 1, led.r * m));
        auto digits = digit_extract(led.p, m, sval);
        if (digits != led.z)
            throw InternalInvariantError("digit extraction disagrees with layers");
        led.recovered = digits[m];
    }
    if (led.recovered != graphs::count_independent_sets(g))
        throw InternalInvariantError("recovered count mismatch");
    return led;
}

CountLedger recover_count_inhom(const eqmodel::LinearEquation& eq,
                                const graphs::Graph& g) {
    const std::size_t l = eq.arity();
    if (l < 3 || eq.homogeneous())
        throw PreconditionError("pipeline needs an inhomogeneous equation");
    auto bip = graphs::find_partition(g, 2);
    const std::size_t m = g.m();

    CountLedger led;
    led.path = "digit";
    led.r = smallest_power_exceeding(4, 3, ipow(2, g.n + (l - 2) * m));
    auto gs = gadgets::build_counting_inhom(eq, g, bip, led.r);

    led.z = oracle::count_free_by_groups(gs.equation, gs.base_elements(),
                                         gs.edge_labels);
    led.total = 0;
    for (std::size_t t = 0; t <= m; ++t)
        led.total +=
            ipow(3, led.r * t) * ipow(4, led.r * (m - t)) * led.z[m - t];
    led.p = Rat(ipow(4, led.r), ipow(3, led.r));
    const Rat sval = Rat(led.total, ipow(3, led.r * m));
    auto digits = digit_extract(led.p, m, sval);
    if (digits != led.z)
        throw InternalInvariantError("digit extraction disagrees with layers");
    led.recovered = digits[0];
    if (led.recovered != graphs::count_independent_sets(g))
        throw InternalInvariantError("recovered count mismatch");
    return led;
}

}  // namespace lfree::reductions
