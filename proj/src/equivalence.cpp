#include "lgequiv/equivalence.hpp"

#include <algorithm>
#include <deque>

namespace lgequiv {

namespace {

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

IndexSet rays_of(const PartitionPair& pair, const std::vector<int>& component) {
    IndexSet r;
    for (int i : component) r.insert(pair.part(i).begin(), pair.part(i).end());
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// PartitionPair

PartitionPair::PartitionPair(ToricModel model, NefPartition first, NefPartition second)
    : model_(std::move(model)), first_(std::move(first)), second_(std::move(second)) {
    if (auto r = validate_model(model_); !r.ok()) throw InputError("invalid toric model: " + r.summary());
    if (auto r = validate_pair(model_, first_, second_); !r.ok()) throw InputError("invalid partition pair: " + r.summary());
    for (std::size_t i = 1; i <= codim(); ++i) {
        weights_.push_back(weight_vector(model_, part(static_cast<int>(i)), part_prime(static_cast<int>(i))));
    }
}

const IndexSet& PartitionPair::part(int i) const { return first_.parts.at(static_cast<std::size_t>(i - 1)); }

const IndexSet& PartitionPair::part_prime(int i) const { return second_.parts.at(static_cast<std::size_t>(i - 1)); }

const ExpVec& PartitionPair::weight(int i) const {
    if (i < 1 || static_cast<std::size_t>(i) > codim()) {
        throw std::out_of_range("weight vector index " + std::to_string(i) + " not in 1.." + std::to_string(codim()));
    }
    return weights_[static_cast<std::size_t>(i - 1)];
}

// ---------------------------------------------------------------------------
// Graph and reflection vectors

CommunicatingGraph build_graph(const PartitionPair& pair) {
    CommunicatingGraph g;
    g.vertices = static_cast<int>(pair.codim() + 1);
    g.adjacency.resize(static_cast<std::size_t>(g.vertices + 1));
    for (int i = 1; i <= g.vertices; ++i) {
        for (int j = 1; j <= g.vertices; ++j) {
            if (i == j) continue;
            if (!intersect(pair.part(i), pair.part_prime(j)).empty() ||
                !intersect(pair.part_prime(i), pair.part(j)).empty()) {
                g.adjacency[static_cast<std::size_t>(i)].insert(j);
                g.adjacency[static_cast<std::size_t>(j)].insert(i);
            }
        }
    }
    std::vector<bool> seen(static_cast<std::size_t>(g.vertices + 1), false);
    for (int s = 1; s <= g.vertices; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp;
        std::deque<int> queue{s};
        seen[static_cast<std::size_t>(s)] = true;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (int nb : g.adjacency[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(nb)]) {
                    seen[static_cast<std::size_t>(nb)] = true;
                    queue.push_back(nb);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        g.components.push_back(std::move(comp));
    }
    return g;
}

UVectors construct_u_vectors(const CommunicatingGraph& g, const std::vector<int>& component,
                             const PartitionPair& pair) {
    UVectors u;
    if (component.size() <= 1) return u;
    const int last = component.back();
    const std::size_t n = pair.dim();

    // Breadth-first distances to the last element.
    std::map<int, int> dist{{last, 0}};
    std::deque<int> queue{last};
    std::vector<int> order;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (v != last) order.push_back(v);
        for (int nb : g.adjacency.at(static_cast<std::size_t>(v))) {
            if (!dist.contains(nb)) {
                dist[nb] = dist[v] + 1;
                queue.push_back(nb);
            }
        }
    }

    const UVector zero{ExpVec(n, 0), ExpVec(n, 0)};
    for (int j : order) {
        // Lowest-index neighbour one step closer to `last`.
        int p = -1;
        for (int nb : g.adjacency.at(static_cast<std::size_t>(j))) {
            if (dist.at(nb) == dist.at(j) - 1) {
                p = nb;
                break;
            }
        }
        if (p < 0) throw InternalError("construct_u_vectors: no path from " + std::to_string(j));
        const UVector& up = p == last ? zero : u.at(p);
        UVector uj;
        if (auto forward = intersect(pair.part(j), pair.part_prime(p)); !forward.empty()) {
            const ExpVec& v = pair.model().ray(*forward.begin());
            uj.plus = add(v, up.plus);
            uj.minus = sub(up.minus, v);
        } else {
            auto backward = intersect(pair.part_prime(j), pair.part(p));
            if (backward.empty()) throw InternalError("construct_u_vectors: edge without shared rays");
            const ExpVec& v = pair.model().ray(*backward.begin());
            uj.plus = sub(up.plus, v);
            uj.minus = add(v, up.minus);
        }
        u.emplace(j, std::move(uj));
    }

    for (const auto& [j, uj] : u) {
        for (int a = 1; a <= static_cast<int>(pair.codim()); ++a) {
            const auto pp = pairing(pair.weight(a), uj.plus);
            const auto pm = pairing(pair.weight(a), uj.minus);
            const bool good = a == j ? (pp == 1 && pm == -1) : (a == last || (pp == 0 && pm == 0));
            if (!good) {
                throw InternalError("u-vector pairing table violated for j=" + std::to_string(j) + ", a=" +
                                    std::to_string(a) + ": <w_a,u+>=" + std::to_string(pp) +
                                    ", <w_a,u->=" + std::to_string(pm));
            }
        }
    }
    return u;
}

LaurentPoly tilde_extract(const LaurentPoly& g, const ExpVec& w) { return terms_with_pairing(g, w, 1); }

// ---------------------------------------------------------------------------
// Factor chains

namespace {

LaurentPoly pull_laurent(const MutationStep& s, const LaurentPoly& f, const std::string& what) {
    auto q = mutation_pullback(s, RationalFn(f)).as_laurent();
    if (!q) throw InternalError("factor chain: " + what + " is not a Laurent polynomial");
    return std::move(*q);
}

MutationStep make_step(ExpVec w, LaurentPoly f, bool inverse, const std::string& what) {
    try {
        return MutationStep(std::move(w), std::move(f), inverse);
    } catch (const std::invalid_argument& e) {
        throw InternalError("factor chain: " + what + ": " + e.what());
    }
}

}  // namespace

FactorChain build_factor_chain(const PartitionPair& pair, const std::vector<int>& component, const UVectors& u) {
    FactorChain ch;
    ch.members = component;
    const std::size_t L = component.size();
    const std::size_t l = L - 1;
    ch.g.assign(L, {});
    ch.g_prime.assign(L, {});
    for (std::size_t k = 0; k < L; ++k) {
        ch.g[k].push_back(partition_sum(pair.model(), pair.part(component[k])));
        ch.g_prime[k].push_back(partition_sum(pair.model(), pair.part_prime(component[k])));
    }
    for (std::size_t t = 1; t <= l; ++t) {
        const int part = component[t - 1];
        const ExpVec& w = pair.weight(part);
        const UVector& ut = u.at(part);
        const std::string tag = "step " + std::to_string(t);

        LaurentPoly f = tilde_extract(ch.g[t - 1][t - 1], w).shifted(negate(ut.plus));
        LaurentPoly fp = tilde_extract(ch.g_prime[t - 1][t - 1], negate(w)).shifted(negate(ut.minus));
        if (f.is_zero() || fp.is_zero()) throw InternalError("factor chain: empty factor at " + tag);
        const MutationStep mu = make_step(w, f, false, "F_" + std::to_string(t));
        const MutationStep mup = make_step(negate(w), fp, false, "F'_" + std::to_string(t));
        for (std::size_t k = 0; k < L; ++k) {
            ch.g[k].push_back(pull_laurent(mu, ch.g[k][t - 1], "G_" + std::to_string(k + 1) + " at " + tag));
            ch.g_prime[k].push_back(
                pull_laurent(mup, ch.g_prime[k][t - 1], "G'_" + std::to_string(k + 1) + " at " + tag));
        }
        ch.factors.push_back(std::move(f));
        ch.factors_prime.push_back(std::move(fp));
    }
    return ch;
}

BirationalMap build_phi_component(const PartitionPair& pair, const FactorChain& chain, const UVectors& u) {
    BirationalMap m(pair.dim());
    const std::size_t l = chain.length();
    if (l == 0) return m;
    if (l == 1) {
        const int part = chain.members.front();
        const ExpVec& w = pair.weight(part);
        m.append(MutationStep(w, chain.factors[0]));
        m.append(MutationStep(negate(w), chain.factors_prime[0]));
        m.append(reflection_from(w, u.at(part).plus, u.at(part).minus));
        return m;
    }
    for (std::size_t t = 0; t < l; ++t) m.append(MutationStep(pair.weight(chain.members[t]), chain.factors[t]));
    for (std::size_t t = 0; t < l; ++t) {
        const int part = chain.members[t];
        m.append(reflection_from(pair.weight(part), u.at(part).plus, u.at(part).minus));
    }
    for (std::size_t t = l; t-- > 0;) {
        m.append(MutationStep(negate(pair.weight(chain.members[t])), chain.factors_prime[t], true));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

void check_volume(VerificationReport& r, const std::string& name, const BirationalMap& map, std::size_t samples,
                  std::uint64_t seed, VolumeReport* out = nullptr) {
    // Draw extra points; some may land on zeros or poles.
    const auto pts = seeded_torus_points(map.dim, 2 * samples + 8, seed);
    VolumeReport v = volume_check(map, pts);
    if (v.determinants.size() > samples) v.determinants.resize(samples);
    std::string detail;
    const bool enough = v.determinants.size() >= samples;
    if (!enough) detail = "only " + std::to_string(v.determinants.size()) + " usable samples";
    if (!v.ok()) {
        detail += " determinants:";
        for (std::size_t i = 0; i < v.determinants.size() && i < 5; ++i) detail += " " + v.determinants[i].get_str();
        detail += " structural " + std::to_string(v.structural);
    }
    r.add(name, enough && v.ok(), detail);
    if (out) *out = std::move(v);
}

}  // namespace

VerificationReport verify_component(const PartitionPair& pair, const std::vector<int>& component,
                                    const BirationalMap& map, std::size_t samples, std::uint64_t seed) {
    VerificationReport r;
    const auto& model = pair.model();
    LaurentPoly wc(pair.dim()), wc_prime(pair.dim());
    for (int i : component) {
        wc += partition_sum(model, pair.part(i));
        wc_prime += partition_sum(model, pair.part_prime(i));
    }
    check_identity(r, "phi_C*(W_C) = W_C", map_pullback(map, wc), wc);
    for (int i : component) {
        const std::string name = "phi_C*(G_" + std::to_string(i) + ") = G'_" + std::to_string(i) +
                                 (i == component.back() ? " (last)" : "");
        check_identity(r, name, map_pullback(map, partition_sum(model, pair.part(i))),
                       partition_sum(model, pair.part_prime(i)));
    }
    const IndexSet inside = rays_of(pair, component);
    for (int j = 1; j <= static_cast<int>(model.num_rays()); ++j) {
        if (inside.contains(j)) continue;
        const auto mono = LaurentPoly::monomial(model.ray(j));
        check_identity(r, "phi_C* fixes z^v_" + std::to_string(j), map_pullback(map, mono), mono);
    }
    if (!map.empty()) check_volume(r, "|volume determinant| = 1", map, samples, seed);
    return r;
}

EquivalenceResult assemble_phi(const PartitionPair& pair, const EquivalenceOptions& opts) {
    EquivalenceResult res;
    res.graph = build_graph(pair);
    res.phi = BirationalMap(pair.dim());
    for (const auto& comp : res.graph.components) {
        ComponentData d;
        d.members = comp;
        d.u = construct_u_vectors(res.graph, comp, pair);
        d.chain = build_factor_chain(pair, comp, d.u);
        d.map = build_phi_component(pair, d.chain, d.u);
        if (opts.verify_components && d.map.steps.size() > 0) {
            std::string label = "component {";
            for (std::size_t k = 0; k < comp.size(); ++k) label += (k ? "," : "") + std::to_string(comp[k]);
            label += "}: ";
            res.report.append(verify_component(pair, comp, d.map, opts.samples, opts.seed), label);
        }
        res.phi.append(d.map);
        res.components.push_back(std::move(d));
    }

    const auto& model = pair.model();
    const LaurentPoly w = superpotential(model);
    check_identity(res.report, "phi*(W) = W", map_pullback(res.phi, w), w);
    for (int i = 1; i <= static_cast<int>(pair.codim() + 1); ++i) {
        check_identity(res.report, "phi*(G_" + std::to_string(i) + ") = G'_" + std::to_string(i),
                       map_pullback(res.phi, partition_sum(model, pair.part(i))),
                       partition_sum(model, pair.part_prime(i)));
    }
    check_volume(res.report, "volume: sampled log-Jacobian determinant constant, +-1, equal to structural sign",
                 res.phi, opts.samples, opts.seed, &res.volume);

    // Point semantics: W(phi(p)) = W(p) and G_i(phi(p)) = G'_i(p).
    std::size_t good = 0, tried = 0;
    bool oracle_ok = true;
    std::string detail;
    for (const auto& p : seeded_torus_points(pair.dim(), 4 * opts.samples + 8, opts.seed + 1)) {
        if (good == opts.samples) break;
        ++tried;
        std::vector<Rational> q;
        try {
            q = point_map(res.phi, p);
        } catch (const SampleError&) {
            continue;
        }
        ++good;
        if (lp_eval(w, q) != lp_eval(w, p)) {
            oracle_ok = false;
            detail = "W(phi(p)) != W(p) at sample " + std::to_string(tried);
        }
        for (int i = 1; i <= static_cast<int>(pair.codim() + 1); ++i) {
            if (lp_eval(partition_sum(model, pair.part(i)), q) != lp_eval(partition_sum(model, pair.part_prime(i)), p)) {
                oracle_ok = false;
                detail = "G_" + std::to_string(i) + "(phi(p)) != G'_" + std::to_string(i) + "(p)";
            }
        }
    }
    if (good < opts.samples) {
        oracle_ok = false;
        detail = "only " + std::to_string(good) + " usable points";
    }
    res.report.add("point map: W(phi(p)) = W(p) at " + std::to_string(opts.samples) + " points", oracle_ok, detail);
    return res;
}

// ---------------------------------------------------------------------------
// Sequence polynomials and combinatorial cross-checks

LaurentPoly sequence_poly(const SequenceWord& s, const SequenceContext& ctx) {
    if (s.size() < 2) throw std::invalid_argument("sequence_poly: need at least two letters");
    const auto& pair = *ctx.pair;
    auto part_of = [&](int label) {
        if (label < 1 || static_cast<std::size_t>(label) > ctx.members.size()) {
            throw std::out_of_range("sequence label " + std::to_string(label) + " outside the component");
        }
        return ctx.members[static_cast<std::size_t>(label - 1)];
    };
    auto ray_sum = [&](int a, int b) {
        const int pa = part_of(a), pb = part_of(b);
        const IndexSet common = ctx.primed ? intersect(pair.part_prime(pa), pair.part(pb))
                                           : intersect(pair.part(pa), pair.part_prime(pb));
        return partition_sum(pair.model(), common);
    };
    LaurentPoly poly = ray_sum(s[0], s[1]);
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        const int part = part_of(s[k]);
        auto it = ctx.u->find(part);
        if (it == ctx.u->end()) {
            throw std::invalid_argument("sequence_poly: no u-vector for interior label " + std::to_string(s[k]));
        }
        const ExpVec& shift = ctx.primed ? it->second.minus : it->second.plus;
        poly = poly * ray_sum(s[k], s[k + 1]).shifted(negate(shift));
    }
    return poly;
}

namespace {

std::string word_str(const SequenceWord& s) {
    std::string r = "(";
    for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
    return r + ")";
}

}  // namespace

VerificationReport crosscheck_combinatorics(const PartitionPair& pair, const ComponentData& data) {
    VerificationReport r;
    const auto& ch = data.chain;
    const int l = static_cast<int>(ch.length());
    const int L = l + 1;
    if (l == 0) return r;
    const std::size_t n = pair.dim();

    for (bool primed : {false, true}) {
        const SequenceContext ctx{&pair, ch.members, &data.u, primed};
        const auto& g = primed ? ch.g_prime : ch.g;
        const auto& f = primed ? ch.factors_prime : ch.factors;
        const std::string tag = primed ? "'" : "";

        for (int i = 1; i <= L; ++i) {
            for (int j = 0; j < i && j <= l; ++j) {
                const auto words = enumerate_M(i, j, L);
                const std::set<SequenceWord> distinct(words.begin(), words.end());
                LaurentPoly sum(n);
                for (const auto& w : words) sum += sequence_poly(w, ctx);
                const std::string name = "G" + tag + "_" + std::to_string(i) + "^(" + std::to_string(j) +
                                         ") = sum over M(" + std::to_string(i) + "," + std::to_string(j) + ")";
                const bool pass = distinct.size() == words.size() && sum == g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
                r.add(name, pass, pass ? "" : "expected " + describe(sum) + " got " + describe(g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]));
            }
        }
        for (int i = 1; i <= l; ++i) {
            const int part = ch.members[static_cast<std::size_t>(i - 1)];
            const ExpVec& shift = primed ? data.u.at(part).minus : data.u.at(part).plus;
            LaurentPoly factor_sum(n), final_sum = LaurentPoly::monomial(shift);
            for (const auto& w : enumerate_M(i, i - 1, L)) {
                if (w.back() > i) factor_sum += sequence_poly(w, ctx);
                if (w.back() == i) final_sum += sequence_poly(w, ctx);
            }
            factor_sum = factor_sum.shifted(negate(shift));
            const auto& fi = f[static_cast<std::size_t>(i - 1)];
            r.add("F" + tag + "_" + std::to_string(i) + " = z^-u_" + std::to_string(i) +
                      " * sum over M(" + std::to_string(i) + "," + std::to_string(i - 1) + "), a_p > " + std::to_string(i),
                  factor_sum == fi, factor_sum == fi ? "" : "expected " + describe(factor_sum) + " got " + describe(fi));
            const auto& gl = g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(l)];
            r.add("G" + tag + "_" + std::to_string(i) + "^(" + std::to_string(l) + ") = z^u_" + std::to_string(i) +
                      " + sum over a_p = " + std::to_string(i),
                  final_sum == gl, final_sum == gl ? "" : "expected " + describe(final_sum) + " got " + describe(gl));
        }
    }
    r.append(check_hilly_reversal(8, 4));
    return r;
}

VerificationReport check_hilly_reversal(int max_len, int alphabet) {
    VerificationReport r;
    std::size_t checked = 0;
    for (int len = 0; len <= max_len; ++len) {
        SequenceWord w(static_cast<std::size_t>(len), 1);
        while (true) {
            SequenceWord rev(w.rbegin(), w.rend());
            ++checked;
            if (is_hilly(w) != is_hilly(rev)) {
                r.add("hilly words closed under reversal", false, "counterexample " + word_str(w));
                return r;
            }
            std::size_t k = 0;
            while (k < w.size() && w[k] == alphabet) w[k++] = 1;
            if (k == w.size()) break;
            ++w[k];
        }
    }
    r.add("hilly words closed under reversal (" + std::to_string(checked) + " words, length <= " +
              std::to_string(max_len) + ", alphabet " + std::to_string(alphabet) + ")",
          true);
    return r;
}

}  // namespace lgequiv
