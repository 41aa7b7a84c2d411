#include "entorder/order_core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace entorder {

namespace {

// classes sorted so that later entries never reach earlier ones (sinks first)
std::vector<std::size_t> topo_classes(const FinitePoset& classes) {
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::popcount(classes.reach_row(a)) < std::popcount(classes.reach_row(b));
    });
    return order;
}

}  // namespace

FinitePoset FinitePoset::closure(std::size_t n,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                 std::vector<std::string> labels) {
    if (n == 0 || n > max_elements) throw std::invalid_argument("poset: size out of range");
    FinitePoset p;
    p.reach_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) p.reach_[i] = Bits{1} << i;
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw std::invalid_argument("poset: edge endpoint out of range");
        p.reach_[a] |= Bits{1} << b;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if ((p.reach_[i] >> k) & 1u) p.reach_[i] |= p.reach_[k];
    if (labels.empty()) {
        for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    } else if (labels.size() != n) {
        throw std::invalid_argument("poset: label count mismatch");
    }
    p.labels_ = std::move(labels);
    return p;
}

bool FinitePoset::totally_ordered() const {
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = a + 1; b < size(); ++b)
            if (!comparable(a, b)) return false;
    return true;
}

PosetQuotient FinitePoset::quotient() const {
    const std::size_t n = size();
    std::vector<std::size_t> class_of(n, n);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i) {
        if (class_of[i] != n) continue;
        class_of[i] = reps.size();
        for (std::size_t j = i + 1; j < n; ++j)
            if (class_of[j] == n && equivalent(i, j)) class_of[j] = reps.size();
        reps.push_back(i);
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::string> labels(reps.size());
    for (std::size_t a = 0; a < reps.size(); ++a) {
        std::string joined = "{";
        for (std::size_t i = 0; i < n; ++i)
            if (class_of[i] == a) joined += (joined.size() > 1 ? "," : "") + labels_[i];
        labels[a] = joined + "}";
        for (std::size_t b = 0; b < reps.size(); ++b)
            if (a != b && reaches(reps[a], reps[b])) edges.emplace_back(a, b);
    }
    return {closure(reps.size(), edges, std::move(labels)), std::move(class_of)};
}

void validate_chain(const FinitePoset& p, const Chain& c) {
    if (c.members.empty() || c.members.size() != c.params.size())
        throw std::invalid_argument("chain: members and params must match and be nonempty");
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        if (c.members[i] >= p.size()) throw std::invalid_argument("chain: member out of range");
        if (i > 0 && !(c.params[i] > c.params[i - 1]))
            throw std::invalid_argument("chain: params must increase strictly");
    }
    for (std::size_t i = 0; i < c.members.size(); ++i)
        for (std::size_t j = 0; j < c.members.size(); ++j) {
            const bool expect = c.params[i] >= c.params[j];
            if (p.reaches(c.members[i], c.members[j]) != expect)
                throw std::invalid_argument(
                    "chain: orientation violated between members " + std::to_string(i) + " and " +
                    std::to_string(j) + " (need reaches iff param_i >= param_j)");
        }
}

MonotoneValues chain_monotones(const FinitePoset& p, const Chain& c) {
    validate_chain(p, c);
    MonotoneValues mv;
    mv.r_minus.assign(p.size(), 0.0);
    mv.r_plus.assign(p.size(), 0.0);
    const double lo = c.params.front(), hi = c.params.back();
    for (std::size_t a = 0; a < p.size(); ++a) {
        double down = lo;  // empty-set convention: min of the parameter set
        bool any_down = false;
        double up = hi;  // empty-set convention: max of the parameter set
        bool any_up = false;
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            if (p.reaches(a, c.members[i])) {
                down = any_down ? std::max(down, c.params[i]) : c.params[i];
                any_down = true;
            }
            if (p.reaches(c.members[i], a)) {
                up = any_up ? std::min(up, c.params[i]) : c.params[i];
                any_up = true;
            }
        }
        mv.r_minus[a] = down;
        mv.r_plus[a] = up;
    }
    return mv;
}

// ----------------------------------------------------------------- laws

LawReport verify_monotone_laws(const FinitePoset& p, const Chain& c, int r0_trials,
                               std::uint64_t seed) {
    const MonotoneValues mv = chain_monotones(p, c);
    LawReport rep;
    const std::size_t n = p.size();

    for (std::size_t a = 0; a < n; ++a) {
        ++rep.bounds.checked;
        if (!(mv.r_minus[a] <= mv.r_plus[a])) ++rep.bounds.violations;
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || !p.reaches(a, b)) continue;
            ++rep.monotonicity.checked;
            if (mv.r_minus[a] < mv.r_minus[b] || mv.r_plus[a] < mv.r_plus[b])
                ++rep.monotonicity.violations;
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            ++rep.separation.checked;
            if (mv.r_plus[b] < mv.r_minus[a] && !p.reaches(a, b)) ++rep.separation.violations;
        }

    std::mt19937_64 rng(seed);
    for (int t = 0; t < r0_trials; ++t) {
        const auto r0 = sample_consistent_monotone(p, c, rng);
        for (std::size_t a = 0; a < n; ++a) {
            ++rep.sandwich.checked;
            if (!(mv.r_minus[a] <= r0[a] && r0[a] <= mv.r_plus[a])) ++rep.sandwich.violations;
        }
    }

    rep.total_order = p.totally_ordered();
    if (rep.total_order) {
        const auto q = p.quotient();
        std::vector<bool> covered(q.poset.size(), false);
        for (std::size_t m : c.members) covered[q.class_of[m]] = true;
        rep.chain_covers_classes =
            std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
        for (std::size_t a = 0; a < n; ++a) {
            ++rep.totality.checked;
            if (rep.chain_covers_classes) {
                if (mv.r_minus[a] != mv.r_plus[a]) ++rep.totality.violations;
            } else {
                // gap form: no chain parameter strictly between the two values
                for (double r : c.params)
                    if (mv.r_minus[a] < r && r < mv.r_plus[a]) {
                        ++rep.totality.violations;
                        break;
                    }
            }
        }
    }
    return rep;
}

// ------------------------------------------------------------ generators

FinitePoset random_preorder(std::size_t n, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && u(rng) < density) edges.emplace_back(a, b);
    return FinitePoset::closure(n, edges);
}

FinitePoset random_total_preorder(std::size_t n, std::mt19937_64& rng) {
    // random ordered partition: each element gets a level, higher reaches lower
    std::uniform_int_distribution<std::size_t> lev(0, n - 1);
    std::vector<std::size_t> level(n);
    for (auto& l : level) l = lev(rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && level[a] >= level[b]) edges.emplace_back(a, b);
    return FinitePoset::closure(n, edges);
}

std::optional<Chain> random_chain(const FinitePoset& p, std::mt19937_64& rng) {
    if (p.size() == 0) return std::nullopt;
    const auto q = p.quotient();
    const std::size_t nc = q.poset.size();

    // grow a random strict chain of classes by greedy insertion
    std::vector<std::size_t> order(nc);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> chain_classes;
    for (std::size_t cand : order) {
        bool fits = true;
        for (std::size_t cc : chain_classes)
            if (!q.poset.comparable(cand, cc)) {
                fits = false;
                break;
            }
        if (fits) chain_classes.push_back(cand);
    }
    // sort ascending in the order (bottom first)
    std::sort(chain_classes.begin(), chain_classes.end(), [&](std::size_t a, std::size_t b) {
        return q.poset.reaches(b, a) && !q.poset.reaches(a, b);
    });

    Chain c;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::size_t> members_of;
    double param = 0.0;
    for (std::size_t cc : chain_classes) {
        members_of.clear();
        for (std::size_t i = 0; i < p.size(); ++i)
            if (q.class_of[i] == cc) members_of.push_back(i);
        std::uniform_int_distribution<std::size_t> pick(0, members_of.size() - 1);
        c.members.push_back(members_of[pick(rng)]);
        param += 0.25 + u(rng);
        c.params.push_back(param);
    }
    return c;
}

Chain covering_chain(const FinitePoset& p) {
    if (!p.totally_ordered()) throw std::invalid_argument("covering_chain: poset is not total");
    const auto q = p.quotient();
    std::vector<std::size_t> classes(q.poset.size());
    std::iota(classes.begin(), classes.end(), 0);
    std::sort(classes.begin(), classes.end(), [&](std::size_t a, std::size_t b) {
        return q.poset.reaches(b, a) && !q.poset.reaches(a, b);
    });
    Chain c;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (q.class_of[i] == classes[k]) {
                c.members.push_back(i);
                break;
            }
        c.params.push_back(static_cast<double>(k + 1));
    }
    return c;
}

std::vector<double> sample_consistent_monotone(const FinitePoset& p, const Chain& c,
                                               std::mt19937_64& rng) {
    const auto q = p.quotient();
    const std::size_t nc = q.poset.size();
    const double lo = c.params.front(), hi = c.params.back();

    // per-class envelope from the chain pins (direct reachability scan)
    std::vector<double> env_lo(nc, lo), env_hi(nc, hi);
    std::vector<std::size_t> rep_of(nc);
    for (std::size_t i = 0; i < p.size(); ++i) rep_of[q.class_of[i]] = i;
    for (std::size_t cls = 0; cls < nc; ++cls) {
        for (std::size_t k = 0; k < c.members.size(); ++k) {
            if (p.reaches(rep_of[cls], c.members[k]))
                env_lo[cls] = std::max(env_lo[cls], c.params[k]);
            if (p.reaches(c.members[k], rep_of[cls]))
                env_hi[cls] = std::min(env_hi[cls], c.params[k]);
        }
        // chain members end up pinned: env_lo = env_hi = their param
    }

    std::vector<double> value(nc, 0.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t cls : topo_classes(q.poset)) {
        double floor = env_lo[cls];
        for (std::size_t below = 0; below < nc; ++below)
            if (below != cls && q.poset.reaches(cls, below)) floor = std::max(floor, value[below]);
        value[cls] = std::min(floor + (env_hi[cls] - floor) * u(rng), env_hi[cls]);
    }

    std::vector<double> r0(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r0[i] = value[q.class_of[i]];
    return r0;
}

}  // namespace entorder
