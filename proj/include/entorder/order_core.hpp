// order_core.hpp - finite preorders, quotients, embedded chains, and exact
// extremal monotones
//
// Everything here is computed by exhaustive reachability on at most 16
// elements; this module is the brute-force oracle for the order-theoretic
// laws the convertibility monotones must satisfy.
//
// Chain orientation: a larger parameter sits higher in the conversion order,
// so reaches(xi_i, xi_j) holds iff r_i >= r_j. Under that convention
//   r_minus(a) = max { r : a -> xi_r }   (min param when a reaches no member)
//   r_plus(a)  = min { r : xi_r -> a }   (max param when no member reaches a)

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entorder {

struct PosetQuotient;

class FinitePoset {
public:
    using Bits = std::uint32_t;
    static constexpr std::size_t max_elements = 16;

    // reflexive-transitive closure of the given relation
    static FinitePoset closure(std::size_t n,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                               std::vector<std::string> labels = {});

    std::size_t size() const { return reach_.size(); }
    bool reaches(std::size_t a, std::size_t b) const { return (reach_[a] >> b) & 1u; }
    bool equivalent(std::size_t a, std::size_t b) const { return reaches(a, b) && reaches(b, a); }
    bool comparable(std::size_t a, std::size_t b) const { return reaches(a, b) || reaches(b, a); }
    Bits reach_row(std::size_t a) const { return reach_[a]; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    bool totally_ordered() const;

    // strongly connected classes under mutual reachability; the induced
    // relation on classes is a partial order
    PosetQuotient quotient() const;

private:
    FinitePoset() = default;
    std::vector<Bits> reach_;
    std::vector<std::string> labels_;
};

struct PosetQuotient {
    FinitePoset poset;
    std::vector<std::size_t> class_of;  // element -> class index
};

// Real-parameterized totally ordered subset embedded in a poset.
struct Chain {
    std::vector<std::size_t> members;  // indices into the host poset
    std::vector<double> params;        // strictly increasing
};

// Throws std::invalid_argument unless members are pairwise strictly ordered
// with the orientation reaches(member_i, member_j) iff param_i >= param_j.
void validate_chain(const FinitePoset& p, const Chain& c);

struct MonotoneValues {
    std::vector<double> r_minus;
    std::vector<double> r_plus;
};

// exhaustive evaluation of the extremal monotone pair against the chain
MonotoneValues chain_monotones(const FinitePoset& p, const Chain& c);

// ------------------------------------------------------------------- laws

struct LawCounts {
    long checked = 0;
    long violations = 0;
};

struct LawReport {
    LawCounts bounds;        // r_minus <= r_plus everywhere
    LawCounts monotonicity;  // a -> b implies r_minus(a) >= r_minus(b), same for r_plus
    LawCounts separation;    // r_plus(b) < r_minus(a) implies a -> b
    LawCounts sandwich;      // r_minus <= R0 <= r_plus for sampled consistent monotones
    LawCounts totality;      // total order: values collapse (see flags below)
    bool total_order = false;
    bool chain_covers_classes = false;
    long total_violations() const {
        return bounds.violations + monotonicity.violations + separation.violations +
               sandwich.violations + totality.violations;
    }
};

// Checks all five laws exhaustively. The totality law is checked in its exact
// form r_minus = r_plus when the chain meets every equivalence class of a
// totally ordered poset; for partial chains it degrades to the gap form: no
// chain parameter lies strictly between r_minus(a) and r_plus(a).
LawReport verify_monotone_laws(const FinitePoset& p, const Chain& c, int r0_trials,
                               std::uint64_t seed);

// ------------------------------------------- random instances (tests, CLI)

FinitePoset random_preorder(std::size_t n, double density, std::mt19937_64& rng);
FinitePoset random_total_preorder(std::size_t n, std::mt19937_64& rng);

// random strict chain through distinct equivalence classes (longest random
// walk found); nullopt only for empty posets
std::optional<Chain> random_chain(const FinitePoset& p, std::mt19937_64& rng);

// one chain member per equivalence class of a totally ordered poset
Chain covering_chain(const FinitePoset& p);

// random order-consistent monotone pinned to R0(xi_r) = r, with values in the
// closed parameter range
std::vector<double> sample_consistent_monotone(const FinitePoset& p, const Chain& c,
                                               std::mt19937_64& rng);

}  // namespace entorder
