#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "septimal/eta_quotient.hpp"
#include "septimal/modular.hpp"
#include "septimal/series.hpp"

namespace septimal {

/// The three basis functions 1, p_0, p_1 over which U_A/U_B images are expanded.
enum class BasisElement { One = 0, P0 = 1, P1 = 2 };
enum class UOperator { UA, UB };

inline constexpr std::array<BasisElement, 3> kBasis = {BasisElement::One, BasisElement::P0, BasisElement::P1};

std::string to_string(BasisElement b);
std::string to_string(UOperator op);
BasisElement parse_basis(std::string_view s);
UOperator parse_operator(std::string_view s);

/// c * 7^e7 * t^j * basis, kept exactly as written (c is not normalized).
struct RelationTerm {
    BasisElement basis = BasisElement::One;
    mpz_class c;
    int e7 = 0;
    int j = 0;

    mpz_class value() const { return c * pow7(static_cast<unsigned long>(e7)); }
    friend bool operator==(const RelationTerm &, const RelationTerm &) = default;
};

/// Identifies U(arg * t^k).
struct RelationKey {
    UOperator op = UOperator::UA;
    BasisElement arg = BasisElement::One;
    int k = 0;

    std::string to_string() const;
    friend auto operator<=>(const RelationKey &, const RelationKey &) = default;
};

/// Parses "UB,1,-1" / "UA,p0,-3".
RelationKey parse_relation_key(std::string_view s);

/// U(arg * t^k) = sum of terms.
struct Relation {
    RelationKey key;
    std::vector<RelationTerm> terms;
    /// Group label (I..VI) from the data file, empty for synthesized relations.
    std::string group;
    std::string note;
    /// Terms as originally printed when they differ from `terms`.
    std::optional<std::vector<RelationTerm>> printed_terms;
};

struct RelationFile {
    std::vector<Relation> relations;
    /// The expansion of L_1 = U_A(1), stored as its own record.
    std::optional<std::vector<RelationTerm>> l1_identity;

    const Relation *find(const RelationKey &key) const;
};

/// Parses the JSON relation file. ParseError carries line/column for JSON
/// syntax errors, SchemaError a JSON path for shape errors, DuplicateKey for
/// a repeated (op, arg, k).
RelationFile parse_relations(std::string_view source);
RelationFile load_relations(const std::filesystem::path &path);

/// Path of the shipped appendix transcription: $SEPTIMAL_RELATIONS if set,
/// else the data directory configured at build time.
std::filesystem::path default_relations_path();

/// basis * t^k * extra to precision N.
Series basis_times_tpow(BasisElement b, int k, std::int64_t N, const CoeffRing &ring,
                        const EtaQuotient &extra = EtaQuotient{});

/// U(arg * t^k) to precision N, computed from the eta-quotient expansions.
Series relation_lhs(const RelationKey &key, std::int64_t N, const CoeffRing &ring = CoeffRing::integers());
/// sum c 7^e7 t^j basis to precision N.
Series relation_rhs(const std::vector<RelationTerm> &terms, std::int64_t N,
                    const CoeffRing &ring = CoeffRing::integers());

struct RelationReport {
    RelationKey key;
    IdentityReport identity;

    bool pass() const { return identity.pass; }
};

RelationReport verify_relation(const Relation &rel, std::int64_t N, const CoeffRing &ring = CoeffRing::integers());

struct VerifySummary {
    std::vector<RelationReport> reports;
    std::vector<RelationKey> failures;

    bool pass() const { return failures.empty(); }
};

/// Runs verify_relation on every entry (in parallel when the hardware allows).
VerifySummary verify_all(const std::vector<Relation> &relations, std::int64_t N,
                         const CoeffRing &ring = CoeffRing::integers());

// Decomposition over {t^k, p_0 t^k, p_1 t^k} ------------------------------------

/// g = sum r1(k) t^k + p_0 sum r2(k) t^k + p_1 sum r3(k) t^k.
struct Decomposition {
    CoeffRing ring = CoeffRing::integers();
    std::array<std::map<int, mpz_class>, 3> parts;
    std::int64_t residual_prec = 0;

    const std::map<int, mpz_class> &part(BasisElement b) const { return parts[static_cast<std::size_t>(b)]; }
    std::map<int, mpz_class> &part(BasisElement b) { return parts[static_cast<std::size_t>(b)]; }
    /// Coefficient of basis * t^k (0 outside the support).
    mpz_class at(BasisElement b, int k) const;
};

/// Solves for the coefficients with t-powers in [k_min, k_max] by exact
/// elimination on q^n, n < N. The integer ring solves over the rationals and
/// demands an integral solution; Z/7^e demands unit pivots. Throws
/// AmbiguousDecomposition, NonIntegralSolution or NonzeroResidual.
Decomposition decompose(const Series &g, int k_min, int k_max, std::int64_t N);

/// Rebuilds the series from a decomposition to precision N.
Series reconstruct(const Decomposition &d, std::int64_t N);

/// Coefficients read directly off a list of relation terms.
Decomposition decomposition_from_terms(const std::vector<RelationTerm> &terms,
                                       const CoeffRing &ring = CoeffRing::integers());

// Valuation profiles ----------------------------------------------------------

/// Valuation floor floor((7 n + k_mult * k + shift) / 4) for the coefficient of
/// basis * t^n, where k is the t-power of the argument for relation templates
/// (0 for the lattices X_A, X_B). Terms with n below the start order
/// ceil((start_k_mult * k + start_shift) / start_div) are not allowed.
struct FloorRule {
    bool allowed = true;
    int n_mult = 7;
    int k_mult = 0;
    int shift = 0;
    int divisor = 4;
    int start_k_mult = 0;
    int start_shift = 0;
    int start_div = 1;
    /// t-power -> required valuation, overriding the formula.
    std::map<int, int> overrides;

    int floor(int n, int k = 0) const;
    int start(int k = 0) const;
};

struct ValuationProfile {
    std::string name;
    std::array<FloorRule, 3> rules;

    const FloorRule &rule(BasisElement b) const { return rules[static_cast<std::size_t>(b)]; }
};

ValuationProfile profile_XA();
ValuationProfile profile_XB();
/// Valuation template of U(arg * t^k) as a function of k.
ValuationProfile template_profile(UOperator op, BasisElement arg);

struct MembershipViolation {
    BasisElement basis;
    int power = 0;
    int required = 0;
    /// kInfiniteValuation when the coefficient is a multiple of the modulus.
    int actual = 0;
    /// True when the term lies below the start order of its family.
    bool below_start = false;
};

struct MembershipReport {
    std::string profile;
    int extra = 0;
    bool pass = false;
    /// min over the support of valuation - required (kInfiniteValuation for an empty support).
    int min_slack = kInfiniteValuation;
    std::vector<MembershipViolation> violations;
    Decomposition decomposition;
};

/// Checks val7(r_i(n)) >= floor_i(n, k) + extra over the support.
MembershipReport check_membership(const Decomposition &d, const ValuationProfile &profile, int extra,
                                  int template_k = 0);
/// Decomposes g first.
MembershipReport check_membership(const Series &g, const ValuationProfile &profile, int extra, int k_min, int k_max,
                                  std::int64_t N);

// Extension by the fundamental lemma -----------------------------------------

/// Given relations for k0..k0+6 of one (op, arg) family, synthesizes the
/// relations for k0+7..target_k with U(u t^j) = sum_l a_l(t) U(u t^{j+l-7}).
std::vector<Relation> extend_relations(const std::vector<Relation> &base, int target_k);
Relation extend_relation(const std::vector<Relation> &base, int target_k);

/// Decomposition of U(g) for g given by its decomposition, using the (op, *)
/// families of `relations` extended forward as far as the support of g needs.
/// Integer ring only. DomainError if g has a t-power below a family's base range.
Decomposition apply_relations(UOperator op, const Decomposition &g, const std::vector<Relation> &relations);

} // namespace septimal
