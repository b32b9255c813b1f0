#pragma once

// Reidemeister numbers: the abelian cokernel formula, closed-form twisted
// conjugacy on the Klein bottle group and Z⋊Z2, central towers, bounded
// automorphism scans and R∞ certificates.

#include <optional>
#include <string>
#include <vector>

#include "reid/catalog.hpp"
#include "reid/exactla.hpp"
#include "reid/freenilp.hpp"
#include "reid/json_io.hpp"

namespace reid {

// --------------------------------------------------------------- certificate

/// Proof tree. A node with a non-empty leaf_op is a computed fact that the
/// verifier re-executes; every other node applies `rule` to its premises.
struct Certificate {
    std::string claim;
    std::string rule;  // empty on facts
    std::vector<Certificate> premises;
    std::string leaf_op;
    Json leaf_args;
    Json leaf_result;
    std::optional<Cardinal> value;  // absent on subgroup facts

    bool is_fact() const { return !leaf_op.empty(); }
    Json to_json() const;
    static Certificate from_json(const Json& j);
};

inline const std::vector<std::string>& certificate_rules() {
    static const std::vector<std::string> rules = {"ABELIAN_DET",      "QUOTIENT_INF",   "FIX_KERNEL",   "PRODUCT",
                                                   "TORSION_QUOTIENT", "CHAR_SUBGROUP", "CASE_ANALYSIS"};
    return rules;
}

// ------------------------------------------------------------------ abelian

/// #Coker(1 - M) on Z^n / im(relations). relations may have zero columns.
/// Throws ValidationError if M does not preserve the relation lattice.
Cardinal reid_fg_abelian(const IntMatrix& m, const IntMatrix& relations);
Cardinal reid_fg_abelian(const IntMatrix& m);

/// dim_Q of the fixed space of M on (Z^n / relations) ⊗ Q.
std::size_t fix_kernel_rank(const IntMatrix& m, const IntMatrix& relations);

// ------------------------------------------------------------------- Klein

/// Some σ with h = σ g a(σ)^-1, or nothing.
std::optional<KleinElement> klein_twisted_conjugate(const KleinAut& a, const KleinElement& g, const KleinElement& h);

/// Witness family: x^i for case b, x^i y for case d, y^i for cases a and c.
KleinElement klein_witness(const KleinAut& a, std::int64_t i);
std::string klein_witness_family_name(const KleinAut& a);

struct FamilyCheck {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::size_t classes = 0;  // distinct twisted classes met by the family
    bool pairwise_distinct = false;
};
FamilyCheck klein_witness_family(const KleinAut& a, std::int64_t lo, std::int64_t hi);

Certificate reid_klein(const KleinAut& a);

// ---------------------------------------------------------------- dihedral

std::optional<DihedralElement> dihedral_twisted_conjugate(const DihedralAut& a, const DihedralElement& g,
                                                          const DihedralElement& h);

/// Twisted classes of the slice {(t^l,1) : |l| <= bound}.
struct DihedralSlice {
    std::int64_t bound = 0;
    std::size_t classes = 0;
    std::size_t largest_class = 0;
    bool matches_pair_rule = false;  // every class is {l, n-l} ∩ slice
    std::vector<std::vector<std::int64_t>> members;  // sorted, one per class
};
DihedralSlice dihedral_class_slice(const DihedralAut& a, std::int64_t bound);

Certificate reid_dihedral(const DihedralAut& a);

// ------------------------------------------------------------------ towers

/// Product of per-layer abelian values after validating e against t.
Certificate reid_central_tower(const CentralTower& t, const TowerEndo& e);

// ------------------------------------------------------------------- scans

struct ScanReport {
    std::string scan;
    Json params = Json::object();
    std::vector<std::pair<std::string, Integer>> counts;
    std::vector<Json> checkpoints;
    std::vector<Json> counterexamples;
    bool property_holds = true;

    Integer count(const std::string& key) const;
    Json to_json() const;
};

/// All 4x4 matrices with entries in [-bound, bound] inducing an
/// automorphism of Q42; counterexamples are those with finite R.
ScanReport scan_q42(unsigned bound, unsigned threads = 1);
/// Abelianization data (a, b, d) with a, d = ±1 and |b| <= b_bound.
ScanReport scan_g53(unsigned b_bound);

// ---------------------------------------------------------- certification

/// Problem kinds: abelian, klein, dihedral, klein_x_zn, free_nilpotent,
/// tower, g53, c_nilpotent. Throws PreconditionError if no rule applies.
Certificate certify(const Json& problem);

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> errors;
    std::size_t facts_checked = 0;
    std::size_t rules_checked = 0;
};
VerifyResult verify_certificate(const Certificate& c);

}  // namespace reid
