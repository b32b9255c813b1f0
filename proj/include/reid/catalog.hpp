#pragma once

// Concrete groups: the Klein bottle group Z⋊Z, the infinite dihedral group
// Z⋊Z2, central towers of small nilpotency class, and finite pc groups used
// as brute-force substrates.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reid/exactla.hpp"

namespace reid {

// ------------------------------------------------------------ Klein bottle

/// x^m y^k in <x,y | x y x y^-1>.
struct KleinElement {
    std::int64_t m = 0;
    std::int64_t k = 0;

    friend auto operator<=>(const KleinElement&, const KleinElement&) = default;
};

KleinElement klein_mul(const KleinElement& a, const KleinElement& b);
KleinElement klein_inverse(const KleinElement& a);
std::string to_string(const KleinElement& g);

/// x -> x^eps, y -> x^r y^delta.
struct KleinAut {
    int eps = 1;
    int delta = 1;
    std::int64_t r = 0;

    friend bool operator==(const KleinAut&, const KleinAut&) = default;
};

/// 'a'..'d' following (eps, delta) = (1,1), (1,-1), (-1,1), (-1,-1).
char klein_case(const KleinAut& a);
KleinAut klein_aut_from_case(char c, std::int64_t r);
/// "b,r=2" or "eps=1,delta=-1,r=2".
KleinAut parse_klein_aut(std::string_view text);
std::string to_string(const KleinAut& a);

KleinElement klein_apply(const KleinAut& a, const KleinElement& g);
/// (a ∘ b)(g) = a(b(g))
KleinAut klein_aut_compose(const KleinAut& a, const KleinAut& b);

// ------------------------------------------------------- infinite dihedral

/// (t^j, eps) in Z⋊Z2, eps in {0,1}.
struct DihedralElement {
    std::int64_t j = 0;
    int eps = 0;

    friend auto operator<=>(const DihedralElement&, const DihedralElement&) = default;
};

DihedralElement dihedral_mul(const DihedralElement& a, const DihedralElement& b);
DihedralElement dihedral_inverse(const DihedralElement& a);
std::string to_string(const DihedralElement& g);

/// (t^j,0) -> (t^{sign j},0), (t^0,1) -> (t^n,1).
struct DihedralAut {
    int sign = 1;
    std::int64_t n = 0;

    friend bool operator==(const DihedralAut&, const DihedralAut&) = default;
};

DihedralElement dihedral_apply(const DihedralAut& a, const DihedralElement& g);

// ------------------------------------------------------------ central towers

/// Z^free_rank ⊕ Z_{t_1} ⊕ ...; generators are ordered free first.
struct TowerLayer {
    unsigned free_rank = 0;
    std::vector<Integer> torsion;
    std::vector<std::string> names;

    std::size_t generators() const { return free_rank + torsion.size(); }
    /// generators() x torsion.size() relation matrix.
    IntMatrix relations() const;
};

/// Group given by a central series with abelian layers L_1 (top) .. L_c and
/// commutator structure constants. Class at most 3:
///   [g_i, g_j]  (L_1 x L_1 -> L_2)  and  [c_a, g_j]  (L_2 x L_1 -> L_3).
struct CentralTower {
    std::string name;
    std::vector<TowerLayer> layers;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Integer>> bracket11;  // i < j
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Integer>> bracket21;

    std::size_t depth() const { return layers.size(); }
    Integer hirsch_length() const;
    bool torsion_free() const;

    /// [g_i, g_j] in L_2 coordinates; antisymmetric, zero when absent.
    std::vector<Integer> commutator11(std::size_t i, std::size_t j) const;
    /// [c_a, g_j] in L_3 coordinates; zero when absent.
    std::vector<Integer> commutator21(std::size_t a, std::size_t j) const;

    /// Throws ValidationError on inconsistent dimensions or class > 3.
    void validate() const;
};

/// One integer matrix per layer; columns are images of the layer generators.
struct TowerEndo {
    std::vector<IntMatrix> layer_matrices;
};

CentralTower build_N_r(std::int64_t r);
CentralTower build_Q42();
CentralTower build_G53();
CentralTower product_with_Zn(const CentralTower& t, unsigned n);
/// <a,b,c | [a,b]=c, c central, a^m=b^m=c^m=1> as a two-layer torsion tower.
CentralTower build_heisenberg_mod_tower(unsigned m);

/// Layer maps forced by the layer-1 matrix through the structure constants.
/// Throws ValidationError if no integral compatible map exists or if a
/// layer map is not determined by the commutator data.
TowerEndo derive_tower_endo(const CentralTower& t, const IntMatrix& top);

/// Throws ValidationError naming the first violated structure constant or
/// relation.
void validate_tower_endo(const CentralTower& t, const TowerEndo& e);

// ------------------------------------------------------------ Q42 quotient

/// The layer-1 matrix (columns = images of x,y,z,w) preserves the killed
/// span {x∧z, x∧w, y∧z} of Λ²Z⁴.
bool q42_lifts(const IntMatrix& m);

/// Induced map on the surviving basis (x∧y, y∧w, z∧w). Throws
/// PreconditionError unless q42_lifts(m).
IntMatrix q42_induced_N(const IntMatrix& m);

// --------------------------------------------------------- finite pc groups

/// Finite polycyclic group with generators g_1..g_n, relative orders m_i,
///   g_i^{m_i}        = word in g_{i+1}..g_n
///   g_i^-1 g_j g_i   = word in g_{i+1}..g_n      (i < j)
/// Elements are exponent vectors, indexed mixed-radix with g_1 most
/// significant.
class FinitePcGroup {
public:
    using Element = std::uint32_t;
    using Exponents = std::vector<unsigned>;

    static constexpr std::size_t max_order = 1'000'000;

    FinitePcGroup(std::string name, std::vector<unsigned> orders, std::vector<Exponents> powers,
                  std::map<std::pair<std::size_t, std::size_t>, Exponents> conjugates,
                  std::vector<std::string> names = {});

    const std::string& name() const { return name_; }
    std::size_t order() const { return order_; }
    std::size_t generators() const { return orders_.size(); }
    const std::vector<unsigned>& relative_orders() const { return orders_; }
    const std::vector<std::string>& generator_names() const { return names_; }

    Element identity() const { return 0; }
    Element generator(std::size_t i) const;
    Exponents exponents(Element e) const;
    Element element(const Exponents& e) const;

    Element mul(Element a, Element b) const;
    Element inverse(Element a) const;
    Element pow(Element a, unsigned k) const;
    Element commutator(Element a, Element b) const;  // a b a^-1 b^-1

    /// Power and conjugate relations as (label, lhs-generator data).
    struct Relation {
        std::string label;
        std::size_t i;
        std::size_t j;  // == i for a power relation
        Exponents rhs;
    };
    const std::vector<Relation>& relations() const { return relations_; }

    /// Associativity on generator triples plus power relations.
    bool is_consistent() const;

private:
    Element collect_gen(Element a, std::size_t i) const;
    Element collect_word(Element a, const Exponents& w) const;

    std::string name_;
    std::vector<unsigned> orders_;
    std::vector<std::string> names_;
    std::vector<Exponents> powers_;
    std::map<std::pair<std::size_t, std::size_t>, Exponents> conjugates_;
    std::vector<Relation> relations_;
    std::vector<std::size_t> radix_;
    std::size_t order_ = 1;
    std::vector<Element> right_gen_;  // order x generators
    std::vector<Element> table_;      // full table when order is small
};

/// Images of the pc generators; verified against every relation.
struct FiniteEndo {
    std::vector<FinitePcGroup::Element> images;
};

/// Throws ValidationError naming the violated relation.
void validate_finite_endo(const FinitePcGroup& g, const FiniteEndo& e);
/// Image of every element (requires a validated endomorphism).
std::vector<FinitePcGroup::Element> finite_endo_table(const FinitePcGroup& g, const FiniteEndo& e);

FinitePcGroup build_heisenberg_mod(unsigned m);
FinitePcGroup build_cyclic(unsigned m);
FinitePcGroup build_abelian_mod(unsigned m, unsigned rank);

}  // namespace reid
