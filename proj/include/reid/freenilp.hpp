#pragma once

// Free nilpotent groups F_r / Gamma_{c+1} through the truncated Magnus
// embedding x_i -> 1 + X_i into Z<<X_1..X_r>> / (degree > cap).
//
// For free groups the lower central series coincides with the truncation
// filtration, so equality modulo Gamma_k is equality of expansions at cap
// k-1, and Gamma_n / Gamma_{n+1} is read off the degree-n homogeneous part
// (a Lie element) in the Lyndon-bracket basis.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "reid/exactla.hpp"

namespace reid {

struct Letter {
    unsigned gen;  // 1-based generator index
    int exp;       // +1 or -1

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the free group of the given rank.
class FreeWord {
public:
    explicit FreeWord(unsigned rank = 0) : rank_(rank) {}
    FreeWord(unsigned rank, std::vector<Letter> letters);

    static FreeWord generator(unsigned rank, unsigned i, int exp = 1);
    /// Parses "x1 x2 X1 X2" (capital = inverse). "1" or "" is the identity.
    static FreeWord parse(std::string_view text, unsigned rank);

    unsigned rank() const { return rank_; }
    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }

    FreeWord inverse() const;
    std::string to_string() const;
    /// Exponent sum of each generator.
    std::vector<Integer> abelianize() const;

    friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
    friend bool operator==(const FreeWord&, const FreeWord&) = default;

private:
    unsigned rank_;
    std::vector<Letter> letters_;
};

/// [u,v] = u v u^-1 v^-1
FreeWord commutator(const FreeWord& u, const FreeWord& v);

/// Endomorphism of F_r (or of any quotient by a verbal subgroup) given by
/// the images of the generators.
class EndoSpec {
public:
    EndoSpec() = default;
    explicit EndoSpec(std::vector<FreeWord> images);

    static EndoSpec identity(unsigned rank);

    unsigned rank() const { return static_cast<unsigned>(images_.size()); }
    const std::vector<FreeWord>& images() const { return images_; }

    FreeWord apply(const FreeWord& w) const;
    /// Column j holds the exponent sums of the image of generator j.
    IntMatrix abelianization() const;

    /// (e ∘ f)(w) = e(f(w))
    friend EndoSpec compose(const EndoSpec& e, const EndoSpec& f);
    friend bool operator==(const EndoSpec&, const EndoSpec&) = default;

private:
    std::vector<FreeWord> images_;
};

/// Monomial X_{w_1} ... X_{w_d}; index encodes the 0-based letters in base
/// rank with the first letter most significant. Ordered by degree, then
/// lexicographically.
struct Monomial {
    std::uint32_t degree = 0;
    std::uint64_t index = 0;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Truncated noncommutative power series over Z with no stored zeros.
class TruncSeries {
public:
    using Terms = std::map<Monomial, Integer>;

    TruncSeries(unsigned rank, unsigned cap);

    static TruncSeries one(unsigned rank, unsigned cap);
    /// 1 + X_i  (exp = +1)  or  1 - X_i + X_i^2 - ...  (exp = -1)
    static TruncSeries letter(unsigned rank, unsigned cap, unsigned gen, int exp);

    unsigned rank() const { return rank_; }
    unsigned cap() const { return cap_; }
    const Terms& terms() const { return terms_; }

    Monomial monomial(const std::vector<unsigned>& word) const;  // 1-based letters
    std::vector<unsigned> word(const Monomial& m) const;         // 1-based letters
    Integer coefficient(const std::vector<unsigned>& word) const;
    Integer coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Integer& c);

    TruncSeries homogeneous_part(unsigned degree) const;
    bool is_one() const;
    /// Smallest d >= 1 with a nonzero degree-d term; 0 if none.
    unsigned min_positive_degree() const;

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    TruncSeries scaled(const Integer& k) const;
    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

    std::string to_string() const;

private:
    void check_compatible(const TruncSeries& o) const;

    unsigned rank_;
    unsigned cap_;
    std::vector<std::uint64_t> pow_;  // rank^d, d <= cap
    Terms terms_;
};

TruncSeries magnus_expand(const FreeWord& w, unsigned cap);

/// Magnus image of w after substituting generator i by a series with the
/// given inverse (both indexed 0..rank-1).
TruncSeries magnus_substitute(const FreeWord& w, const std::vector<TruncSeries>& gens,
                              const std::vector<TruncSeries>& gen_inverses);

bool equals_mod_gamma(const FreeWord& u, const FreeWord& v, unsigned k);

struct LcsDegree {
    enum class Kind { finite, above_cap, trivial };
    Kind kind;
    unsigned degree = 0;  // meaningful for Kind::finite

    friend bool operator==(const LcsDegree&, const LcsDegree&) = default;
};

LcsDegree lcs_degree(const FreeWord& w, unsigned cap);

Integer witt_rank(unsigned r, unsigned n);
Integer hirsch_length_free_nilpotent(unsigned r, unsigned c);
int mobius(unsigned n);

using LyndonWord = std::vector<unsigned>;  // 1-based letters

struct LyndonBasis {
    unsigned rank = 0;
    unsigned degree = 0;
    std::vector<LyndonWord> words;
};

bool is_lyndon(const LyndonWord& w);
/// Lyndon words of exactly the given length, ascending lexicographically.
LyndonBasis lyndon_basis(unsigned rank, unsigned degree);
/// Position where the standard right factor (longest proper Lyndon suffix) starts.
std::size_t standard_split(const LyndonWord& w);
/// Standard bracketing realised as an iterated group commutator.
FreeWord bracket_word(const LyndonWord& w, unsigned rank);
/// Standard bracketing in the free Lie ring, [a,b] = ab - ba.
TruncSeries lie_polynomial(const LyndonWord& w, unsigned rank);

/// Coordinates of a homogeneous degree-n Lie element in the Lyndon basis.
std::vector<Integer> lie_coordinates(const TruncSeries& homogeneous, unsigned n);

/// Coordinates of w * Gamma_{n+1} in Gamma_n / Gamma_{n+1}.
/// Throws PreconditionError if w is not in Gamma_n.
std::vector<Integer> layer_coordinates(const FreeWord& w, unsigned n);

/// Computes induced maps on lower-central layers for one endomorphism,
/// memoising the Magnus images of bracket elements up to the cap.
class LayerMapEngine {
public:
    LayerMapEngine(EndoSpec e, unsigned cap);

    IntMatrix layer_matrix(unsigned n);
    const EndoSpec& endo() const { return endo_; }

private:
    struct SeriesPair {
        TruncSeries fwd;
        TruncSeries inv;
    };
    const SeriesPair& image_of(const LyndonWord& w);

    EndoSpec endo_;
    unsigned cap_;
    std::map<LyndonWord, SeriesPair> memo_;
};

IntMatrix induced_layer_matrix(const EndoSpec& e, unsigned n);
bool is_automorphism_free_nilpotent(const EndoSpec& e);

struct FreeNilpotentReid {
    std::vector<IntMatrix> layer_matrices;  // layers 1..c
    std::vector<Cardinal> factors;          // coker_order(I - L_n)
    Cardinal total;
};

FreeNilpotentReid reid_free_nilpotent_detail(const EndoSpec& e, unsigned c);
Cardinal reid_free_nilpotent(const EndoSpec& e, unsigned c);

/// Random words and endomorphisms for seeded property checks.
FreeWord random_word(unsigned rank, unsigned max_length, std::mt19937_64& rng);
EndoSpec random_endo(unsigned rank, unsigned max_length, std::mt19937_64& rng);
/// Product of `moves` random elementary Nielsen transvections and, when
/// det_sign is -1, one generator inversion at a random position.
EndoSpec random_nielsen_automorphism(unsigned rank, unsigned moves, int det_sign, std::mt19937_64& rng);

}  // namespace reid
