#include "reid/freenilp.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace reid {

// ---------------------------------------------------------------- words

FreeWord::FreeWord(unsigned rank, std::vector<Letter> letters) : rank_(rank) {
    letters_.reserve(letters.size());
    for (const Letter& l : letters) {
        if (l.gen < 1 || l.gen > rank) throw DomainError("FreeWord: generator index out of range");
        if (l.exp != 1 && l.exp != -1) throw DomainError("FreeWord: letter exponent must be +1 or -1");
        if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp)
            letters_.pop_back();
        else
            letters_.push_back(l);
    }
}

FreeWord FreeWord::generator(unsigned rank, unsigned i, int exp) { return FreeWord(rank, {{i, exp}}); }

FreeWord FreeWord::parse(std::string_view text, unsigned rank) {
    std::vector<Letter> letters;
    unsigned max_gen = 0;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (tok == "1") continue;
        if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X') ||
            !std::all_of(tok.begin() + 1, tok.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw DomainError("bad word token '" + tok + "' (expected x<k> or X<k>)");
        unsigned g = static_cast<unsigned>(std::stoul(tok.substr(1)));
        if (g == 0) throw DomainError("generator indices start at 1");
        max_gen = std::max(max_gen, g);
        letters.push_back({g, tok[0] == 'x' ? 1 : -1});
    }
    if (rank == 0) rank = std::max(max_gen, 1u);
    if (max_gen > rank) throw DomainError("word '" + std::string(text) + "' uses a generator beyond rank");
    return FreeWord(rank, std::move(letters));
}

FreeWord FreeWord::inverse() const {
    std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
    for (Letter& l : inv) l.exp = -l.exp;
    return FreeWord(rank_, std::move(inv));
}

std::string FreeWord::to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const Letter& l : letters_) {
        if (!s.empty()) s += ' ';
        s += (l.exp > 0 ? 'x' : 'X');
        s += std::to_string(l.gen);
    }
    return s;
}

std::vector<Integer> FreeWord::abelianize() const {
    std::vector<Integer> v(rank_, Integer(0));
    for (const Letter& l : letters_) v[l.gen - 1] += l.exp;
    return v;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
    if (a.rank_ != b.rank_) throw ShapeError("FreeWord product: rank mismatch");
    std::vector<Letter> l = a.letters_;
    l.insert(l.end(), b.letters_.begin(), b.letters_.end());
    return FreeWord(a.rank_, std::move(l));
}

FreeWord commutator(const FreeWord& u, const FreeWord& v) { return u * v * u.inverse() * v.inverse(); }

// ---------------------------------------------------------- endomorphisms

EndoSpec::EndoSpec(std::vector<FreeWord> images) : images_(std::move(images)) {
    for (const FreeWord& w : images_)
        if (w.rank() != images_.size()) throw ShapeError("EndoSpec: image rank differs from generator count");
}

EndoSpec EndoSpec::identity(unsigned rank) {
    std::vector<FreeWord> im;
    for (unsigned i = 1; i <= rank; ++i) im.push_back(FreeWord::generator(rank, i));
    return EndoSpec(std::move(im));
}

FreeWord EndoSpec::apply(const FreeWord& w) const {
    if (w.rank() != rank()) throw ShapeError("EndoSpec::apply: rank mismatch");
    std::vector<Letter> out;
    for (const Letter& l : w.letters()) {
        const FreeWord& img = images_[l.gen - 1];
        if (l.exp > 0) {
            out.insert(out.end(), img.letters().begin(), img.letters().end());
        } else {
            for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) out.push_back({it->gen, -it->exp});
        }
    }
    return FreeWord(rank(), std::move(out));
}

IntMatrix EndoSpec::abelianization() const {
    IntMatrix m(rank(), rank());
    for (unsigned j = 0; j < rank(); ++j) m.set_column(j, images_[j].abelianize());
    return m;
}

EndoSpec compose(const EndoSpec& e, const EndoSpec& f) {
    if (e.rank() != f.rank()) throw ShapeError("compose: rank mismatch");
    std::vector<FreeWord> im;
    for (const FreeWord& w : f.images_) im.push_back(e.apply(w));
    return EndoSpec(std::move(im));
}

// ---------------------------------------------------------------- Magnus

TruncSeries magnus_expand(const FreeWord& w, unsigned cap) {
    std::vector<TruncSeries> gens, invs;
    for (unsigned i = 1; i <= w.rank(); ++i) {
        gens.push_back(TruncSeries::letter(w.rank(), cap, i, 1));
        invs.push_back(TruncSeries::letter(w.rank(), cap, i, -1));
    }
    return magnus_substitute(w, gens, invs);
}

TruncSeries magnus_substitute(const FreeWord& w, const std::vector<TruncSeries>& gens,
                              const std::vector<TruncSeries>& gen_inverses) {
    if (gens.size() != w.rank() || gen_inverses.size() != w.rank())
        throw ShapeError("magnus_substitute: one series per generator required");
    if (w.rank() == 0) throw DomainError("magnus_substitute: rank 0");
    TruncSeries s = TruncSeries::one(gens[0].rank(), gens[0].cap());
    for (const Letter& l : w.letters()) s = s * (l.exp > 0 ? gens[l.gen - 1] : gen_inverses[l.gen - 1]);
    return s;
}

bool equals_mod_gamma(const FreeWord& u, const FreeWord& v, unsigned k) {
    if (u.rank() != v.rank()) throw ShapeError("equals_mod_gamma: rank mismatch");
    if (k < 2) throw DomainError("equals_mod_gamma: k must be at least 2");
    return magnus_expand(u, k - 1) == magnus_expand(v, k - 1);
}

LcsDegree lcs_degree(const FreeWord& w, unsigned cap) {
    if (w.is_identity()) return {LcsDegree::Kind::trivial, 0};
    TruncSeries s = magnus_expand(w, cap);
    unsigned d = s.min_positive_degree();
    if (d == 0) return {LcsDegree::Kind::above_cap, 0};
    return {LcsDegree::Kind::finite, d};
}

// ------------------------------------------------------------ Witt ranks

int mobius(unsigned n) {
    if (n == 0) throw DomainError("mobius: n must be positive");
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

Integer witt_rank(unsigned r, unsigned n) {
    if (n == 0) throw DomainError("witt_rank: degree must be at least 1");
    if (r == 0) throw DomainError("witt_rank: rank must be at least 1");
    if (n > 64) throw DomainError("witt_rank: degrees above 64 are not supported");
    Integer sum = 0, p;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        mpz_ui_pow_ui(p.get_mpz_t(), r, n / d);
        if (mu > 0) sum += p;
        else sum -= p;
    }
    return sum / n;
}

Integer hirsch_length_free_nilpotent(unsigned r, unsigned c) {
    if (c == 0) throw DomainError("hirsch_length_free_nilpotent: class must be at least 1");
    Integer h = 0;
    for (unsigned n = 1; n <= c; ++n) h += witt_rank(r, n);
    return h;
}

// --------------------------------------------------------- Lyndon basis

bool is_lyndon(const LyndonWord& w) {
    const std::size_t n = w.size();
    if (n == 0) return false;
    for (std::size_t s = 1; s < n; ++s) {
        // compare w with its rotation starting at s
        for (std::size_t k = 0; k < n; ++k) {
            unsigned a = w[k], b = w[(s + k) % n];
            if (a < b) break;
            if (a > b) return false;
            if (k + 1 == n) return false;  // equal to a proper rotation
        }
    }
    return true;
}

LyndonBasis lyndon_basis(unsigned rank, unsigned degree) {
    if (rank == 0 || degree == 0) throw DomainError("lyndon_basis: rank and degree must be positive");
    LyndonBasis b{rank, degree, {}};
    // Duval's generation of all Lyndon words of length <= degree, 0-based letters
    std::vector<long> cur{-1};
    while (!cur.empty()) {
        ++cur.back();
        const std::size_t m = cur.size();
        if (m == degree) {
            LyndonWord lw;
            for (long c : cur) lw.push_back(static_cast<unsigned>(c) + 1);
            b.words.push_back(std::move(lw));
        }
        while (cur.size() < degree) cur.push_back(cur[cur.size() - m]);
        while (!cur.empty() && cur.back() == static_cast<long>(rank) - 1) cur.pop_back();
    }
    return b;
}

std::size_t standard_split(const LyndonWord& w) {
    if (w.size() < 2) throw DomainError("standard_split: word of length < 2");
    for (std::size_t i = 1; i < w.size(); ++i)
        if (is_lyndon(LyndonWord(w.begin() + static_cast<long>(i), w.end()))) return i;
    throw DomainError("standard_split: not a Lyndon word");
}

FreeWord bracket_word(const LyndonWord& w, unsigned rank) {
    if (w.size() == 1) return FreeWord::generator(rank, w[0]);
    std::size_t s = standard_split(w);
    return commutator(bracket_word(LyndonWord(w.begin(), w.begin() + static_cast<long>(s)), rank),
                      bracket_word(LyndonWord(w.begin() + static_cast<long>(s), w.end()), rank));
}

namespace {

TruncSeries lie_polynomial_at(const LyndonWord& w, unsigned rank, unsigned cap) {
    if (w.size() == 1) {
        TruncSeries x(rank, cap);
        x.add_term(Monomial{1, w[0] - 1u}, 1);
        return x;
    }
    std::size_t s = standard_split(w);
    TruncSeries a = lie_polynomial_at(LyndonWord(w.begin(), w.begin() + static_cast<long>(s)), rank, cap);
    TruncSeries b = lie_polynomial_at(LyndonWord(w.begin() + static_cast<long>(s), w.end()), rank, cap);
    return a * b - b * a;
}

struct LieTable {
    LyndonBasis basis;
    std::vector<TruncSeries> polys;
};

const LieTable& lie_table(unsigned rank, unsigned n) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, LieTable> cache;
    std::lock_guard lock(mu);
    auto it = cache.find({rank, n});
    if (it != cache.end()) return it->second;
    LieTable t{lyndon_basis(rank, n), {}};
    for (const LyndonWord& w : t.basis.words) {
        TruncSeries p = lie_polynomial_at(w, rank, n);
        // leading (smallest) monomial is w itself with coefficient 1
        if (p.terms().empty() || p.word(p.terms().begin()->first) != w || p.terms().begin()->second != 1)
            throw std::logic_error("standard bracketing lacks the unitriangular leading term");
        t.polys.push_back(std::move(p));
    }
    return cache.emplace(std::pair{rank, n}, std::move(t)).first->second;
}

}  // namespace

TruncSeries lie_polynomial(const LyndonWord& w, unsigned rank) {
    return lie_polynomial_at(w, rank, static_cast<unsigned>(w.size()));
}

std::vector<Integer> lie_coordinates(const TruncSeries& homogeneous, unsigned n) {
    const LieTable& t = lie_table(homogeneous.rank(), n);
    TruncSeries rest(homogeneous.rank(), n);
    for (const auto& [m, c] : homogeneous.terms()) {
        if (m.degree != n) throw PreconditionError("lie_coordinates: input is not homogeneous of degree n");
        rest.add_term(m, c);
    }
    std::vector<Integer> coords(t.polys.size(), Integer(0));
    for (std::size_t k = 0; k < t.polys.size(); ++k) {
        Integer c = rest.coefficient(t.basis.words[k]);
        if (c == 0) continue;
        coords[k] = c;
        rest = rest - t.polys[k].scaled(c);
    }
    if (!rest.terms().empty()) throw PreconditionError("lie_coordinates: input is not a Lie element");
    return coords;
}

std::vector<Integer> layer_coordinates(const FreeWord& w, unsigned n) {
    if (n == 0) throw DomainError("layer_coordinates: n must be at least 1");
    TruncSeries s = magnus_expand(w, n);
    unsigned d = s.min_positive_degree();
    if (d != 0 && d < n) throw PreconditionError("layer_coordinates: word is not in Gamma_" + std::to_string(n));
    return lie_coordinates(s.homogeneous_part(n), n);
}

// ------------------------------------------------------------ layer maps

LayerMapEngine::LayerMapEngine(EndoSpec e, unsigned cap) : endo_(std::move(e)), cap_(cap) {
    if (endo_.rank() == 0) throw DomainError("LayerMapEngine: rank 0 endomorphism");
    if (cap == 0) throw DomainError("LayerMapEngine: cap must be at least 1");
}

const LayerMapEngine::SeriesPair& LayerMapEngine::image_of(const LyndonWord& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    SeriesPair p{TruncSeries(endo_.rank(), cap_), TruncSeries(endo_.rank(), cap_)};
    if (w.size() == 1) {
        const FreeWord& img = endo_.images()[w[0] - 1];
        p.fwd = magnus_expand(img, cap_);
        p.inv = magnus_expand(img.inverse(), cap_);
    } else {
        std::size_t s = standard_split(w);
        const SeriesPair& a = image_of(LyndonWord(w.begin(), w.begin() + static_cast<long>(s)));
        const SeriesPair& b = image_of(LyndonWord(w.begin() + static_cast<long>(s), w.end()));
        p.fwd = a.fwd * b.fwd * a.inv * b.inv;
        p.inv = b.fwd * a.fwd * b.inv * a.inv;
    }
    return memo_.emplace(w, std::move(p)).first->second;
}

IntMatrix LayerMapEngine::layer_matrix(unsigned n) {
    if (n == 0 || n > cap_) throw PreconditionError("layer_matrix: layer outside 1..cap");
    const LieTable& t = lie_table(endo_.rank(), n);
    const std::size_t dim = t.basis.words.size();
    IntMatrix m(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const TruncSeries& s = image_of(t.basis.words[k]).fwd;
        unsigned d = s.min_positive_degree();
        if (d != 0 && d < n) throw std::logic_error("image of a Gamma_n element left Gamma_n");
        m.set_column(k, lie_coordinates(s.homogeneous_part(n), n));
    }
    return m;
}

IntMatrix induced_layer_matrix(const EndoSpec& e, unsigned n) {
    LayerMapEngine engine(e, n);
    return engine.layer_matrix(n);
}

bool is_automorphism_free_nilpotent(const EndoSpec& e) { return abs(det(e.abelianization())) == 1; }

FreeNilpotentReid reid_free_nilpotent_detail(const EndoSpec& e, unsigned c) {
    if (c == 0) throw DomainError("reid_free_nilpotent: class must be at least 1");
    LayerMapEngine engine(e, c);
    FreeNilpotentReid r{{}, {}, Cardinal(Integer(1))};
    for (unsigned n = 1; n <= c; ++n) {
        IntMatrix l = engine.layer_matrix(n);
        Cardinal f = coker_order(IntMatrix::identity(l.rows()) - l);
        r.total = r.total * f;
        r.layer_matrices.push_back(std::move(l));
        r.factors.push_back(f);
    }
    return r;
}

Cardinal reid_free_nilpotent(const EndoSpec& e, unsigned c) { return reid_free_nilpotent_detail(e, c).total; }

// ------------------------------------------------------------ sampling

FreeWord random_word(unsigned rank, unsigned max_length, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> len_d(0, max_length), gen_d(1, rank), sign_d(0, 1);
    unsigned len = len_d(rng);
    std::vector<Letter> l;
    for (unsigned i = 0; i < len; ++i) {
        unsigned g = gen_d(rng);
        int s = sign_d(rng) ? 1 : -1;
        l.push_back({g, s});
    }
    return FreeWord(rank, std::move(l));
}

EndoSpec random_endo(unsigned rank, unsigned max_length, std::mt19937_64& rng) {
    std::vector<FreeWord> im;
    for (unsigned i = 0; i < rank; ++i) im.push_back(random_word(rank, max_length, rng));
    return EndoSpec(std::move(im));
}

EndoSpec random_nielsen_automorphism(unsigned rank, unsigned moves, int det_sign, std::mt19937_64& rng) {
    if (rank < 2) throw DomainError("random_nielsen_automorphism: rank must be at least 2");
    if (det_sign != 1 && det_sign != -1) throw DomainError("random_nielsen_automorphism: det_sign must be +-1");
    std::uniform_int_distribution<unsigned> gen_d(1, rank), bit_d(0, 1), pos_d(0, moves);
    const unsigned inversion_at = det_sign < 0 ? pos_d(rng) : moves + 1;
    EndoSpec acc = EndoSpec::identity(rank);
    for (unsigned step = 0; step <= moves; ++step) {
        if (step == inversion_at) {
            std::vector<FreeWord> im = EndoSpec::identity(rank).images();
            unsigned i = gen_d(rng);
            im[i - 1] = FreeWord::generator(rank, i, -1);
            acc = compose(acc, EndoSpec(std::move(im)));
        }
        if (step == moves) break;
        unsigned i = gen_d(rng), j = gen_d(rng);
        while (j == i) j = gen_d(rng);
        int s = bit_d(rng) ? 1 : -1;
        bool left = bit_d(rng);
        std::vector<FreeWord> im = EndoSpec::identity(rank).images();
        FreeWord xi = FreeWord::generator(rank, i), xj = FreeWord::generator(rank, j, s);
        im[i - 1] = left ? xj * xi : xi * xj;
        acc = compose(acc, EndoSpec(std::move(im)));
    }
    return acc;
}

}  // namespace reid
