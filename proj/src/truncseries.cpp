#include <limits>
#include <sstream>

#include "reid/freenilp.hpp"

namespace reid {

TruncSeries::TruncSeries(unsigned rank, unsigned cap) : rank_(rank), cap_(cap) {
    if (rank == 0) throw DomainError("TruncSeries: rank must be positive");
    pow_.resize(cap + 1);
    pow_[0] = 1;
    for (unsigned d = 1; d <= cap; ++d) {
        if (pow_[d - 1] > std::numeric_limits<std::uint64_t>::max() / 2 / rank)
            throw DomainError("TruncSeries: rank^cap exceeds the monomial index range");
        pow_[d] = pow_[d - 1] * rank;
    }
}

TruncSeries TruncSeries::one(unsigned rank, unsigned cap) {
    TruncSeries s(rank, cap);
    s.terms_.emplace(Monomial{0, 0}, Integer(1));
    return s;
}

TruncSeries TruncSeries::letter(unsigned rank, unsigned cap, unsigned gen, int exp) {
    if (gen < 1 || gen > rank) throw DomainError("TruncSeries::letter: generator out of range");
    TruncSeries s = one(rank, cap);
    if (cap == 0) return s;
    if (exp == 1) {
        s.terms_.emplace(Monomial{1, gen - 1}, Integer(1));
        return s;
    }
    // (1 + X)^-1 = sum (-X)^d
    std::uint64_t idx = 0;
    for (unsigned d = 1; d <= cap; ++d) {
        idx = idx * rank + (gen - 1);
        s.terms_.emplace(Monomial{d, idx}, Integer(d % 2 ? -1 : 1));
    }
    return s;
}

Monomial TruncSeries::monomial(const std::vector<unsigned>& word) const {
    if (word.size() > cap_) throw DomainError("monomial degree exceeds the truncation cap");
    Monomial m{static_cast<std::uint32_t>(word.size()), 0};
    for (unsigned letter : word) {
        if (letter < 1 || letter > rank_) throw DomainError("monomial letter out of range");
        m.index = m.index * rank_ + (letter - 1);
    }
    return m;
}

std::vector<unsigned> TruncSeries::word(const Monomial& m) const {
    std::vector<unsigned> w(m.degree);
    std::uint64_t idx = m.index;
    for (std::size_t k = m.degree; k-- > 0;) {
        w[k] = static_cast<unsigned>(idx % rank_) + 1;
        idx /= rank_;
    }
    return w;
}

Integer TruncSeries::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
}

Integer TruncSeries::coefficient(const std::vector<unsigned>& w) const {
    if (w.size() > cap_) return 0;
    return coefficient(monomial(w));
}

void TruncSeries::add_term(const Monomial& m, const Integer& c) {
    if (m.degree > cap_ || c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

TruncSeries TruncSeries::homogeneous_part(unsigned degree) const {
    TruncSeries h(rank_, cap_);
    auto lo = terms_.lower_bound(Monomial{degree, 0});
    auto hi = terms_.lower_bound(Monomial{degree + 1, 0});
    h.terms_.insert(lo, hi);
    return h;
}

bool TruncSeries::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0} && terms_.begin()->second == 1;
}

unsigned TruncSeries::min_positive_degree() const {
    auto it = terms_.lower_bound(Monomial{1, 0});
    return it == terms_.end() ? 0 : it->first.degree;
}

void TruncSeries::check_compatible(const TruncSeries& o) const {
    if (rank_ != o.rank_) throw ShapeError("TruncSeries: rank mismatch");
    if (cap_ != o.cap_) throw ShapeError("TruncSeries: truncation cap mismatch");
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    TruncSeries out(a.rank_, a.cap_);
    for (const auto& [ka, ca] : a.terms_) {
        const unsigned room = a.cap_ - ka.degree;
        for (const auto& [kb, cb] : b.terms_) {
            if (kb.degree > room) break;
            Monomial k{ka.degree + kb.degree, ka.index * a.pow_[kb.degree] + kb.index};
            Integer& slot = out.terms_[k];
            mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
    }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
    return out;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    TruncSeries out = a;
    for (const auto& [k, c] : b.terms_) out.add_term(k, c);
    return out;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    TruncSeries out = a;
    for (const auto& [k, c] : b.terms_) out.add_term(k, -c);
    return out;
}

TruncSeries TruncSeries::scaled(const Integer& k) const {
    TruncSeries out(rank_, cap_);
    if (k == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * k);
    return out;
}

std::string TruncSeries::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        first = false;
        Integer a = abs(c);
        if (m.degree == 0 || a != 1) os << a;
        for (unsigned l : word(m)) os << 'X' << l;
    }
    return os.str();
}

}  // namespace reid
