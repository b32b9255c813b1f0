#include "reid/catalog.hpp"

namespace reid {

namespace {

std::string exps_str(const std::vector<std::string>& names, const FinitePcGroup::Exponents& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += ' ';
        s += names[i];
        if (e[i] != 1) s += '^' + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace

FinitePcGroup::FinitePcGroup(std::string name, std::vector<unsigned> orders, std::vector<Exponents> powers,
                             std::map<std::pair<std::size_t, std::size_t>, Exponents> conjugates,
                             std::vector<std::string> names)
    : name_(std::move(name)), orders_(std::move(orders)), names_(std::move(names)), powers_(std::move(powers)),
      conjugates_(std::move(conjugates)) {
    const std::size_t n = orders_.size();
    if (n == 0) throw DomainError(name_ + ": a pc group needs at least one generator");
    if (names_.empty())
        for (std::size_t i = 0; i < n; ++i) names_.push_back("g" + std::to_string(i + 1));
    if (names_.size() != n) throw DomainError(name_ + ": name count differs from generator count");
    if (powers_.empty()) powers_.assign(n, Exponents(n, 0));
    if (powers_.size() != n) throw DomainError(name_ + ": need one power relation per generator");

    for (unsigned m : orders_) {
        if (m < 2) throw DomainError(name_ + ": relative orders must be at least 2");
        order_ *= m;
        if (order_ > max_order) throw DomainError(name_ + ": order exceeds " + std::to_string(max_order));
    }
    radix_.assign(n, 1);
    for (std::size_t i = n - 1; i-- > 0;) radix_[i] = radix_[i + 1] * orders_[i + 1];

    auto check_word = [&](const Exponents& w, std::size_t i, const std::string& what) {
        if (w.size() != n) throw DomainError(name_ + ": " + what + " has the wrong length");
        for (std::size_t k = 0; k < n; ++k) {
            if (w[k] >= orders_[k]) throw DomainError(name_ + ": " + what + " exponent out of range");
            if (k <= i && w[k] != 0) throw DomainError(name_ + ": " + what + " must only involve later generators");
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        check_word(powers_[i], i, "power relation of " + names_[i]);
        relations_.push_back({names_[i] + "^" + std::to_string(orders_[i]) + " = " + exps_str(names_, powers_[i]), i, i,
                              powers_[i]});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto it = conjugates_.find({i, j});
            Exponents w(n, 0);
            if (it == conjugates_.end()) {
                w[j] = 1;
                conjugates_[{i, j}] = w;
            } else {
                w = it->second;
                check_word(w, i, "conjugate relation " + names_[j] + "^" + names_[i]);
            }
            relations_.push_back({names_[j] + "^" + names_[i] + " = " + exps_str(names_, w), i, j, w});
        }
    for (const auto& [key, w] : conjugates_)
        if (key.first >= key.second || key.second >= n) throw DomainError(name_ + ": conjugate relation key out of range");

    right_gen_.resize(order_ * n);
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t i = 0; i < n; ++i) right_gen_[a * n + i] = collect_gen(static_cast<Element>(a), i);
    if (order_ <= 1024) {
        table_.resize(order_ * order_);
        for (std::size_t a = 0; a < order_; ++a)
            for (std::size_t b = 0; b < order_; ++b) {
                Element x = static_cast<Element>(a);
                Exponents e = exponents(static_cast<Element>(b));
                for (std::size_t i = 0; i < n; ++i)
                    for (unsigned t = 0; t < e[i]; ++t) x = right_gen_[x * n + i];
                table_[a * order_ + b] = x;
            }
    }
}

FinitePcGroup::Element FinitePcGroup::generator(std::size_t i) const {
    if (i >= generators()) throw DomainError(name_ + ": generator index out of range");
    return static_cast<Element>(radix_[i]);
}

FinitePcGroup::Exponents FinitePcGroup::exponents(Element e) const {
    Exponents x(generators());
    std::size_t v = e;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = static_cast<unsigned>(v / radix_[i]);
        v %= radix_[i];
    }
    return x;
}

FinitePcGroup::Element FinitePcGroup::element(const Exponents& e) const {
    if (e.size() != generators()) throw DomainError(name_ + ": exponent vector has the wrong length");
    std::size_t v = 0;
    for (std::size_t i = 0; i < e.size(); ++i) v += static_cast<std::size_t>(e[i] % orders_[i]) * radix_[i];
    return static_cast<Element>(v);
}

// e * g_i = prefix * g_i^{e_i+1} * prod_{j>i} (g_i^-1 g_j g_i)^{e_j}
FinitePcGroup::Element FinitePcGroup::collect_gen(Element a, std::size_t i) const {
    if (!right_gen_.empty() && right_gen_[a * generators() + i] != 0) return right_gen_[a * generators() + i];
    Exponents e = exponents(a);
    Exponents tail(e.size(), 0);
    for (std::size_t j = i + 1; j < e.size(); ++j) std::swap(tail[j], e[j]);
    Element cur;
    if (++e[i] == orders_[i]) {
        e[i] = 0;
        cur = collect_word(element(e), powers_[i]);
    } else {
        cur = element(e);
    }
    for (std::size_t j = i + 1; j < e.size(); ++j)
        for (unsigned t = 0; t < tail[j]; ++t) cur = collect_word(cur, conjugates_.at({i, j}));
    return cur;
}

FinitePcGroup::Element FinitePcGroup::collect_word(Element a, const Exponents& w) const {
    for (std::size_t g = 0; g < w.size(); ++g)
        for (unsigned t = 0; t < w[g]; ++t) a = collect_gen(a, g);
    return a;
}

FinitePcGroup::Element FinitePcGroup::mul(Element a, Element b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    const std::size_t n = generators();
    Exponents e = exponents(b);
    for (std::size_t i = 0; i < n; ++i)
        for (unsigned t = 0; t < e[i]; ++t) a = right_gen_[static_cast<std::size_t>(a) * n + i];
    return a;
}

FinitePcGroup::Element FinitePcGroup::pow(Element a, unsigned k) const {
    Element r = identity();
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

FinitePcGroup::Element FinitePcGroup::inverse(Element a) const {
    return pow(a, static_cast<unsigned>(order_ - 1));
}

FinitePcGroup::Element FinitePcGroup::commutator(Element a, Element b) const {
    return mul(mul(a, b), mul(inverse(a), inverse(b)));
}

bool FinitePcGroup::is_consistent() const {
    const std::size_t n = generators();
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Element lhs = mul(mul(static_cast<Element>(a), generator(i)), generator(j));
                Element rhs = mul(static_cast<Element>(a), mul(generator(i), generator(j)));
                if (lhs != rhs) return false;
            }
    for (const Relation& r : relations_) {
        Element lhs = r.i == r.j ? pow(generator(r.i), orders_[r.i])
                                 : mul(inverse(generator(r.i)), mul(generator(r.j), generator(r.i)));
        if (lhs != element(r.rhs)) return false;
    }
    return true;
}

namespace {

FinitePcGroup::Element image_of_word(const FinitePcGroup& g, const FiniteEndo& e, const FinitePcGroup::Exponents& w) {
    FinitePcGroup::Element x = g.identity();
    for (std::size_t k = 0; k < w.size(); ++k) x = g.mul(x, g.pow(e.images[k], w[k]));
    return x;
}

}  // namespace

void validate_finite_endo(const FinitePcGroup& g, const FiniteEndo& e) {
    if (e.images.size() != g.generators())
        throw ValidationError(g.name() + ": expected " + std::to_string(g.generators()) + " generator images");
    for (auto x : e.images)
        if (x >= g.order()) throw ValidationError(g.name() + ": generator image out of range");
    for (const auto& r : g.relations()) {
        FinitePcGroup::Element lhs =
            r.i == r.j ? g.pow(e.images[r.i], g.relative_orders()[r.i])
                       : g.mul(g.inverse(e.images[r.i]), g.mul(e.images[r.j], e.images[r.i]));
        if (lhs != image_of_word(g, e, r.rhs))
            throw ValidationError(g.name() + ": map violates relation " + r.label);
    }
}

std::vector<FinitePcGroup::Element> finite_endo_table(const FinitePcGroup& g, const FiniteEndo& e) {
    std::vector<FinitePcGroup::Element> t(g.order());
    for (std::size_t x = 0; x < g.order(); ++x)
        t[x] = image_of_word(g, e, g.exponents(static_cast<FinitePcGroup::Element>(x)));
    return t;
}

FinitePcGroup build_heisenberg_mod(unsigned m) {
    if (m < 2) throw DomainError("build_heisenberg_mod: m must be at least 2");
    // a^-1 b a = b c^{m-1}; c central
    return FinitePcGroup("Heis(Z_" + std::to_string(m) + ")", {m, m, m}, {}, {{{0, 1}, {0, 1, m - 1}}}, {"a", "b", "c"});
}

FinitePcGroup build_cyclic(unsigned m) {
    return FinitePcGroup("Z_" + std::to_string(m), {m}, {}, {}, {"g"});
}

FinitePcGroup build_abelian_mod(unsigned m, unsigned rank) {
    if (rank == 0) throw DomainError("build_abelian_mod: rank must be positive");
    std::string name = "Z_" + std::to_string(m) + "^" + std::to_string(rank);
    return FinitePcGroup(name, std::vector<unsigned>(rank, m), {}, {});
}

}  // namespace reid
