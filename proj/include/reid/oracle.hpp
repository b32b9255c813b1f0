#pragma once

// Brute-force ground truth: twisted conjugacy classes of finite pc groups
// by union-find, and ball-restricted partitions of the Klein bottle group.

#include <cstdint>
#include <vector>

#include "reid/catalog.hpp"
#include "reid/json_io.hpp"

namespace reid {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::size_t find(std::size_t x);
    void unite(std::size_t a, std::size_t b);  // smaller index becomes the root

private:
    std::vector<std::size_t> parent_;
};

template <class E>
struct OrbitPartition {
    std::vector<E> elements;
    std::vector<std::size_t> class_id;  // index of the representative
    std::size_t class_count = 0;

    std::vector<std::size_t> class_sizes() const {
        std::vector<std::size_t> sizes(elements.size(), 0);
        for (std::size_t r : class_id) ++sizes[r];
        std::vector<std::size_t> out;
        for (std::size_t s : sizes)
            if (s) out.push_back(s);
        return out;
    }
};

template <class E>
OrbitPartition<E> make_partition(std::vector<E> elements, DisjointSets& ds) {
    OrbitPartition<E> p;
    p.class_id.resize(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        p.class_id[i] = ds.find(i);
        if (p.class_id[i] == i) ++p.class_count;
    }
    p.elements = std::move(elements);
    return p;
}

/// Orbits of α -> s α e(s)^-1 over the generators s (which generate the
/// acting group). Throws ValidationError if e is not an endomorphism.
OrbitPartition<FinitePcGroup::Element> twisted_classes_finite(const FinitePcGroup& g, const FiniteEndo& e);

/// Word-length ball of the given radius; elements are merged only through
/// conjugators in the ball of twice the radius, so cells may be finer than
/// the true classes but never coarser.
OrbitPartition<KleinElement> klein_ball_partition(const KleinAut& a, unsigned radius);
std::vector<KleinElement> klein_ball(unsigned radius);

struct ProductFormulaReport {
    Json to_json() const { return json; }
    Json json;
    std::size_t violations = 0;
    std::size_t checked = 0;
};

/// For each Heis(Z_m) and each sampled endomorphism (images of a and b):
/// brute-force R(φ) against R(φ on <c>) · R(φ on G/<c>), both sides also
/// brute-forced. Exhaustive when m^6 <= exhaustive_cap, else `samples`
/// seeded draws.
ProductFormulaReport verify_product_formula(const std::vector<unsigned>& m_values, std::uint64_t seed,
                                            std::size_t samples = 1000, std::size_t exhaustive_cap = 10000);

}  // namespace reid
