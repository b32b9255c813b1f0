#include <sstream>
#include <string>

#include "reid/catalog.hpp"

namespace reid {

namespace {

bool odd(std::int64_t k) { return (k & 1) != 0; }

void check_signs(int a, int b, const char* what) {
    if ((a != 1 && a != -1) || (b != 1 && b != -1)) throw DomainError(std::string(what) + ": signs must be +1 or -1");
}

}  // namespace

KleinElement klein_mul(const KleinElement& a, const KleinElement& b) {
    return {a.m + (odd(a.k) ? -b.m : b.m), a.k + b.k};
}

KleinElement klein_inverse(const KleinElement& a) { return {odd(a.k) ? a.m : -a.m, -a.k}; }

std::string to_string(const KleinElement& g) {
    return "x^" + std::to_string(g.m) + " y^" + std::to_string(g.k);
}

char klein_case(const KleinAut& a) {
    check_signs(a.eps, a.delta, "klein_case");
    if (a.eps == 1) return a.delta == 1 ? 'a' : 'b';
    return a.delta == 1 ? 'c' : 'd';
}

KleinAut klein_aut_from_case(char c, std::int64_t r) {
    switch (c) {
        case 'a': return {1, 1, r};
        case 'b': return {1, -1, r};
        case 'c': return {-1, 1, r};
        case 'd': return {-1, -1, r};
        default: throw DomainError(std::string("unknown Klein automorphism case '") + c + "'");
    }
}

KleinAut parse_klein_aut(std::string_view text) {
    KleinAut a;
    bool have_case = false;
    std::istringstream in{std::string(text)};
    std::string part;
    while (std::getline(in, part, ',')) {
        while (!part.empty() && part.front() == ' ') part.erase(part.begin());
        while (!part.empty() && part.back() == ' ') part.pop_back();
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) {
            if (part.size() != 1) throw DomainError("bad Klein automorphism field '" + part + "'");
            KleinAut c = klein_aut_from_case(part[0], 0);
            a.eps = c.eps;
            a.delta = c.delta;
            have_case = true;
            continue;
        }
        std::string key = part.substr(0, eq);
        std::int64_t val;
        try {
            val = std::stoll(part.substr(eq + 1));
        } catch (const std::exception&) {
            throw DomainError("bad integer in Klein automorphism field '" + part + "'");
        }
        if (key == "r") a.r = val;
        else if (key == "eps" && !have_case) a.eps = static_cast<int>(val);
        else if (key == "delta" && !have_case) a.delta = static_cast<int>(val);
        else throw DomainError("unexpected Klein automorphism field '" + part + "'");
    }
    check_signs(a.eps, a.delta, "parse_klein_aut");
    return a;
}

std::string to_string(const KleinAut& a) {
    return std::string(1, klein_case(a)) + ",r=" + std::to_string(a.r);
}

KleinElement klein_apply(const KleinAut& a, const KleinElement& g) {
    check_signs(a.eps, a.delta, "klein_apply");
    // (x^eps)^m (x^r y^delta)^k ;  (x^r y^delta)^k = x^{r [k odd]} y^{delta k}
    return {a.eps * g.m + (odd(g.k) ? a.r : 0), a.delta * g.k};
}

KleinAut klein_aut_compose(const KleinAut& a, const KleinAut& b) {
    check_signs(a.eps, a.delta, "klein_aut_compose");
    check_signs(b.eps, b.delta, "klein_aut_compose");
    return {a.eps * b.eps, a.delta * b.delta, a.r + a.eps * b.r};
}

DihedralElement dihedral_mul(const DihedralElement& a, const DihedralElement& b) {
    return {a.j + (a.eps ? -b.j : b.j), (a.eps + b.eps) % 2};
}

DihedralElement dihedral_inverse(const DihedralElement& a) { return a.eps ? a : DihedralElement{-a.j, 0}; }

std::string to_string(const DihedralElement& g) {
    return "(t^" + std::to_string(g.j) + "," + std::to_string(g.eps) + ")";
}

DihedralElement dihedral_apply(const DihedralAut& a, const DihedralElement& g) {
    if (a.sign != 1 && a.sign != -1) throw DomainError("dihedral_apply: sign must be +1 or -1");
    return {a.sign * g.j + (g.eps ? a.n : 0), g.eps};
}

}  // namespace reid
