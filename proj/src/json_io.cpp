#include "reid/json_io.hpp"

#include <algorithm>

namespace reid {

Json integer_to_json(const Integer& v) { return v.get_str(); }

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        Integer v;
        if (s.empty() || v.set_str(s, 10) != 0) throw DomainError("not an integer: \"" + s + "\"");
        return v;
    }
    throw DomainError("expected an integer, got " + j.dump());
}

Json cardinal_to_json(const Cardinal& c) { return c.to_string(); }

Cardinal cardinal_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "infinity") return Cardinal::infinity();
    return Cardinal(integer_from_json(j));
}

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j, std::size_t expected_rows) {
    if (!j.is_array()) throw DomainError("matrix must be an array of rows");
    if (j.empty()) return IntMatrix(expected_rows, 0);
    std::vector<std::vector<Integer>> rows;
    for (const Json& row : j) {
        if (!row.is_array()) throw DomainError("matrix row must be an array");
        std::vector<Integer> r;
        for (const Json& x : row) r.push_back(integer_from_json(x));
        if (!rows.empty() && r.size() != rows.front().size()) throw DomainError("ragged matrix");
        rows.push_back(std::move(r));
    }
    if (expected_rows && rows.size() != expected_rows)
        throw DomainError("matrix needs " + std::to_string(expected_rows) + " rows");
    return IntMatrix::from_rows(rows);
}

Json vector_to_json(const std::vector<Integer>& v) {
    Json a = Json::array();
    for (const Integer& x : v) a.push_back(integer_to_json(x));
    return a;
}

std::vector<Integer> vector_from_json(const Json& j) {
    if (!j.is_array()) throw DomainError("expected an integer array");
    std::vector<Integer> v;
    for (const Json& x : j) v.push_back(integer_from_json(x));
    return v;
}

Json klein_aut_to_json(const KleinAut& a) {
    return Json{{"eps", a.eps}, {"delta", a.delta}, {"r", a.r}};
}

KleinAut klein_aut_from_json(const Json& j) {
    if (j.is_string()) return parse_klein_aut(j.get<std::string>());
    if (!j.is_object()) throw DomainError("Klein automorphism must be a string or object");
    require_keys(j, {"eps", "delta", "r", "case"}, "Klein automorphism");
    KleinAut a;
    if (j.contains("case")) {
        std::string c = j.at("case").get<std::string>();
        if (c.size() != 1) throw DomainError("Klein case must be one letter");
        a = klein_aut_from_case(c[0], 0);
    }
    if (j.contains("eps")) a.eps = j.at("eps").get<int>();
    if (j.contains("delta")) a.delta = j.at("delta").get<int>();
    if (j.contains("r")) a.r = j.at("r").get<std::int64_t>();
    klein_case(a);  // validates signs
    return a;
}

Json tower_to_json(const CentralTower& t) {
    Json layers = Json::array();
    for (const TowerLayer& l : t.layers) {
        Json tor = Json::array();
        for (const Integer& x : l.torsion) tor.push_back(integer_to_json(x));
        layers.push_back(Json{{"free_rank", l.free_rank}, {"torsion", tor}, {"names", l.names}});
    }
    Json b11 = Json::array();
    for (const auto& [k, v] : t.bracket11) b11.push_back(Json{{"i", k.first}, {"j", k.second}, {"value", vector_to_json(v)}});
    Json b21 = Json::array();
    for (const auto& [k, v] : t.bracket21) b21.push_back(Json{{"a", k.first}, {"j", k.second}, {"value", vector_to_json(v)}});
    return Json{{"name", t.name}, {"layers", layers}, {"bracket11", b11}, {"bracket21", b21}};
}

namespace {

CentralTower tower_by_name(std::string name) {
    unsigned extra = 0;
    if (auto pos = name.find("xZ"); pos != std::string::npos) {
        try {
            extra = static_cast<unsigned>(std::stoul(name.substr(pos + 2)));
        } catch (const std::exception&) {
            throw DomainError("bad tower name '" + name + "'");
        }
        name = name.substr(0, pos);
    }
    CentralTower t;
    try {
        if (name == "Q42") t = build_Q42();
        else if (name == "G53") t = build_G53();
        else if (name.rfind("N_", 0) == 0) t = build_N_r(std::stoll(name.substr(2)));
        else if (name.rfind("Heis_", 0) == 0) t = build_heisenberg_mod_tower(static_cast<unsigned>(std::stoul(name.substr(5))));
        else throw DomainError("unknown tower '" + name + "'");
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const DomainError*>(&e)) throw;
        throw DomainError("bad tower name '" + name + "'");
    }
    return product_with_Zn(t, extra);
}

}  // namespace

CentralTower tower_from_json(const Json& j) {
    if (j.is_string()) return tower_by_name(j.get<std::string>());
    if (!j.is_object()) throw DomainError("tower must be a catalog name or an object");
    require_keys(j, {"name", "layers", "bracket11", "bracket21"}, "tower");
    CentralTower t;
    t.name = j.value("name", std::string("tower"));
    for (const Json& l : j.at("layers")) {
        require_keys(l, {"free_rank", "torsion", "names"}, "tower layer");
        TowerLayer layer;
        layer.free_rank = l.value("free_rank", 0u);
        if (l.contains("torsion")) layer.torsion = vector_from_json(l.at("torsion"));
        if (l.contains("names")) layer.names = l.at("names").get<std::vector<std::string>>();
        t.layers.push_back(std::move(layer));
    }
    if (j.contains("bracket11"))
        for (const Json& b : j.at("bracket11")) {
            require_keys(b, {"i", "j", "value"}, "bracket11 entry");
            t.bracket11[{b.at("i").get<std::size_t>(), b.at("j").get<std::size_t>()}] = vector_from_json(b.at("value"));
        }
    if (j.contains("bracket21"))
        for (const Json& b : j.at("bracket21")) {
            require_keys(b, {"a", "j", "value"}, "bracket21 entry");
            t.bracket21[{b.at("a").get<std::size_t>(), b.at("j").get<std::size_t>()}] = vector_from_json(b.at("value"));
        }
    try {
        t.validate();
    } catch (const ValidationError& e) {
        throw DomainError(e.what());
    }
    return t;
}

Json endo_to_json(const EndoSpec& e) {
    Json a = Json::array();
    for (const FreeWord& w : e.images()) a.push_back(w.to_string());
    return a;
}

EndoSpec endo_from_json(const Json& j, unsigned rank) {
    if (!j.is_array()) throw DomainError("endomorphism must be an array of image words");
    std::vector<FreeWord> images;
    for (const Json& w : j) {
        if (!w.is_string()) throw DomainError("image word must be a string");
        images.push_back(FreeWord::parse(w.get<std::string>(), rank));
    }
    if (rank && images.size() != rank) throw DomainError("need one image per generator");
    return EndoSpec(std::move(images));
}

void require_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw DomainError(where + " must be an object");
    for (const auto& item : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; }))
            throw DomainError(where + ": unknown field \"" + item.key() + "\"");
    }
}

}  // namespace reid
