#pragma once

// JSON encodings shared by certificates, reports and the CLI. Integers are
// decimal strings; plain JSON numbers are accepted on input.

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "reid/catalog.hpp"
#include "reid/exactla.hpp"
#include "reid/freenilp.hpp"

namespace reid {

using Json = nlohmann::ordered_json;

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);
Json cardinal_to_json(const Cardinal& c);  // "infinity" or decimal string
Cardinal cardinal_from_json(const Json& j);

Json matrix_to_json(const IntMatrix& m);  // row-major array of rows
/// Rejects ragged input; an empty array with expected_rows gives rows x 0.
IntMatrix matrix_from_json(const Json& j, std::size_t expected_rows = 0);

Json vector_to_json(const std::vector<Integer>& v);
std::vector<Integer> vector_from_json(const Json& j);

Json klein_aut_to_json(const KleinAut& a);
KleinAut klein_aut_from_json(const Json& j);  // string "b,r=2" or object

Json tower_to_json(const CentralTower& t);
/// Catalog name ("Q42", "G53", "N_2", "Heis_3", "G53xZ2") or inline object.
CentralTower tower_from_json(const Json& j);

Json endo_to_json(const EndoSpec& e);
EndoSpec endo_from_json(const Json& j, unsigned rank);  // array of words

/// Throws DomainError naming the first key of obj outside allowed.
void require_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where);

}  // namespace reid
