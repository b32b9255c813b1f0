#pragma once

// Certificate construction helpers shared by the generator sources. The
// verifier does not include this header.

#include "reid/reidemeister.hpp"

namespace reid::detail {

inline Certificate fact(std::string claim, std::string op, Json args, Json result, std::optional<Cardinal> value = {}) {
    Certificate c;
    c.claim = std::move(claim);
    c.leaf_op = std::move(op);
    c.leaf_args = std::move(args);
    c.leaf_result = std::move(result);
    c.value = std::move(value);
    return c;
}

inline Certificate node(std::string claim, std::string rule, std::vector<Certificate> premises,
                        std::optional<Cardinal> value) {
    Certificate c;
    c.claim = std::move(claim);
    c.rule = std::move(rule);
    c.premises = std::move(premises);
    c.value = std::move(value);
    return c;
}

/// ABELIAN_DET over a reid_fg_abelian fact; `source` is the fact that
/// produced the matrix, if any.
Certificate abelian_certificate(const std::string& what, const IntMatrix& m, const IntMatrix& relations,
                                std::optional<Certificate> source = {});

/// First `depth` layers of t.
CentralTower tower_prefix(const CentralTower& t, std::size_t depth);

}  // namespace reid::detail
