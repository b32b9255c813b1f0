#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "reid/reidemeister.hpp"

namespace reid {

Integer ScanReport::count(const std::string& key) const {
    for (const auto& [k, v] : counts)
        if (k == key) return v;
    throw DomainError("scan report has no count '" + key + "'");
}

Json ScanReport::to_json() const {
    Json c = Json::object();
    for (const auto& [k, v] : counts) c[k] = integer_to_json(v);
    Json j;
    j["scan"] = scan;
    j["params"] = params;
    j["counts"] = std::move(c);
    j["checkpoints"] = checkpoints;
    j["counterexamples"] = counterexamples;
    j["property_holds"] = property_holds;
    return j;
}

// -------------------------------------------------------------------- Q42

namespace {

using Col = std::array<long, 4>;
using Mat = std::array<Col, 4>;  // Mat[j] = image of generator j

// minors of killed source pairs against surviving target pairs
bool pair_ok(const Col& ci, const Col& cj) {
    constexpr int rows[3][2] = {{0, 1}, {1, 3}, {2, 3}};
    for (const auto& r : rows)
        if (ci[r[0]] * cj[r[1]] - ci[r[1]] * cj[r[0]] != 0) return false;
    return true;
}

long det4(const Mat& m) {
    // m[j][i] is entry (i, j); determinant of the transpose is the same
    auto d3 = [&](int skip) {
        long s = 0;
        int idx[3], k = 0;
        for (int j = 0; j < 4; ++j)
            if (j != skip) idx[k++] = j;
        const Col &a = m[idx[0]], &b = m[idx[1]], &c = m[idx[2]];
        s += a[1] * (b[2] * c[3] - b[3] * c[2]);
        s -= a[2] * (b[1] * c[3] - b[3] * c[1]);
        s += a[3] * (b[1] * c[2] - b[2] * c[1]);
        return s;
    };
    long s = 0;
    for (int j = 0; j < 4; ++j) s += (j % 2 ? -1 : 1) * m[j][0] * d3(j);
    return s;
}

IntMatrix to_matrix(const Mat& m) {
    IntMatrix r(4, 4);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) r(i, j) = m[j][i];
    return r;
}

struct Q42Partial {
    Integer lifting = 0;
    Integer unimodular = 0;
    Integer infinite = 0;
    Integer m_eigen_one = 0;  // det(I-M) = 0
    Integer n_eigen_one_only = 0;
    std::vector<Json> counterexamples;
    std::vector<IntMatrix> seen_checkpoints;
};

const std::array<IntMatrix, 2>& q42_checkpoints() {
    static const std::array<IntMatrix, 2> cps = {
        IntMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}},  // b4 = a3 = 1, c1 = d2 = -1
        IntMatrix{{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}, // a1 = b2 = c3 = d4 = -1
    };
    return cps;
}

Json q42_eval(const IntMatrix& m) {
    IntMatrix n = q42_induced_N(m);
    Cardinal rm = reid_fg_abelian(m), rn = reid_fg_abelian(n);
    return Json{{"matrix", matrix_to_json(m)},
                {"N", matrix_to_json(n)},
                {"det_M_minus_I", integer_to_json(det(m - IntMatrix::identity(4)))},
                {"det_N_minus_I", integer_to_json(det(n - IntMatrix::identity(3)))},
                {"R", cardinal_to_json(rm * rn)}};
}

void q42_leaf(const Mat& m, Q42Partial& out) {
    ++out.lifting;
    long d = det4(m);
    if (d != 1 && d != -1) return;
    ++out.unimodular;
    IntMatrix mm = to_matrix(m);
    IntMatrix n = q42_induced_N(mm);
    Cardinal rm = reid_fg_abelian(mm), rn = reid_fg_abelian(n);
    if (rm.is_infinite()) ++out.m_eigen_one;
    else if (rn.is_infinite()) ++out.n_eigen_one_only;
    if ((rm * rn).is_infinite()) ++out.infinite;
    else out.counterexamples.push_back(q42_eval(mm));
    for (const IntMatrix& cp : q42_checkpoints())
        if (cp == mm) out.seen_checkpoints.push_back(mm);
}

}  // namespace

ScanReport scan_q42(unsigned bound, unsigned threads) {
    if (bound == 0) throw DomainError("scan_q42: bound must be at least 1");
    if (bound > 1000) throw DomainError("scan_q42: bound above 1000 is not supported");
    threads = std::max(1u, threads);

    std::vector<Col> cols;
    const long b = bound;
    for (long a0 = -b; a0 <= b; ++a0)
        for (long a1 = -b; a1 <= b; ++a1)
            for (long a2 = -b; a2 <= b; ++a2)
                for (long a3 = -b; a3 <= b; ++a3) cols.push_back({a0, a1, a2, a3});

    // order of assignment: x, z (check x∧z), y (check y∧z), w (check x∧w)
    std::atomic<std::size_t> next{0};
    std::vector<Q42Partial> parts(threads);
    auto work = [&](unsigned t) {
        Q42Partial& out = parts[t];
        Mat m{};
        for (std::size_t i0; (i0 = next.fetch_add(1)) < cols.size();) {
            m[0] = cols[i0];
            for (const Col& c2 : cols) {
                if (!pair_ok(m[0], c2)) continue;
                m[2] = c2;
                for (const Col& c1 : cols) {
                    if (!pair_ok(c1, m[2])) continue;
                    m[1] = c1;
                    for (const Col& c3 : cols) {
                        if (!pair_ok(m[0], c3)) continue;
                        m[3] = c3;
                        q42_leaf(m, out);
                    }
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();

    Q42Partial total;
    std::vector<IntMatrix> seen;
    for (Q42Partial& p : parts) {
        total.lifting += p.lifting;
        total.unimodular += p.unimodular;
        total.infinite += p.infinite;
        total.m_eigen_one += p.m_eigen_one;
        total.n_eigen_one_only += p.n_eigen_one_only;
        for (Json& c : p.counterexamples) total.counterexamples.push_back(std::move(c));
        for (IntMatrix& m : p.seen_checkpoints) seen.push_back(std::move(m));
    }
    // chunks finish in any order; sort for byte-stable output
    std::sort(total.counterexamples.begin(), total.counterexamples.end(),
              [](const Json& a, const Json& b) { return a.dump() < b.dump(); });

    Integer raw;
    mpz_ui_pow_ui(raw.get_mpz_t(), 2 * bound + 1, 16);
    ScanReport r;
    r.scan = "q42";
    r.params = Json{{"bound", bound}};
    r.counts = {{"raw_candidates", raw},
                {"lifting", total.lifting},
                {"lifting_unimodular", total.unimodular},
                {"infinite", total.infinite},
                {"det_I_minus_M_zero", total.m_eigen_one},
                {"det_I_minus_N_zero_only", total.n_eigen_one_only},
                {"finite", Integer(static_cast<unsigned long>(total.counterexamples.size()))}};
    const char* labels[2] = {"step2", "step3"};
    for (std::size_t i = 0; i < 2; ++i) {
        const IntMatrix& cp = q42_checkpoints()[i];
        Json j = q42_eval(cp);
        j["label"] = labels[i];
        j["encountered"] = std::find(seen.begin(), seen.end(), cp) != seen.end();
        r.checkpoints.push_back(std::move(j));
    }
    r.counterexamples = std::move(total.counterexamples);
    r.property_holds = r.counterexamples.empty();
    return r;
}

// -------------------------------------------------------------------- G53

ScanReport scan_g53(unsigned b_bound) {
    const CentralTower g = build_G53();
    ScanReport r;
    r.scan = "g53";
    r.params = Json{{"b_bound", b_bound}};
    Integer tuples = 0, infinite = 0, det_one = 0, eigen_one = 0;
    const long bb = b_bound;
    for (int a : {1, -1})
        for (int d : {1, -1})
            for (long b = -bb; b <= bb; ++b) {
                ++tuples;
                IntMatrix m{{a, 0}, {b, d}};
                TowerEndo e = derive_tower_endo(g, m);
                Cardinal v = *reid_central_tower(g, e).value;
                if (a * d == 1) ++det_one;
                else ++eigen_one;
                Json row{{"a", a}, {"b", b}, {"d", d}, {"R", cardinal_to_json(v)}};
                if (v.is_infinite()) ++infinite;
                else r.counterexamples.push_back(row);
                const bool checkpoint = (a == 1 && d == 1 && b == 0) || (a == -1 && d == -1 && b == 3) ||
                                        (a == 1 && d == -1 && b == 2);
                if (checkpoint) {
                    row["layer_matrices"] = Json::array();
                    for (const IntMatrix& l : e.layer_matrices) row["layer_matrices"].push_back(matrix_to_json(l));
                    r.checkpoints.push_back(std::move(row));
                }
            }
    r.counts = {{"tuples", tuples}, {"infinite", infinite}, {"det_one", det_one}, {"eigenvalue_one", eigen_one}};
    r.property_holds = r.counterexamples.empty();
    return r;
}

}  // namespace reid
