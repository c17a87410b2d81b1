// Reducer constructions and the certificate verifier. All searched colourings
// fix N(R) blue and N^2(R) red and enumerate interior masks in ascending
// order, so results are deterministic; every construction re-verifies its
// output before returning it.

#include "cubiso/reducers.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "cubiso/canonical.hpp"

namespace cubiso {

namespace {

// ---- region assembly ----

struct RegionInfo {
    std::vector<Vertex> r, nr, n2r;      // disjoint, each sorted ascending
    std::vector<Vertex> region;          // sorted union = B_2(R)
    std::vector<int> rpos, nrpos, n2pos; // positions within region
};

int pos_of(const std::vector<Vertex>& sorted, Vertex v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) return -1;
    return static_cast<int>(it - sorted.begin());
}

RegionInfo build_region(const CubicGraph& g, std::vector<Vertex> r) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    RegionInfo info;
    info.r = std::move(r);
    info.nr = sphere(g, info.r, 1);
    info.n2r = sphere(g, info.r, 2);
    info.region = info.r;
    info.region.insert(info.region.end(), info.nr.begin(), info.nr.end());
    info.region.insert(info.region.end(), info.n2r.begin(), info.n2r.end());
    std::sort(info.region.begin(), info.region.end());
    for (Vertex v : info.r) info.rpos.push_back(pos_of(info.region, v));
    for (Vertex v : info.nr) info.nrpos.push_back(pos_of(info.region, v));
    for (Vertex v : info.n2r) info.n2pos.push_back(pos_of(info.region, v));
    return info;
}

// N(R) blue, N^2(R) red, everything else blue until a mask overrides it.
std::vector<Color> base_colors(const RegionInfo& info) {
    std::vector<Color> c(info.region.size(), Color::Blue);
    for (int p : info.n2pos) c[p] = Color::Red;
    return c;
}

std::map<CanonicalForm, long> stripped_counts(const ComponentCensus& c, int t) {
    auto m = c.counts;
    for (int l = 1; l <= t; ++l) m.erase(path_form(l));
    return m;
}

// ---- bounded pair search ----

constexpr int kMaxInterior = 12;

struct SearchTables {
    RegionInfo info;
    std::vector<Color> base;
    int bits = 0;
    std::vector<int> red_count, r_pt;
    std::vector<std::array<long, 7>> red_paths;  // red P_l counts, l = 1..6
    std::vector<std::vector<int>> buckets;       // masks sharing a census key
    std::vector<int> bucket_of;
};

std::vector<Color> colors_for(const SearchTables& tbl, int mask) {
    auto c = tbl.base;
    for (int k = 0; k < tbl.bits; ++k)
        if (mask >> k & 1) c[tbl.info.rpos[k]] = Color::Red;
    return c;
}

// Census key shared by both members of an admissible pair: censuses outside
// P_1..P_t, the oversized component sets, and b_{P_t}.
std::string census_key(const ComponentCensus& red, const ComponentCensus& blue, int t) {
    std::string s;
    auto append_side = [&](const ComponentCensus& c) {
        for (const auto& [form, cnt] : stripped_counts(c, t)) {
            auto len = static_cast<std::uint32_t>(form.bytes.size());
            s.append(reinterpret_cast<const char*>(&len), 4);
            s += form.bytes;
            s += ':';
            s += std::to_string(cnt);
            s += ';';
        }
        s += '#';
        for (const auto& set : c.oversized_sets) {
            for (Vertex v : set) {
                s += std::to_string(v);
                s += ',';
            }
            s += '|';
        }
        s += '$';
    };
    append_side(red);
    append_side(blue);
    s += std::to_string(blue.path_count(t));
    return s;
}

SearchTables build_tables(const CubicGraph& g, RegionInfo info, int t) {
    SearchTables tbl;
    tbl.info = std::move(info);
    tbl.base = base_colors(tbl.info);
    tbl.bits = static_cast<int>(tbl.info.r.size());
    if (tbl.bits > kMaxInterior)
        throw std::invalid_argument("reducer search supports at most " +
                                    std::to_string(kMaxInterior) + " interior vertices, got " +
                                    std::to_string(tbl.bits));
    int total = 1 << tbl.bits;
    tbl.red_count.resize(total);
    tbl.r_pt.resize(total);
    tbl.red_paths.resize(total);
    tbl.bucket_of.resize(total);
    std::map<std::string, int> key_ids;
    for (int mask = 0; mask < total; ++mask) {
        auto colors = colors_for(tbl, mask);
        auto red = region_census(g, tbl.info.region, colors, Color::Red);
        auto blue = region_census(g, tbl.info.region, colors, Color::Blue);
        tbl.red_count[mask] = static_cast<int>(
            std::count(colors.begin(), colors.end(), Color::Red));
        for (int l = 1; l <= 6; ++l) tbl.red_paths[mask][l] = red.path_count(l);
        tbl.r_pt[mask] = static_cast<int>(red.path_count(t));
        auto key = census_key(red, blue, t);
        auto [it, fresh] = key_ids.try_emplace(key, static_cast<int>(tbl.buckets.size()));
        if (fresh) tbl.buckets.emplace_back();
        tbl.bucket_of[mask] = it->second;
        tbl.buckets[it->second].push_back(mask);
    }
    return tbl;
}

// Per-side admissibility predicates; null accepts every mask.
struct SidePredicates {
    std::function<bool(int)> accept1, accept2;
};

// First (psi1, psi2) mask pair in lexicographic order meeting (i)/(i'), the
// shared census key, and the r_{P_t} drop.
std::optional<std::pair<int, int>> find_pair(const SearchTables& tbl, ReducerKind kind,
                                             const SidePredicates& preds) {
    int total = 1 << tbl.bits;
    for (int a = 0; a < total; ++a) {
        if (preds.accept1 && !preds.accept1(a)) continue;
        for (int b : tbl.buckets[tbl.bucket_of[a]]) {
            if (b == a) continue;
            int want = kind == ReducerKind::Full ? tbl.red_count[a] : tbl.red_count[a] - 1;
            if (tbl.red_count[b] != want) continue;
            if (tbl.r_pt[b] != tbl.r_pt[a] - 1) continue;
            if (preds.accept2 && !preds.accept2(b)) continue;
            return std::make_pair(a, b);
        }
    }
    return std::nullopt;
}

ReducerCertificate make_certificate(const CubicGraph& g, const SearchTables& tbl, int t,
                                    ReducerKind kind, std::pair<int, int> masks,
                                    std::string provenance) {
    ReducerCertificate cert;
    cert.t = t;
    cert.kind = kind;
    cert.r = tbl.info.r;
    cert.region = tbl.info.region;
    cert.psi1 = colors_for(tbl, masks.first);
    cert.psi2 = colors_for(tbl, masks.second);
    cert.provenance = std::move(provenance);
    auto vr = verify_reducer(g, cert);
    if (!vr.certified)
        throw std::logic_error("internal: searched certificate fails verification: " +
                               vr.violation);
    return cert;
}

// Size of the monochromatic blue component of start inside the region.
int blue_component_size(const CubicGraph& g, const RegionInfo& info,
                        const std::vector<Color>& colors, Vertex start) {
    int sp = pos_of(info.region, start);
    if (sp < 0 || colors[sp] != Color::Blue) return 0;
    std::vector<char> seen(info.region.size(), 0);
    std::vector<int> stack{sp};
    seen[sp] = 1;
    int size = 0;
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        ++size;
        for (Vertex w : g.neighbors(info.region[p])) {
            int wp = pos_of(info.region, w);
            if (wp >= 0 && !seen[wp] && colors[wp] == Color::Blue) {
                seen[wp] = 1;
                stack.push_back(wp);
            }
        }
    }
    return size;
}

// ---- path validation helpers ----

std::vector<Vertex> slice(const std::vector<Vertex>& q, int lo, int hi) {
    return {q.begin() + lo, q.begin() + hi + 1};
}

void check_vertices(const CubicGraph& g, const std::vector<Vertex>& q, const char* what) {
    for (Vertex v : q)
        if (v < 0 || v >= g.n())
            throw std::invalid_argument(std::string(what) + ": vertex out of range");
}

bool is_induced_path(const CubicGraph& g, const std::vector<Vertex>& q) {
    int k = static_cast<int>(q.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (q[i] == q[j]) return false;
            bool edge = g.has_edge(q[i], q[j]);
            if (j == i + 1 ? !edge : edge) return false;
        }
    return true;
}

// External neighbours r[k] of the interior vertices of a geodesic; endpoints
// keep -1. Each interior vertex of an induced path has exactly one.
std::vector<Vertex> external_attachments(const CubicGraph& g, const std::vector<Vertex>& q) {
    int L = static_cast<int>(q.size());
    std::vector<Vertex> r(L, -1);
    for (int k = 1; k + 1 < L; ++k)
        for (Vertex w : g.neighbors(q[k]))
            if (w != q[k - 1] && w != q[k + 1]) r[k] = w;
    return r;
}

// ---- collision route ----

// r[i] = r[j] with j - i <= 2: the shared neighbour sees two path vertices one
// or two steps apart, which is exactly the chord labelling on a window of the
// geodesic; the window is taken forward when it fits, mirrored otherwise.
ReducerCertificate collision_route(const CubicGraph& g, const std::vector<Vertex>& q,
                                   const std::vector<Vertex>& r, int i, int j, int t,
                                   std::string* window_name) {
    int last = static_cast<int>(q.size()) - 1;
    Vertex v = r[i];
    std::vector<Vertex> w;
    if (j == i + 1) {
        if (i + t <= last) {
            w = slice(q, i - 1, i + t);
            *window_name = "short-forward";
        } else if (i - t + 1 >= 0) {
            w.push_back(q[i + 2]);
            for (int m = i + 1; m >= i - t + 1; --m) w.push_back(q[m]);
            *window_name = "short-mirrored";
        } else {
            throw std::logic_error("collision window fits neither orientation");
        }
    } else {
        if (i + t + 1 <= last) {
            w = slice(q, i - 1, i + t + 1);
            *window_name = "long-forward";
        } else if (i - t + 1 >= 0) {
            w.push_back(q[i + 3]);
            for (int m = i + 2; m >= i - t + 1; --m) w.push_back(q[m]);
            *window_name = "long-mirrored";
        } else {
            throw std::logic_error("collision window fits neither orientation");
        }
    }
    auto cert = chord_reducer(g, w, v);
    if (cert.t != t)
        throw std::logic_error("collision window produced the wrong target order");
    return cert;
}

// ---- composite internals ----

std::optional<ReducerCertificate> composite_impl(const CubicGraph& g, Vertex v, int t,
                                                 int radius_budget, std::string* why) {
    if (t < 4 || t > 6) throw std::invalid_argument("composite route requires t in 4..6");
    if (v < 0 || v >= g.n()) throw std::invalid_argument("composite centre out of range");
    auto distv = bfs_distances(g, v);
    auto fits_budget = [&](const ReducerCertificate& cert) {
        for (Vertex x : cert.region)
            if (distv[x] < 0 || distv[x] > radius_budget) return false;
        return true;
    };
    auto scan = ball(g, v, radius_budget);

    std::optional<std::vector<Vertex>> q1;
    for (Vertex a : scan)
        if ((q1 = find_geodesic_of_length(g, a, 14, 14))) break;
    if (!q1) {
        if (why) *why = "no length-14 geodesic inside the budget ball";
        return std::nullopt;
    }
    auto u1 = unbalanced_reducer(g, *q1, t);
    if (u1.kind == ReducerKind::Full) {
        if (!fits_budget(u1)) {
            if (why) *why = "first-ball certificate escapes the budget ball";
            return std::nullopt;
        }
        u1.provenance = "composite-direct(first) -> " + u1.provenance;
        return u1;
    }

    auto distq1 = bfs_distances(g, *q1);
    std::optional<std::vector<Vertex>> q2;
    for (Vertex a : scan) {
        if (distq1[a] < 10) continue;
        auto cand = find_geodesic_of_length(g, a, 14, 14);
        if (!cand) continue;
        bool far = true;
        for (Vertex x : *cand)
            if (distq1[x] < 10) far = false;
        if (!far) continue;
        q2 = std::move(cand);
        break;
    }
    if (!q2) {
        if (why) *why = "no second length-14 geodesic at distance >= 10 from the first";
        return std::nullopt;
    }
    auto u2 = unbalanced_reducer(g, *q2, t);
    if (u2.kind == ReducerKind::Full) {
        if (!fits_budget(u2)) {
            if (why) *why = "second-ball certificate escapes the budget ball";
            return std::nullopt;
        }
        u2.provenance = "composite-direct(second) -> " + u2.provenance;
        return u2;
    }
    // The trichotomy branch depends only on the attachment structure of the
    // geodesic, so a Half outcome at t forces a Half outcome at t-1.
    auto u3 = unbalanced_reducer(g, *q2, t - 1);
    if (u3.kind != ReducerKind::Half)
        throw std::logic_error("trichotomy branch changed between t and t-1");
    return compose_half_reducers(g, v, u1, u3, radius_budget, why);
}

}  // namespace

// ---- verifier ----

VerifyReducerResult verify_reducer(const CubicGraph& g, const ReducerCertificate& c) {
    auto fail = [](std::string s) { return VerifyReducerResult{false, std::move(s)}; };
    if (c.t < 3 || c.t > 6) return fail("malformed: t outside 3..6");
    if (c.r.empty()) return fail("malformed: empty R");
    for (Vertex v : c.r)
        if (v < 0 || v >= g.n()) return fail("malformed: R vertex out of range");
    if (!std::is_sorted(c.r.begin(), c.r.end()) ||
        std::adjacent_find(c.r.begin(), c.r.end()) != c.r.end())
        return fail("malformed: R must be sorted and duplicate-free");
    auto info = build_region(g, c.r);
    if (info.region != c.region) return fail("malformed: region is not B_2(R)");
    if (c.psi1.size() != c.region.size() || c.psi2.size() != c.region.size())
        return fail("malformed: colouring not aligned with region");

    long red1 = std::count(c.psi1.begin(), c.psi1.end(), Color::Red);
    long red2 = std::count(c.psi2.begin(), c.psi2.end(), Color::Red);
    if (c.kind == ReducerKind::Full) {
        if (red1 != red2) return fail("(i): red counts differ");
    } else {
        if (red1 != red2 + 1) return fail("(i'): psi1 must have exactly one more red");
    }

    for (int p : info.nrpos)
        if (c.psi1[p] != Color::Blue || c.psi2[p] != Color::Blue)
            return fail("(ii): red vertex in N(R)");
    for (int p : info.n2pos)
        if (c.psi1[p] != Color::Red || c.psi2[p] != Color::Red)
            return fail("(ii): blue vertex in N^2(R)");

    auto red_a = region_census(g, c.region, c.psi1, Color::Red);
    auto red_b = region_census(g, c.region, c.psi2, Color::Red);
    auto blue_a = region_census(g, c.region, c.psi1, Color::Blue);
    auto blue_b = region_census(g, c.region, c.psi2, Color::Blue);

    if (stripped_counts(red_a, c.t) != stripped_counts(red_b, c.t))
        return fail("(iii): red censuses differ outside P_1..P_" + std::to_string(c.t));
    if (red_a.oversized_sets != red_b.oversized_sets)
        return fail("(iii): oversized red components differ");
    if (stripped_counts(blue_a, c.t) != stripped_counts(blue_b, c.t))
        return fail("(iii): blue censuses differ outside P_1..P_" + std::to_string(c.t));
    if (blue_a.oversized_sets != blue_b.oversized_sets)
        return fail("(iii): oversized blue components differ");

    if (red_b.path_count(c.t) != red_a.path_count(c.t) - 1)
        return fail("(iv): r_{P_t} must drop by exactly one");
    if (blue_a.path_count(c.t) != blue_b.path_count(c.t))
        return fail("(iv): b_{P_t} must be unchanged");
    return {true, ""};
}

// ---- predicates and simple constructions ----

bool neighbourhood_independent(const CubicGraph& g, const std::vector<Vertex>& p) {
    check_vertices(g, p, "neighbourhood_independent");
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto nbr = sphere(g, sorted, 1);
    for (size_t i = 0; i < nbr.size(); ++i)
        for (size_t j = i + 1; j < nbr.size(); ++j)
            if (g.has_edge(nbr[i], nbr[j])) return false;
    return true;
}

std::optional<ReducerCertificate> geodesic_reducer(const CubicGraph& g, Vertex v, int t) {
    if (t < 3 || t > 6) throw std::invalid_argument("geodesic route requires t in 3..6");
    if (v < 0 || v >= g.n()) throw std::invalid_argument("geodesic start out of range");
    if (girth(g) < 7) throw std::invalid_argument("geodesic route requires girth >= 7");
    auto path = find_geodesic_of_length(g, v, t + 1, t + 1);
    if (!path) return std::nullopt;

    auto info = build_region(g, *path);
    ReducerCertificate cert;
    cert.t = t;
    cert.kind = ReducerKind::Full;
    cert.r = info.r;
    cert.region = info.region;
    cert.psi1 = base_colors(info);
    cert.psi2 = cert.psi1;
    for (Vertex x : *path) {
        cert.psi1[pos_of(info.region, x)] = Color::Red;
        cert.psi2[pos_of(info.region, x)] = Color::Red;
    }
    cert.psi1[pos_of(info.region, (*path)[t])] = Color::Blue;
    cert.psi2[pos_of(info.region, (*path)[t - 1])] = Color::Blue;
    cert.provenance = "geodesic(t=" + std::to_string(t) + ", v=" + std::to_string(v) +
                      ", w=" + std::to_string(path->back()) + ")";
    auto vr = verify_reducer(g, cert);
    if (!vr.certified)
        throw std::logic_error("geodesic construction fails verification: " + vr.violation);
    return cert;
}

// ---- chord route ----

ReducerCertificate chord_reducer(const CubicGraph& g, const std::vector<Vertex>& q, Vertex v) {
    check_vertices(g, q, "chord_reducer");
    if (v < 0 || v >= g.n()) throw std::invalid_argument("chord_reducer: vertex out of range");
    if (q.size() < 5) throw std::invalid_argument("chord path too short");
    if (!is_induced_path(g, q)) throw std::invalid_argument("chord path not induced");
    if (std::find(q.begin(), q.end(), v) != q.end())
        throw std::invalid_argument("chord vertex lies on the path");
    if (!g.has_edge(v, q[1]))
        throw std::invalid_argument("chord vertex must be adjacent to the second path vertex");
    int len = static_cast<int>(q.size());
    int t;
    const char* form;
    if (g.has_edge(v, q[2]) && len - 2 >= 3 && len - 2 <= 6) {
        t = len - 2;  // (u, x, z, q_1, ..., q_{t-1})
        form = "chord-short";
    } else if (g.has_edge(v, q[3]) && len - 3 >= 3 && len - 3 <= 6) {
        t = len - 3;  // (u, x, y, z, q_1, ..., q_{t-1})
        form = "chord-long";
    } else {
        throw std::invalid_argument("chord vertex adjacency matches neither labelling");
    }

    auto r = q;
    r.push_back(v);
    auto tbl = build_tables(g, build_region(g, r), t);
    // Red components of a certified chord pair: P_t with a P_1 in psi1, and
    // P_{t-1} with a P_2 in psi2 (two P_2 when t = 3).
    SidePredicates preds;
    preds.accept1 = [&tbl, t](int m) {
        return tbl.red_paths[m][t] >= 1 && tbl.red_paths[m][1] >= 1;
    };
    preds.accept2 = [&tbl, t](int m) {
        if (t == 3) return tbl.red_paths[m][2] >= 2;
        return tbl.red_paths[m][t - 1] >= 1 && tbl.red_paths[m][2] >= 1;
    };
    auto pair = find_pair(tbl, ReducerKind::Full, preds);
    if (!pair)
        throw std::logic_error(std::string("chord reducer search exhausted (") + form +
                               ", t=" + std::to_string(t) + ")");
    return make_certificate(g, tbl, t, ReducerKind::Full, *pair,
                            std::string(form) + "(t=" + std::to_string(t) + ")");
}

// ---- length-14 geodesic trichotomy ----

ReducerCertificate unbalanced_reducer(const CubicGraph& g, const std::vector<Vertex>& q, int t) {
    if (t < 3 || t > 6) throw std::invalid_argument("unbalanced route requires t in 3..6");
    check_vertices(g, q, "unbalanced_reducer");
    if (q.size() != 15) throw std::invalid_argument("unbalanced route requires a length-14 path");
    for (int k = 0; k + 1 < 15; ++k)
        if (!g.has_edge(q[k], q[k + 1]))
            throw std::invalid_argument("unbalanced route: q is not a path");
    if (bfs_distances(g, q[0])[q[14]] != 14)
        throw std::invalid_argument("unbalanced route: q is not a geodesic");

    auto r = external_attachments(g, q);

    // Collisions first: a repeated attachment within the interior forces the
    // chord labelling. Geodesy caps the spacing at two.
    for (int i = 1; i <= 13; ++i)
        for (int j = i + 1; j <= 13; ++j)
            if (r[i] == r[j]) {
                if (j - i > 2)
                    throw std::logic_error("attachment collision spaced more than 2 on a geodesic");
                std::string window;
                auto cert = collision_route(g, q, r, i, j, t, &window);
                cert.provenance = "unbalanced-collision(i=" + std::to_string(i) +
                                  ",j=" + std::to_string(j) + "," + window + ") -> " +
                                  cert.provenance;
                return cert;
            }

    // Attachments distinct. Full chain of r_k r_{k+1} edges: chord labelling
    // on three path vertices followed by the chain.
    bool chain = true;
    for (int k = 2; k <= 9; ++k)
        if (!g.has_edge(r[k], r[k + 1])) chain = false;
    if (chain) {
        std::vector<Vertex> qp = {q[1], q[2], q[3]};
        for (int k = 3; k <= t + 2; ++k) qp.push_back(r[k]);
        auto cert = chord_reducer(g, qp, r[2]);
        if (cert.t != t) throw std::logic_error("chain window produced the wrong target order");
        cert.provenance = "unbalanced-chain -> " + cert.provenance;
        return cert;
    }

    // A gap in the chain: Half reducer on the window around the first gap plus
    // both attachments. The blue component of q[k] is a P_1 in psi1 and a P_2
    // in psi2; all neighbours of q[k] and q[k+1] lie inside R, so that
    // component cannot leak into N(R).
    int gap = -1;
    for (int k = 2; k <= 9 && gap < 0; ++k)
        if (!g.has_edge(r[k], r[k + 1])) gap = k;
    auto rset = slice(q, gap - 1, gap + t - 1);
    rset.push_back(r[gap]);
    rset.push_back(r[gap + 1]);
    auto tbl = build_tables(g, build_region(g, rset), t);
    Vertex qk = q[gap];
    SidePredicates preds;
    preds.accept1 = [&g, &tbl, qk](int m) {
        return blue_component_size(g, tbl.info, colors_for(tbl, m), qk) == 1;
    };
    preds.accept2 = [&g, &tbl, qk](int m) {
        return blue_component_size(g, tbl.info, colors_for(tbl, m), qk) == 2;
    };
    auto pair = find_pair(tbl, ReducerKind::Half, preds);
    if (!pair)
        throw std::logic_error("unbalanced gap search exhausted (i=" + std::to_string(gap) +
                               ", t=" + std::to_string(t) + ")");
    return make_certificate(g, tbl, t, ReducerKind::Half, *pair,
                            "unbalanced-gap(i=" + std::to_string(gap) +
                                ", t=" + std::to_string(t) + ")");
}

// ---- composite route ----

std::optional<ReducerCertificate> compose_half_reducers(const CubicGraph& g, Vertex v,
                                                        const ReducerCertificate& s1,
                                                        const ReducerCertificate& s2,
                                                        int radius_budget, std::string* why) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument("composite centre out of range");
    if (s1.kind != ReducerKind::Half || s2.kind != ReducerKind::Half)
        throw std::invalid_argument("composite requires two Half certificates");
    if (s1.t < 4 || s1.t > 6 || s2.t != s1.t - 1)
        throw std::invalid_argument("composite requires orders t and t-1 with t in 4..6");
    for (const auto* s : {&s1, &s2}) {
        auto vr = verify_reducer(g, *s);
        if (!vr.certified)
            throw std::invalid_argument("composite input not certified: " + vr.violation);
    }
    std::vector<Vertex> overlap;
    std::set_intersection(s1.region.begin(), s1.region.end(), s2.region.begin(),
                          s2.region.end(), std::back_inserter(overlap));
    if (!overlap.empty()) throw std::invalid_argument("half reducer regions overlap");

    auto distv = bfs_distances(g, v);
    int rho = 0;
    for (const auto* s : {&s1, &s2})
        for (Vertex x : s->region) {
            if (distv[x] < 0) throw std::invalid_argument("half reducer unreachable from centre");
            rho = std::max(rho, distv[x]);
        }
    if (rho + 2 > radius_budget) {
        if (why)
            *why = "composite region needs radius " + std::to_string(rho + 2) +
                   " but the budget is " + std::to_string(radius_budget);
        return std::nullopt;
    }

    // R* = B_rho(v); inside it both colourings are blue apart from the two
    // half regions, which keep their own pair (the second with colours
    // exchanged so the one-red surpluses cancel).
    auto info = build_region(g, ball(g, v, rho));
    ReducerCertificate cert;
    cert.t = s1.t;
    cert.kind = ReducerKind::Full;
    cert.r = info.r;
    cert.region = info.region;
    cert.psi1 = base_colors(info);
    cert.psi2 = cert.psi1;
    for (size_t k = 0; k < s1.region.size(); ++k) {
        int p = pos_of(info.region, s1.region[k]);
        if (p < 0) throw std::logic_error("half reducer region escapes the composite region");
        cert.psi1[p] = s1.psi1[k];
        cert.psi2[p] = s1.psi2[k];
    }
    for (size_t k = 0; k < s2.region.size(); ++k) {
        int p = pos_of(info.region, s2.region[k]);
        if (p < 0) throw std::logic_error("half reducer region escapes the composite region");
        cert.psi1[p] = opposite(s2.psi1[k]);
        cert.psi2[p] = opposite(s2.psi2[k]);
    }
    cert.provenance = "composite(t=" + std::to_string(s1.t) + "; s1=" + s1.provenance +
                      "; s2=" + s2.provenance + ")";
    auto vr = verify_reducer(g, cert);
    if (!vr.certified)
        throw std::logic_error("composite assembly fails verification: " + vr.violation);
    return cert;
}

std::optional<ReducerCertificate> composite_reducer(const CubicGraph& g, Vertex v, int t,
                                                    int radius_budget) {
    std::string why;
    return composite_impl(g, v, t, radius_budget, &why);
}

// ---- t = 3 route ----

namespace {

// Case analysis over the attachment chord pattern of a length-20 geodesic.
ReducerCertificate p3_from_geodesic(const CubicGraph& g, const std::vector<Vertex>& q) {
    auto r = external_attachments(g, q);
    auto e = [&](int a, int b) { return g.has_edge(r[a], r[b]); };
    auto third_neighbour = [&](Vertex of, Vertex not1, Vertex not2) {
        for (Vertex w : g.neighbors(of))
            if (w != not1 && w != not2) return w;
        throw std::logic_error("cubic vertex without a third neighbour");
    };

    for (int i = 1; i <= 19; ++i)
        for (int j = i + 1; j <= 19; ++j)
            if (r[i] == r[j]) {
                if (j - i > 2)
                    throw std::logic_error("attachment collision spaced more than 2 on a geodesic");
                std::string window;
                auto cert = collision_route(g, q, r, i, j, 3, &window);
                cert.provenance = "p3-collision(i=" + std::to_string(i) + ",j=" +
                                  std::to_string(j) + "," + window + ") -> " + cert.provenance;
                return cert;
            }

    // (a) a chordless attachment triple.
    for (int i = 3; i <= 9; ++i)
        if (!e(i, i + 1) && !e(i, i + 2) && !e(i + 1, i + 2)) {
            auto rset = slice(q, i - 1, i + 3);
            rset.insert(rset.end(), {r[i], r[i + 1], r[i + 2]});
            auto cert = search_reducer_on(g, rset, 3, ReducerKind::Full);
            if (!cert)
                throw std::logic_error("p3 case (a) search exhausted (i=" + std::to_string(i) + ")");
            cert->provenance = "p3-case-a(i=" + std::to_string(i) + ")";
            return *cert;
        }

    // (b) a chain edge whose endpoint has no further chords on one side: the
    // third neighbour of that endpoint extends a chord labelling.
    for (int i = 3; i <= 10; ++i) {
        if (!e(i, i + 1)) continue;
        if (!e(i, i + 2) && !e(i, i + 3)) {
            Vertex u = third_neighbour(r[i], q[i], r[i + 1]);
            std::vector<Vertex> qp = {u, r[i], q[i], q[i + 1], q[i + 2], q[i + 3]};
            auto cert = chord_reducer(g, qp, r[i + 1]);
            cert.provenance = "p3-case-b(i=" + std::to_string(i) + ",forward) -> " +
                              cert.provenance;
            return cert;
        }
        if (!e(i - 1, i + 1) && !e(i - 2, i + 1)) {
            Vertex u = third_neighbour(r[i + 1], q[i + 1], r[i]);
            std::vector<Vertex> qp = {u, r[i + 1], q[i + 1], q[i], q[i - 1], q[i - 2]};
            auto cert = chord_reducer(g, qp, r[i]);
            cert.provenance = "p3-case-b(i=" + std::to_string(i) + ",mirrored) -> " +
                              cert.provenance;
            return cert;
        }
    }

    // (c) a chain edge insulated on both flanks with one long chord.
    for (int i = 3; i <= 8; ++i) {
        if (!e(i, i + 1)) continue;
        if (e(i + 1, i + 2) || e(i + 1, i + 3) || e(i - 1, i) || e(i - 2, i)) continue;
        if (e(i, i + 3)) {
            auto rset = slice(q, i - 1, i + 3);
            rset.insert(rset.end(), {r[i], r[i + 1], r[i + 2], r[i + 3]});
            auto cert = search_reducer_on(g, rset, 3, ReducerKind::Full);
            if (!cert)
                throw std::logic_error("p3 case (c) search exhausted (i=" + std::to_string(i) + ")");
            cert->provenance = "p3-case-c(i=" + std::to_string(i) + ",forward)";
            return *cert;
        }
        if (e(i - 2, i + 1)) {
            auto rset = slice(q, i - 2, i + 2);
            rset.insert(rset.end(), {r[i - 2], r[i - 1], r[i], r[i + 1]});
            auto cert = search_reducer_on(g, rset, 3, ReducerKind::Full);
            if (!cert)
                throw std::logic_error("p3 case (c) search exhausted (i=" + std::to_string(i) + ")");
            cert->provenance = "p3-case-c(i=" + std::to_string(i) + ",mirrored)";
            return *cert;
        }
    }

    std::string pattern;
    for (int a = 1; a <= 19; ++a)
        for (int b = a + 1; b <= 19; ++b)
            if (e(a, b)) pattern += " r" + std::to_string(a) + "r" + std::to_string(b);
    throw std::logic_error("p3 case analysis found no applicable case; attachment chords:" +
                           pattern);
}

}  // namespace

std::optional<ReducerCertificate> find_p3_reducer(const CubicGraph& g, Vertex v,
                                                  int radius_budget) {
    if (v < 0 || v >= g.n()) throw std::invalid_argument("p3 centre out of range");
    auto distv = bfs_distances(g, v);
    for (Vertex a : ball(g, v, std::min(20, radius_budget))) {
        auto q = find_geodesic_of_length(g, a, 20, 20);
        if (!q) continue;
        auto cert = p3_from_geodesic(g, *q);
        bool fits = true;
        for (Vertex x : cert.region)
            if (distv[x] < 0 || distv[x] > radius_budget) fits = false;
        if (!fits) continue;
        return cert;
    }
    return std::nullopt;
}

// ---- fixed-set search and dispatcher ----

std::optional<ReducerCertificate> search_reducer_on(const CubicGraph& g,
                                                    const std::vector<Vertex>& r, int t,
                                                    ReducerKind kind) {
    if (t < 3 || t > 6) throw std::invalid_argument("search requires t in 3..6");
    check_vertices(g, r, "search_reducer_on");
    if (r.empty()) throw std::invalid_argument("search requires a nonempty set");
    auto tbl = build_tables(g, build_region(g, r), t);
    auto pair = find_pair(tbl, kind, {});
    if (!pair) return std::nullopt;
    return make_certificate(g, tbl, t, kind, *pair,
                            std::string("search(t=") + std::to_string(t) + ", " +
                                (kind == ReducerKind::Full ? "full" : "half") + ")");
}

std::vector<ReducerCertificate> enumerate_reducers_on(const CubicGraph& g,
                                                      const std::vector<Vertex>& r, int t,
                                                      ReducerKind kind) {
    if (t < 3 || t > 6) throw std::invalid_argument("search requires t in 3..6");
    check_vertices(g, r, "enumerate_reducers_on");
    if (r.empty()) throw std::invalid_argument("search requires a nonempty set");
    auto tbl = build_tables(g, build_region(g, r), t);
    std::vector<ReducerCertificate> out;
    int total = 1 << tbl.bits;
    for (int a = 0; a < total; ++a)
        for (int b : tbl.buckets[tbl.bucket_of[a]]) {
            if (b == a) continue;
            int want = kind == ReducerKind::Full ? tbl.red_count[a] : tbl.red_count[a] - 1;
            if (tbl.red_count[b] != want) continue;
            if (tbl.r_pt[b] != tbl.r_pt[a] - 1) continue;
            out.push_back(make_certificate(g, tbl, t, kind, {a, b},
                                           std::string("exhaustive(t=") + std::to_string(t) +
                                               ")"));
        }
    return out;
}

FindReducerResult find_reducer(const CubicGraph& g, Vertex v, int t, int radius_budget) {
    if (t < 3 || t > 6) throw std::invalid_argument("find_reducer requires t in 3..6");
    if (v < 0 || v >= g.n()) throw std::invalid_argument("find_reducer centre out of range");
    std::vector<std::string> notes;
    auto within_budget = [&](const ReducerCertificate& cert) {
        auto distv = bfs_distances(g, v);
        for (Vertex x : cert.region)
            if (distv[x] < 0 || distv[x] > radius_budget) return false;
        return true;
    };

    if (girth(g) >= 7) {
        auto geo = geodesic_reducer(g, v, t);
        if (geo) {
            if (within_budget(*geo)) return {geo, ""};
            notes.push_back("geodesic: certificate escapes the budget ball");
        } else {
            notes.push_back("geodesic: no vertex at distance exactly " + std::to_string(t + 1) +
                            " from v");
        }
    } else {
        notes.push_back("geodesic: girth below 7, route inapplicable");
    }

    if (t == 3) {
        auto p3 = find_p3_reducer(g, v, radius_budget);
        if (p3) return {p3, ""};
        notes.push_back("p3: no length-20 geodesic fitting the budget within distance 20 of v");
    } else {
        std::string why;
        auto comp = composite_impl(g, v, t, radius_budget, &why);
        if (comp) return {comp, ""};
        notes.push_back("composite: " + why);
    }

    std::string joined;
    for (const auto& n : notes) {
        if (!joined.empty()) joined += "; ";
        joined += n;
    }
    return {std::nullopt, joined};
}

}  // namespace cubiso
