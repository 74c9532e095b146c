#include "kisin/json_io.hpp"

#include <sstream>

namespace kisin {
namespace io {

namespace {

void expect_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ConfigError(std::string(what) + ": unknown key '" + it.key() + "'");
    }
}

} // namespace

json to_json(const FieldSpec* s) {
    return json{{"p", s->p}, {"m", s->m}, {"modulus", s->modulus}};
}

const FieldSpec* field_from_json(const json& j) {
    expect_keys(j, {"p", "m", "modulus"}, "field");
    int p = j.at("p").get<int>();
    if (j.contains("modulus")) {
        auto mod = j.at("modulus").get<std::vector<uint8_t>>();
        return FieldSpec::get_custom(p, mod);
    }
    return FieldSpec::get(p, j.at("m").get<int>());
}

json to_json(const FieldElement& x) {
    return json(x.coeffs());
}

FieldElement field_element_from_json(const json& j, const FieldSpec* s) {
    return FieldElement(s, j.get<std::vector<int>>());
}

json to_json(const LaurentElement& x) {
    json terms = json::array();
    for (const auto& t : x.terms()) terms.push_back(json::array({t.first, to_json(t.second)}));
    json h;
    if (x.horizon()) h = *x.horizon();
    return json{{"terms", std::move(terms)}, {"horizon", h}};
}

LaurentElement laurent_from_json(const json& j, const FieldSpec* s) {
    expect_keys(j, {"terms", "horizon"}, "laurent");
    std::vector<std::pair<int, FieldElement>> terms;
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2) throw ConfigError("laurent: term must be [exp, coeffs]");
        terms.push_back({t[0].get<int>(), field_element_from_json(t[1], s)});
    }
    std::optional<int> h;
    if (j.contains("horizon") && !j.at("horizon").is_null()) h = j.at("horizon").get<int>();
    return LaurentElement::from_terms(s, std::move(terms), h);
}

json to_json(const Rat& r) { return json(r.str()); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    return Rat::parse(j.get<std::string>());
}

json to_json(const Lattice& L) {
    return json{{"a", L.a}, {"b", L.b}, {"f", to_json(L.f)}};
}

Lattice lattice_from_json(const json& j, const FieldSpec* s) {
    expect_keys(j, {"a", "b", "f"}, "lattice");
    return Lattice(j.at("a").get<int>(), j.at("b").get<int>(), laurent_from_json(j.at("f"), s));
}

json to_json(const VertexClass& v) {
    return json{{"d", v.d}, {"f", to_json(v.f)}};
}

VertexClass vertex_from_json(const json& j, const FieldSpec* s) {
    expect_keys(j, {"d", "f"}, "vertex");
    return VertexClass(j.at("d").get<int>(), laurent_from_json(j.at("f"), s));
}

json to_json(const BuildingPoint& x) {
    if (x.is_vertex()) return json{{"vertex", to_json(x.as_vertex())}};
    return json{{"edge", json::array({to_json(x.edge_v0()), to_json(x.edge_v1())})},
                {"t", to_json(x.offset())}};
}

BuildingPoint building_point_from_json(const json& j, const FieldSpec* s) {
    if (j.contains("vertex")) {
        expect_keys(j, {"vertex"}, "building point");
        return BuildingPoint::vertex(vertex_from_json(j.at("vertex"), s));
    }
    expect_keys(j, {"edge", "t"}, "building point");
    return BuildingPoint(vertex_from_json(j.at("edge")[0], s), vertex_from_json(j.at("edge")[1], s),
                         rat_from_json(j.at("t")));
}

json to_json(const PhiModule& M) {
    json mats = json::array();
    for (const auto& m : M.A) {
        json entries = json::array();
        for (const auto& e : m.e) entries.push_back(to_json(e));
        mats.push_back(std::move(entries));
    }
    return json{{"p", M.spec->p}, {"m_ext", M.spec->m}, {"n", M.n}, {"A", std::move(mats)}};
}

PhiModule phimodule_from_json(const json& j) {
    expect_keys(j, {"p", "m_ext", "n", "A"}, "module");
    const FieldSpec* s = FieldSpec::get(j.at("p").get<int>(), j.at("m_ext").get<int>());
    int n = j.at("n").get<int>();
    const json& mats = j.at("A");
    if (static_cast<int>(mats.size()) != n) throw ConfigError("module: n and A disagree");
    std::vector<Mat2> A;
    for (const auto& mj : mats) {
        if (!mj.is_array() || mj.size() != 4) throw ConfigError("module: matrix needs 4 entries");
        A.push_back(Mat2(laurent_from_json(mj[0], s), laurent_from_json(mj[1], s),
                         laurent_from_json(mj[2], s), laurent_from_json(mj[3], s)));
    }
    return PhiModule(s, std::move(A));
}

json to_json(const KisinPoint& x) {
    json out = json::array();
    for (const auto& L : x.L) out.push_back(to_json(L));
    return out;
}

KisinPoint kisin_point_from_json(const json& j, const FieldSpec* s) {
    KisinPoint out;
    for (const auto& lj : j) out.L.push_back(lattice_from_json(lj, s));
    return out;
}

json to_json(const Cochar& nu) {
    json out = json::array();
    for (const auto& [a, b] : nu.pairs) out.push_back(json::array({a, b}));
    return out;
}

Cochar cochar_from_json(const json& j) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& pj : j) {
        if (!pj.is_array() || pj.size() != 2) throw ConfigError("nu: each entry must be [a, b]");
        pairs.push_back({pj[0].get<int>(), pj[1].get<int>()});
    }
    return Cochar(std::move(pairs));
}

RunConfig run_config_from_json(const json& j) {
    expect_keys(j, {"field", "module", "nu", "prec", "radius_slack", "seed", "rules", "jobs"}, "config");
    RunConfig cfg;
    cfg.field = field_from_json(j.at("field"));
    const json& mj = j.at("module");
    if (mj.contains("standard")) {
        expect_keys(mj, {"standard"}, "module");
        const json& sj = mj.at("standard");
        expect_keys(sj, {"p", "m_ext", "n", "s", "alpha"}, "module.standard");
        int p = sj.at("p").get<int>();
        int m_ext = sj.contains("m_ext") ? sj.at("m_ext").get<int>() : 1;
        const FieldSpec* ms = FieldSpec::get(p, m_ext);
        std::optional<FieldElement> alpha;
        if (sj.contains("alpha")) alpha = field_element_from_json(sj.at("alpha"), ms);
        cfg.module = standard_module(p, m_ext, sj.at("n").get<int>(), sj.at("s").get<int>(), alpha);
    } else {
        cfg.module = phimodule_from_json(mj);
    }
    cfg.nu = cochar_from_json(j.at("nu"));
    if (cfg.nu.n() != cfg.module.n) throw ConfigError("config: nu arity does not match module");
    if (j.contains("prec")) cfg.prec = j.at("prec").get<int>();
    if (j.contains("radius_slack")) cfg.radius_slack = j.at("radius_slack").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned long long>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    if (j.contains("rules")) {
        cfg.rules = GraphRules{false, false, false};
        for (const auto& rj : j.at("rules")) {
            std::string r = rj.get<std::string>();
            if (r == "single") cfg.rules.single = true;
            else if (r == "chi") cfg.rules.chi = true;
            else if (r == "mq") cfg.rules.mq = true;
            else throw ConfigError("config: unknown rule '" + r + "'");
        }
    }
    if (cfg.field->p != cfg.module.spec->p)
        throw ConfigError("config: field characteristic differs from the module's");
    return cfg;
}

json to_json(const RunConfig& cfg) {
    json rules = json::array();
    if (cfg.rules.single) rules.push_back("single");
    if (cfg.rules.chi) rules.push_back("chi");
    if (cfg.rules.mq) rules.push_back("mq");
    return json{{"field", to_json(cfg.field)},   {"module", to_json(cfg.module)},
                {"nu", to_json(cfg.nu)},         {"prec", cfg.prec},
                {"radius_slack", cfg.radius_slack}, {"seed", cfg.seed},
                {"rules", std::move(rules)},     {"jobs", cfg.jobs}};
}

json enumeration_to_json(const RunConfig& cfg, const Enumeration& en) {
    json s = json::array();
    for (int v : en.s) s.push_back(v);
    json R = json::array();
    for (const auto& r : en.R) R.push_back(to_json(r));
    json P = json::array();
    for (const auto& pt : en.fp.P) P.push_back(to_json(pt));
    json points = json::array();
    for (const auto& pt : en.points) points.push_back(to_json(pt));
    return json{{"config", to_json(cfg)},
                {"s", std::move(s)},
                {"R", std::move(R)},
                {"P", std::move(P)},
                {"points", std::move(points)},
                {"count", en.points.size()}};
}

std::pair<RunConfig, Enumeration> enumeration_from_json(const json& j) {
    expect_keys(j, {"config", "s", "R", "P", "points", "count"}, "enumeration");
    RunConfig cfg = run_config_from_json(j.at("config"));
    Enumeration en;
    for (const auto& v : j.at("s")) en.s.push_back(v.get<int>());
    for (const auto& v : j.at("R")) en.R.push_back(rat_from_json(v));
    for (const auto& v : j.at("P")) en.fp.P.push_back(building_point_from_json(v, cfg.field));
    for (const auto& v : j.at("points")) en.points.push_back(kisin_point_from_json(v, cfg.field));
    if (en.points.size() != j.at("count").get<size_t>())
        throw ConfigError("enumeration: count does not match points");
    return {std::move(cfg), std::move(en)};
}

json graph_to_json(const CertGraph& g) {
    json nodes = json::array();
    for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k) nodes.push_back(k);
    json edges = json::array();
    for (const auto& e : g.edges) edges.push_back(json::array({e.u, e.v, e.tag}));
    json comps = json::array();
    for (const auto& comp : components(g)) comps.push_back(comp);
    return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"components", std::move(comps)}};
}

std::string graph_to_dot(const CertGraph& g) {
    std::ostringstream os;
    os << "graph kisin {\n";
    for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k) os << "  n" << k << ";\n";
    for (const auto& e : g.edges)
        os << "  n" << e.u << " -- n" << e.v << " [label=\"" << e.tag << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string dumps(const json& j) { return j.dump(2) + "\n"; }

} // namespace io
} // namespace kisin
