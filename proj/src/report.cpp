#include "pairnorm/report.hpp"

#include <fstream>
#include <sstream>

namespace pairnorm {

json matrix_to_json(const CMat& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMat matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
        !j.contains("im")) {
        throw ParseError("matrix: expected object with rows, cols, re, im");
    }
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    if (rows < 1 || cols < 1) throw ParseError("matrix: dimensions must be positive");
    const json& re = j.at("re");
    const json& im = j.at("im");
    if (static_cast<int>(re.size()) != rows || static_cast<int>(im.size()) != rows) {
        throw ParseError("matrix: re/im row count does not match rows");
    }
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(re[i].size()) != cols || static_cast<int>(im[i].size()) != cols) {
            throw ParseError("matrix: re/im column count does not match cols");
        }
        for (int jj = 0; jj < cols; ++jj) {
            m(i, jj) = cplx(re[i][jj].get<double>(), im[i][jj].get<double>());
        }
    }
    if (!m.is_finite()) throw ParseError("matrix: non-finite entries");
    return m;
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("complex: expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vec2_to_json(Vec2 v) {
    return json{{"z1", complex_to_json(v.x)}, {"z2", complex_to_json(v.y)}};
}

Vec2 vec2_from_json(const json& j) {
    return {complex_from_json(j.at("z1")), complex_from_json(j.at("z2"))};
}

json pair_to_json(const MatrixPair& p) {
    return json{{"A1", matrix_to_json(p.a1())}, {"A2", matrix_to_json(p.a2())}};
}

MatrixPair pair_from_json(const json& j) {
    if (!j.is_object() || !j.contains("A1") || !j.contains("A2")) {
        throw ParseError("pair: expected object with A1, A2");
    }
    return MatrixPair(matrix_from_json(j.at("A1")), matrix_from_json(j.at("A2")));
}

json vpair_to_json(const VPair& v) {
    return json{{"V1", matrix_to_json(v.v1())}, {"V2", matrix_to_json(v.v2())}};
}

VPair vpair_from_json(const json& j) {
    if (!j.is_object() || !j.contains("V1") || !j.contains("V2")) {
        throw ParseError("vpair: expected object with V1, V2");
    }
    return VPair(matrix_from_json(j.at("V1")), matrix_from_json(j.at("V2")));
}

json search_config_to_json(const SearchConfig& c) {
    return json{{"sphere_grid", c.sphere_grid},
                {"bisect_tol", c.bisect_tol},
                {"cert_margin", c.cert_margin},
                {"max_bisect_iters", c.max_bisect_iters},
                {"seed", c.seed}};
}

SearchConfig search_config_from_json(const json& j) {
    SearchConfig c;
    c.sphere_grid = j.value("sphere_grid", c.sphere_grid);
    c.bisect_tol = j.value("bisect_tol", c.bisect_tol);
    c.cert_margin = j.value("cert_margin", c.cert_margin);
    c.max_bisect_iters = j.value("max_bisect_iters", c.max_bisect_iters);
    c.seed = j.value("seed", c.seed);
    return c;
}

json canonical_class_to_json(const CanonicalClass& c) {
    json out{{"tag", pair_class_name(c.tag)},
             {"d", complex_to_json(c.d)},
             {"theta", c.theta},
             {"b", c.b},
             {"c", complex_to_json(c.c)},
             {"row_ambiguous", c.row_ambiguous}};
    if (c.reduced) out["reduced"] = pair_to_json(*c.reduced);
    if (!c.moves.empty()) {
        json moves = json::array();
        for (const Move& m : c.moves) {
            if (std::holds_alternative<UnitaryMove>(m)) {
                const auto& um = std::get<UnitaryMove>(m);
                moves.push_back(json{{"type", "unitary"},
                                     {"U", matrix_to_json(um.u)},
                                     {"W", matrix_to_json(um.w)}});
            } else {
                const auto& lm = std::get<LinearMove>(m);
                moves.push_back(json{{"type", "linear"},
                                     {"p", complex_to_json(lm.p)},
                                     {"q", complex_to_json(lm.q)},
                                     {"r", complex_to_json(lm.r)},
                                     {"s", complex_to_json(lm.s)}});
            }
        }
        out["moves"] = std::move(moves);
    }
    return out;
}

namespace {

PairClass pair_class_from_name(const std::string& s) {
    for (PairClass t :
         {PairClass::SimultaneouslyDiagonalizable, PairClass::OpSpaceDistinguishable,
          PairClass::ResidualI, PairClass::ResidualII, PairClass::ResidualIII,
          PairClass::ResidualIV, PairClass::ResidualV, PairClass::ResidualVI}) {
        if (s == pair_class_name(t)) return t;
    }
    throw ParseError("canonical class: unknown tag '" + s + "'");
}

}  // namespace

json certificate_to_json(const Certificate& c) {
    return json{{"pair", pair_to_json(c.pair)},
                {"u", c.uv.u},
                {"v", c.uv.v},
                {"beta0", vec2_to_json(c.beta0)},
                {"lv_value", c.lv_value},
                {"violation", c.violation},
                {"inf_g_value", c.inf_g_value},
                {"schwarz_gap_at_beta0", c.schwarz_gap_at_beta0},
                {"config", search_config_to_json(c.config)},
                {"family", canonical_class_to_json(c.family)}};
}

Certificate certificate_from_json(const json& j) {
    const MatrixPair pair = pair_from_json(j.at("pair"));
    CanonicalClass family;
    const json& f = j.at("family");
    family.tag = pair_class_from_name(f.at("tag").get<std::string>());
    family.d = complex_from_json(f.at("d"));
    family.theta = f.at("theta").get<double>();
    family.b = f.at("b").get<double>();
    family.c = complex_from_json(f.at("c"));
    family.row_ambiguous = f.value("row_ambiguous", false);
    if (f.contains("reduced")) family.reduced = pair_from_json(f.at("reduced"));

    Certificate cert{pair,
                     UVParams{j.at("u").get<double>(), j.at("v").get<double>()},
                     vec2_from_json(j.at("beta0")),
                     j.at("lv_value").get<double>(),
                     j.at("violation").get<double>(),
                     j.at("inf_g_value").get<double>(),
                     j.at("schwarz_gap_at_beta0").get<double>(),
                     search_config_from_json(j.at("config")),
                     family};
    return cert;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is a 1-based offset into the input; recover the line.
        size_t line = 1;
        const size_t upto = std::min(text.size(), static_cast<size_t>(e.byte));
        for (size_t i = 0; i + 1 < upto; ++i) {
            if (text[i] == '\n') ++line;
        }
        std::ostringstream msg;
        msg << path << ": parse error at line " << line << ": " << e.what();
        throw ParseError(msg.str());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

json Report::to_json() const {
    json out{{"command", command},
             {"inputs", inputs},
             {"outputs", outputs},
             {"tolerances", tolerances},
             {"version", kToolVersion}};
    if (!stable) out["wall_time_ms"] = wall_time_ms;
    return out;
}

}  // namespace pairnorm
