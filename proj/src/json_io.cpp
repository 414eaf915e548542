#include "cocycle_lab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cocycle_lab/error.hpp"

namespace cocycle_lab::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t as_size(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

double as_double(const Json& j, const char* what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

fs::path resolve(const std::string& p, const fs::path& base) {
    const fs::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    if (!std::isfinite(x)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

bool is_flat(const Json& j) {
    for (const auto& x : j)
        if (x.is_structured()) return false;
    return true;
}

void emit(const Json& j, bool compact, int depth, std::string& out) {
    const std::string pad = compact ? "" : std::string(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close_pad = compact ? "" : std::string(2 * static_cast<std::size_t>(depth), ' ');
    const char* nl = compact ? "" : "\n";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad + Json(it.key()).dump() + (compact ? ":" : ": ");
                emit(it.value(), compact, depth + 1, out);
            }
            out += nl + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Rows of scalars stay on one line so matrices remain readable.
            const bool inline_row = compact || is_flat(j);
            out += "[";
            if (!inline_row) out += nl;
            bool first = true;
            for (const auto& x : j) {
                if (!first) out += inline_row ? (compact ? "," : ", ") : std::string(",") + nl;
                first = false;
                if (!inline_row) out += pad;
                emit(x, compact, depth + 1, out);
            }
            if (!inline_row) out += nl + close_pad;
            out += "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

Json cplx_json(cplx z) { return Json::array({z.real(), z.imag()}); }

const Json& group_field(const Json& j) { return field(j, "group"); }

}  // namespace

Json read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        bad(path.string() + ": " + e.what());
    }
}

std::string dump(const Json& j, bool compact) {
    std::string out;
    emit(j, compact, 0, out);
    return out;
}

FiniteGroup builtin_group(const std::string& name) {
    if (name == "trivial") return groups::trivial();
    if (name == "z2xz2" || name == "k4" || name == "klein_four") return groups::klein_four();
    if (name == "s3") return groups::symmetric3();
    if (name == "d4") return groups::dihedral4();
    if (name == "q8") return groups::quaternion();
    if (name == "z2xz4") return groups::direct_product(groups::cyclic(2), groups::cyclic(4));
    if (name.size() > 1 && name[0] == 'z' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
        const auto n = std::stoul(name.substr(1));
        if (n >= 1 && n <= 64) return groups::cyclic(n);
    }
    throw Error(ErrorKind::UnknownName, "no builtin group '" + name + "'");
}

std::vector<std::string> builtin_group_names() { return {"trivial", "z<n>", "z2xz2", "k4", "s3", "d4", "q8", "z2xz4"}; }

FiniteGroup group_from_json(const Json& j, const fs::path& base) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const fs::path p = resolve(s, base);
        if (fs::exists(p)) return group_from_json(read_file(p), p.parent_path());
        return builtin_group(s);
    }
    const std::size_t n = as_size(field(j, "order"), "order");
    const Json& t = field(j, "table");
    if (!t.is_array() || t.size() != n) bad("table must have " + std::to_string(n) + " rows");
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : t) {
        if (!row.is_array()) bad("table rows must be arrays");
        std::vector<std::size_t> r;
        for (const auto& x : row) r.push_back(as_size(x, "table entry"));
        table.push_back(std::move(r));
    }
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return validate_group(table, std::move(names));
}

FiniteGroup load_group(const std::string& name_or_path) {
    if (fs::exists(name_or_path)) return group_from_json(read_file(name_or_path), fs::path(name_or_path).parent_path());
    return builtin_group(name_or_path);
}

Json to_json(const FiniteGroup& g) {
    Json j{{"order", g.order()}, {"table", g.table()}};
    if (!g.names().empty()) j["names"] = g.names();
    return j;
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) bad("matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) bad("matrix rows have different lengths");
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& e = j[r][c];
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(r, c) = cplx(as_double(e[0], "real part"), as_double(e[1], "imaginary part"));
            } else {
                bad("matrix entries must be numbers or [re, im]");
            }
        }
    }
    return m;
}

Json to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cplx_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix load_matrix(const fs::path& path) {
    const Json j = read_file(path);
    return matrix_from_json(j.is_object() ? field(j, "matrix") : j);
}

numkernel::IntMatrix intmatrix_from_json(const Json& j) {
    const Json& rows = j.is_object() ? field(j, "matrix") : j;
    if (!rows.is_array() || rows.empty() || !rows[0].is_array()) bad("integer matrix must be a non-empty array of rows");
    numkernel::IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != m.cols()) bad("matrix rows have different lengths");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Json& e = rows[r][c];
            if (e.is_number_integer()) {
                m(r, c) = e.get<std::int64_t>();
            } else if (e.is_string()) {
                try {
                    m(r, c) = numkernel::BigInt(e.get<std::string>());
                } catch (const std::exception&) {
                    bad("integer matrix entry \"" + e.get<std::string>() + "\" is not an integer");
                }
            } else {
                bad("integer matrix entries must be integers");
            }
        }
    }
    return m;
}

Json to_json(const numkernel::IntMatrix& m) {
    static const numkernel::BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const numkernel::BigInt hi = std::numeric_limits<std::int64_t>::max();
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto& x = m(r, c);
            if (x >= lo && x <= hi) {
                row.push_back(x.convert_to<std::int64_t>());
            } else {
                row.push_back(x.str());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::vector<CMatrix> matrices_from_json(const Json& j, std::size_t count, std::size_t dim) {
    if (!j.is_array() || j.size() != count) bad("expected " + std::to_string(count) + " matrices");
    std::vector<CMatrix> out;
    for (const auto& m : j) {
        out.push_back(matrix_from_json(m));
        if (out.back().rows() != dim || out.back().cols() != dim) bad("matrices must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    return out;
}

Json matrices_json(const std::vector<CMatrix>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(to_json(m));
    return out;
}

}  // namespace

OnsiteRep onsite_from_json(const Json& j, const fs::path& base) {
    auto g = group_from_json(group_field(j), base);
    const std::size_t dim = as_size(field(j, "dim"), "dim");
    auto mats = matrices_from_json(field(j, "matrices"), g.order(), dim);
    return validate_onsite_rep(g, std::move(mats));
}

OnsiteRep load_onsite(const fs::path& path) { return onsite_from_json(read_file(path), path.parent_path()); }

Json to_json(const OnsiteRep& u) {
    return Json{{"group", to_json(u.group)}, {"dim", u.dim}, {"matrices", matrices_json(u.matrices)}};
}

Cocycle cocycle_from_json(const Json& j, const fs::path& base, const std::optional<FiniteGroup>& group) {
    if (j.is_string()) {
        const fs::path p = resolve(j.get<std::string>(), base);
        return cocycle_from_json(read_file(p), p.parent_path(), group);
    }
    const FiniteGroup g = group ? *group : group_from_json(group_field(j), base);
    const std::size_t n = g.order();
    auto square = [&](const Json& t, const char* what) {
        if (!t.is_array() || t.size() != n) bad(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
        for (const auto& row : t)
            if (!row.is_array() || row.size() != n) bad(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
    };
    if (j.contains("exponents")) {
        const auto m = field(j, "m");
        if (!m.is_number_integer() || m.get<long long>() <= 0) bad("m must be a positive integer");
        square(j.at("exponents"), "exponents");
        return Cocycle::exact(g, m.get<std::int64_t>(), j.at("exponents").get<std::vector<std::vector<std::int64_t>>>());
    }
    if (j.contains("phases")) {
        square(j.at("phases"), "phases");
        return Cocycle::from_turns(g, j.at("phases").get<std::vector<std::vector<double>>>());
    }
    bad("cocycle needs \"exponents\" (with \"m\") or \"phases\"");
}

Cocycle load_cocycle(const fs::path& path) { return cocycle_from_json(read_file(path), path.parent_path()); }

Json to_json(const Cocycle& c) {
    Json j{{"group", to_json(c.group())}};
    if (c.is_exact()) {
        j["m"] = c.root_order();
        j["exponents"] = c.exponents();
    } else {
        j["phases"] = c.turns_table();
    }
    return j;
}

PhaseFunction phase_function_from_json(const Json& j, const fs::path& base) {
    const FiniteGroup g = group_from_json(group_field(j), base);
    auto check_len = [&](const Json& v, const char* what) {
        if (!v.is_array() || v.size() != g.order()) bad(std::string(what) + " must have one entry per element");
    };
    if (j.contains("exponents")) {
        check_len(j.at("exponents"), "exponents");
        return PhaseFunction::exact(g, field(j, "m").get<std::int64_t>(), j.at("exponents").get<std::vector<std::int64_t>>());
    }
    if (j.contains("phases")) {
        check_len(j.at("phases"), "phases");
        return PhaseFunction::from_turns(g, j.at("phases").get<std::vector<double>>());
    }
    bad("phase function needs \"exponents\" (with \"m\") or \"phases\"");
}

PhaseFunction load_phase_function(const fs::path& path) {
    return phase_function_from_json(read_file(path), path.parent_path());
}

ProjectiveRep projrep_from_json(const Json& j, const fs::path& base) {
    auto g = group_from_json(group_field(j), base);
    const std::size_t dim = as_size(field(j, "dim"), "dim");
    auto c = cocycle_from_json(field(j, "cocycle"), base, g);
    return validate_projrep(c, matrices_from_json(field(j, "matrices"), g.order(), dim));
}

ProjectiveRep load_projrep(const fs::path& path) { return projrep_from_json(read_file(path), path.parent_path()); }

Json to_json(const ProjectiveRep& v) {
    Json c = to_json(v.cocycle);
    c.erase("group");
    return Json{{"group", to_json(v.group())}, {"dim", v.dim}, {"matrices", matrices_json(v.matrices)}, {"cocycle", c}};
}

std::vector<CMatrix> mps_tensors_from_json(const Json& j) {
    const std::size_t d = as_size(field(j, "phys_dim"), "phys_dim");
    const std::size_t bond = as_size(field(j, "bond_dim"), "bond_dim");
    if (d == 0 || bond == 0) bad("phys_dim and bond_dim must be positive");
    return matrices_from_json(field(j, "tensors"), d, bond);
}

std::vector<CMatrix> load_mps_tensors(const fs::path& path) { return mps_tensors_from_json(read_file(path)); }

Json to_json(const MpsState& s) {
    return Json{{"phys_dim", s.phys_dim}, {"bond_dim", s.bond_dim}, {"tensors", matrices_json(s.tensors)}};
}

Json to_json(const IrrepTable& t) {
    Json dims = Json::array(), chars = Json::array(), reps = Json::array();
    for (std::size_t a = 0; a < t.size(); ++a) {
        dims.push_back(t.dim(a));
        Json row = Json::array();
        for (const auto& x : t.characters[a]) row.push_back(cplx_json(x));
        chars.push_back(std::move(row));
        reps.push_back(matrices_json(t.irreps[a].matrices));
    }
    return Json{{"count", t.size()}, {"dims", dims}, {"characters", chars}, {"irreps", reps}, {"cocycle", to_json(t.cocycle)}};
}

namespace {

Json witness_json(const std::vector<std::string>& columns, const std::vector<WitnessRow>& rows) {
    Json rs = Json::array();
    for (const auto& r : rows) rs.push_back(Json{{"n", r.n}, {"multiplicities", r.multiplicities}, {"satisfied", r.satisfied}});
    return Json{{"columns", columns}, {"rows", rs}};
}

}  // namespace

Json to_json(const BoundReport& r) {
    return Json{{"exact_min", r.exact_min},
                {"analytic_bound", r.analytic_bound},
                {"certificate", r.certificate ? Json(*r.certificate) : Json(nullptr)},
                {"witness", witness_json(r.columns, r.witness)}};
}

Json to_json(const GrowthTable& t) {
    Json j = witness_json(t.columns, t.rows);
    j["nondecreasing"] = t.nondecreasing;
    return j;
}

Json to_json(const SymmetryCertificate& c) {
    return Json{{"thetas", c.thetas},
                {"cocycle", to_json(c.cocycle)},
                {"class_index", c.class_index},
                {"trivial", is_trivial(c.cocycle)},
                {"snap_displacement", c.snap_displacement},
                {"snap_warned", c.snap_warned},
                {"max_reconstruction_defect", c.max_reconstruction_defect},
                {"bond_rep", matrices_json(c.v.matrices)}};
}

Json to_json(const IdentityReport& r) {
    Json checks = Json::object();
    for (const auto& c : r.checks)
        checks[c.name] = Json{{"max_defect", c.max_defect}, {"tolerance", c.tolerance}, {"passed", c.passed}};
    return Json{{"passed", r.passed}, {"checks", checks}};
}

Json to_json(const TwistedElement& f) {
    const auto& s = *f.system;
    Json values = Json::object();
    for (Element g = 0; g < s.order(); ++g) values[s.group().name(g)] = to_json(f.values[g]);
    return Json{{"window", s.window().sites}, {"cocycle", to_json(s.cocycle())}, {"values", values}};
}

TwistedElement twisted_element_from_json(const Json& j, const SystemPtr& s) {
    if (field(j, "window").get<std::vector<long long>>() != s->window().sites) throw Error(ErrorKind::Mismatch, "window differs from the system");
    if (j.contains("cocycle") && !same_values(cocycle_from_json(j.at("cocycle"), {}, s->group()), s->cocycle()))
        throw Error(ErrorKind::Mismatch, "cocycle differs from the system");
    auto f = TwistedElement::zero(s);
    const Json& values = field(j, "values");
    if (!values.is_object()) bad("values must be an object keyed by element");
    for (auto it = values.begin(); it != values.end(); ++it) {
        std::optional<Element> g;
        for (Element x = 0; x < s->order() && !g; ++x)
            if (s->group().name(x) == it.key()) g = x;
        if (!g) bad("unknown element '" + it.key() + "'");
        f.values[*g] = matrix_from_json(it.value());
        if (f.values[*g].rows() != s->dim() || f.values[*g].cols() != s->dim()) throw Error(ErrorKind::Mismatch, "value has the wrong size");
    }
    return f;
}

CovariantRep covariant_from_json(const Json& j, const fs::path& base) {
    const Json& rep = field(j, "rep");
    const OnsiteRep u = rep.is_string() ? load_onsite(resolve(rep.get<std::string>(), base)) : onsite_from_json(rep, base);
    const Cocycle sigma = cocycle_from_json(field(j, "cocycle"), base, u.group);
    const auto s = TwistedSystem::make(make_window(field(j, "window").get<std::vector<long long>>(), u.dim), sigma, u);
    if (!j.contains("covariant") || j.at("covariant") == "regular") return regular_covariant(s);
    const Json& kind = j.at("covariant");
    if (kind == "identity") return identity_covariant(s);
    if (kind.is_object() && kind.contains("tensor")) {
        const Json& v = kind.at("tensor");
        return tensor_covariant(s, v.is_string() ? load_projrep(resolve(v.get<std::string>(), base)) : projrep_from_json(v, base));
    }
    bad("\"covariant\" must be \"regular\", \"identity\" or {\"tensor\": rep}");
}

CovariantRep load_covariant(const fs::path& path) { return covariant_from_json(read_file(path), path.parent_path()); }

}  // namespace cocycle_lab::json_io
