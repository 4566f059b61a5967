#include "sghh/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "sghh/errors.hpp"

namespace sghh {

using nlohmann::json;

namespace {

int line_of(std::string_view text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
    throw ParseError("field '" + field + "': " + msg);
}

const json& need(const json& j, const char* key) {
    if (!j.contains(key)) field_error(key, "missing");
    return j.at(key);
}

int as_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) field_error(field, "expected an integer");
    return j.get<int>();
}

Scalar as_scalar(const json& j, const FieldSpec& f, const std::string& field) {
    if (!j.is_string()) field_error(field, "scalars are decimal strings");
    try {
        return f.parse(j.get<std::string>());
    } catch (const Error& e) {
        field_error(field, e.what());
    }
}

SparseVec entries_1d(const json& j, const FieldSpec& f, Index bound, const std::string& field) {
    if (!j.is_array()) field_error(field, "expected an array");
    SparseVec v;
    for (std::size_t k = 0; k < j.size(); ++k) {
        std::string fk = field + "[" + std::to_string(k) + "]";
        const auto& e = j[k];
        if (!e.is_array() || e.size() != 2) field_error(fk, "expected [index, \"c\"]");
        if (!e[0].is_number_integer() || e[0].get<long long>() < 0 || static_cast<Index>(e[0].get<long long>()) >= bound)
            field_error(fk, "index out of range 0.." + std::to_string(bound - 1));
        v.push(static_cast<Index>(e[0].get<long long>()), as_scalar(e[1], f, fk));
    }
    v.normalize();
    return v;
}

json entries_json(const SparseVec& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back({e.idx, e.val.str()});
    return a;
}

}  // namespace

FieldSpec parse_field(const std::string& s) {
    if (s == "Q" || s == "q") return FieldSpec::rational();
    try {
        std::size_t pos = 0;
        unsigned long long p = std::stoull(s, &pos);
        if (pos != s.size()) throw InvalidParameter("");
        return FieldSpec::prime(p);
    } catch (const std::logic_error&) {
        throw InvalidParameter("field must be a prime or Q, got '" + s + "'");
    }
}

AlgebraPresentation parse_algebra(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError("line 1: algebra file must be a JSON object");
    AlgebraPresentation p;
    const json& fj = need(j, "field");
    if (!fj.is_object()) field_error("field", "expected {\"kind\": ...}");
    std::string kind = need(fj, "kind").is_string() ? fj.at("kind").get<std::string>() : "";
    if (kind == "prime") {
        const json& pj = need(fj, "p");
        if (!pj.is_number_unsigned()) field_error("field.p", "expected a positive integer");
        try {
            p.field = FieldSpec::prime(pj.get<std::uint64_t>());
        } catch (const Error& e) {
            field_error("field.p", e.what());
        }
    } else if (kind == "rational") {
        p.field = FieldSpec::rational();
    } else {
        field_error("field.kind", "expected \"prime\" or \"rational\"");
    }
    p.dim = as_int(need(j, "dim"), "dim");
    if (p.dim < 1) field_error("dim", "must be positive");
    if (j.contains("basis")) {
        const auto& b = j.at("basis");
        if (!b.is_array() || static_cast<int>(b.size()) != p.dim) field_error("basis", "expected " + std::to_string(p.dim) + " labels");
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (!b[k].is_string()) field_error("basis[" + std::to_string(k) + "]", "expected a string");
            p.basis_labels.push_back(b[k].get<std::string>());
        }
    }
    p.unit_index = j.contains("unit_index") ? as_int(j.at("unit_index"), "unit_index") : 0;
    if (p.unit_index < -1 || p.unit_index >= p.dim) field_error("unit_index", "out of range");
    if (p.unit_index == -1) {
        const json& u = need(j, "unit");
        if (!u.is_array() || static_cast<int>(u.size()) != p.dim) field_error("unit", "expected " + std::to_string(p.dim) + " coordinates");
        for (std::size_t k = 0; k < u.size(); ++k) p.unit_coords.push_back(as_scalar(u[k], p.field, "unit[" + std::to_string(k) + "]"));
    }
    const json& m = need(j, "mul");
    if (!m.is_array()) field_error("mul", "expected an array");
    for (std::size_t k = 0; k < m.size(); ++k) {
        std::string fk = "mul[" + std::to_string(k) + "]";
        const auto& e = m[k];
        if (!e.is_array() || e.size() != 4) field_error(fk, "expected [i, j, k, \"c\"]");
        int idx[3];
        for (int t = 0; t < 3; ++t) {
            idx[t] = as_int(e[t], fk + "[" + std::to_string(t) + "]");
            if (idx[t] < 0 || idx[t] >= p.dim) field_error(fk + "[" + std::to_string(t) + "]", "basis index out of range");
        }
        p.mul.push_back({idx[0], idx[1], idx[2], as_scalar(e[3], p.field, fk + "[3]")});
    }
    if (j.contains("trace") && !j.at("trace").is_null()) {
        const auto& t = j.at("trace");
        if (!t.is_array() || static_cast<int>(t.size()) != p.dim) field_error("trace", "expected " + std::to_string(p.dim) + " values");
        std::vector<Scalar> tr;
        for (std::size_t k = 0; k < t.size(); ++k) tr.push_back(as_scalar(t[k], p.field, "trace[" + std::to_string(k) + "]"));
        p.trace = std::move(tr);
    }
    return p;
}

json algebra_to_json(const AlgebraPresentation& p) {
    json j;
    if (p.field.is_rational()) j["field"] = {{"kind", "rational"}};
    else j["field"] = {{"kind", "prime"}, {"p", p.field.characteristic()}};
    j["dim"] = p.dim;
    j["basis"] = p.basis_labels;
    j["unit_index"] = p.unit_index;
    if (p.unit_index == -1) {
        json u = json::array();
        for (const auto& c : p.unit_coords) u.push_back(c.str());
        j["unit"] = u;
    }
    json m = json::array();
    for (const auto& e : p.mul) m.push_back({e.i, e.j, e.k, e.c.str()});
    j["mul"] = m;
    if (p.trace) {
        json t = json::array();
        for (const auto& c : *p.trace) t.push_back(c.str());
        j["trace"] = t;
    }
    return j;
}

// ---- reports ----

json to_json(const CohomologyReport& r) {
    json j;
    j["complex"] = r.complex;
    j["field"] = r.field;
    j["degrees"] = {r.deg_lo, r.deg_hi};
    j["p_max"] = r.p_max;
    j["confirm_span"] = r.confirm_span;
    if (r.complex == "hhsg")
        j["verdict_rule"] = "heuristic: stabilized when the last confirm_span connecting maps are bijective";
    j["rows"] = json::array();
    for (const auto& row : r.rows) {
        json rj{{"degree", row.degree}, {"dims", row.dims}, {"theta_ranks", row.theta_ranks}, {"verdict", row.verdict}};
        rj["stabilized_at"] = row.stabilized_at ? json(*row.stabilized_at) : json(nullptr);
        rj["dim"] = row.dim ? json(*row.dim) : json(nullptr);
        j["rows"].push_back(rj);
    }
    if (!r.comparison.empty() || !r.quasi_iso.empty()) {
        j["comparison"] = json::array();
        for (const auto& c : r.comparison)
            j["comparison"].push_back({{"degree", c.degree},
                                       {"th_dim", c.th_dim},
                                       {"sg_dim", c.sg_dim ? json(*c.sg_dim) : json(nullptr)},
                                       {"iota_rank", c.iota_rank ? json(*c.iota_rank) : json(nullptr)},
                                       {"bijective", c.bijective}});
        j["quasi_iso"] = r.quasi_iso;
    }
    return j;
}

CohomologyReport report_from_json(const json& j) {
    try {
        CohomologyReport r;
        r.complex = j.at("complex").get<std::string>();
        r.field = j.at("field").get<std::string>();
        r.deg_lo = j.at("degrees").at(0).get<int>();
        r.deg_hi = j.at("degrees").at(1).get<int>();
        r.p_max = j.at("p_max").get<int>();
        r.confirm_span = j.at("confirm_span").get<int>();
        for (const auto& rj : j.at("rows")) {
            CohomologyReport::Row row;
            row.degree = rj.at("degree").get<int>();
            row.dims = rj.at("dims").get<std::vector<std::size_t>>();
            row.theta_ranks = rj.at("theta_ranks").get<std::vector<std::size_t>>();
            row.verdict = rj.at("verdict").get<std::string>();
            if (!rj.at("stabilized_at").is_null()) row.stabilized_at = rj.at("stabilized_at").get<int>();
            if (!rj.at("dim").is_null()) row.dim = rj.at("dim").get<std::size_t>();
            r.rows.push_back(std::move(row));
        }
        if (j.contains("comparison")) {
            for (const auto& cj : j.at("comparison")) {
                CohomologyReport::CompareRow c;
                c.degree = cj.at("degree").get<int>();
                c.th_dim = cj.at("th_dim").get<std::size_t>();
                if (!cj.at("sg_dim").is_null()) c.sg_dim = cj.at("sg_dim").get<std::size_t>();
                if (!cj.at("iota_rank").is_null()) c.iota_rank = cj.at("iota_rank").get<std::size_t>();
                c.bijective = cj.at("bijective").get<bool>();
                r.comparison.push_back(c);
            }
            r.quasi_iso = j.at("quasi_iso").get<std::string>();
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
}

std::string to_text(const CohomologyReport& r) {
    std::ostringstream os;
    auto opt = [](const auto& o) { return o ? std::to_string(*o) : std::string("-"); };
    os << r.complex << " over " << r.field << ", degrees " << r.deg_lo << ".." << r.deg_hi;
    if (r.complex == "hhsg") os << ", p_max " << r.p_max << ", confirm_span " << r.confirm_span;
    os << "\n";
    if (r.complex == "hhsg") {
        os << std::setw(6) << "degree";
        for (int p = 0; p <= r.p_max; ++p) os << std::setw(7) << ("p=" + std::to_string(p));
        os << "  " << std::setw(16) << "verdict" << std::setw(6) << "at" << std::setw(6) << "dim" << "  theta ranks\n";
        for (const auto& row : r.rows) {
            os << std::setw(6) << row.degree;
            for (int p = 0; p <= r.p_max; ++p)
                os << std::setw(7) << (p < static_cast<int>(row.dims.size()) ? std::to_string(row.dims[p]) : std::string("-"));
            os << "  " << std::setw(16) << row.verdict << std::setw(6) << opt(row.stabilized_at) << std::setw(6) << opt(row.dim) << " ";
            for (auto t : row.theta_ranks) os << " " << t;
            os << "\n";
        }
        os << "verdicts are heuristic: stabilized = last " << r.confirm_span << " connecting maps bijective\n";
    } else {
        os << std::setw(6) << "degree" << std::setw(6) << "dim" << "\n";
        for (const auto& row : r.rows) os << std::setw(6) << row.degree << std::setw(6) << opt(row.dim) << "\n";
    }
    if (!r.comparison.empty()) {
        os << "comparison with hhsg via iota\n";
        os << std::setw(6) << "degree" << std::setw(6) << "th" << std::setw(6) << "sg" << std::setw(6) << "rank" << "  bijective\n";
        for (const auto& c : r.comparison)
            os << std::setw(6) << c.degree << std::setw(6) << c.th_dim << std::setw(6) << opt(c.sg_dim) << std::setw(6)
               << opt(c.iota_rank) << "  " << (c.bijective ? "yes" : "no") << "\n";
    }
    if (!r.quasi_iso.empty()) os << "quasi-iso: " << r.quasi_iso << "\n";
    return os.str();
}

// ---- windows ----

json to_json(const SparseMatrix& m) {
    json t = json::array();
    for (Index r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r)) t.push_back({r, e.idx, e.val.str()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"triplets", t}};
}

SparseMatrix matrix_from_json(const json& j, const FieldSpec& f) {
    std::vector<SparseMatrix::Triplet> t;
    for (const auto& e : j.at("triplets")) t.push_back({e.at(0).get<Index>(), e.at(1).get<Index>(), f.parse(e.at(2).get<std::string>())});
    return SparseMatrix::from_triplets(j.at("rows").get<Index>(), j.at("cols").get<Index>(), std::move(t));
}

json to_json(const SgLadder& l) {
    json j{{"degrees", {l.deg_lo, l.deg_hi}}, {"p_max", l.p_max}};
    auto dump = [](const std::map<std::pair<int, int>, SparseMatrix>& m) {
        json a = json::array();
        for (const auto& [k, v] : m) a.push_back({{"j", k.first}, {"p", k.second}, {"matrix", to_json(v)}});
        return a;
    };
    j["delta"] = dump(l.delta);
    j["theta"] = dump(l.theta);
    return j;
}

SgLadder ladder_from_json(const json& j, AlgebraPtr alg) {
    try {
        SgLadder l;
        l.alg = alg;
        l.deg_lo = j.at("degrees").at(0).get<int>();
        l.deg_hi = j.at("degrees").at(1).get<int>();
        l.p_max = j.at("p_max").get<int>();
        for (const auto& e : j.at("delta"))
            l.delta[{e.at("j").get<int>(), e.at("p").get<int>()}] = matrix_from_json(e.at("matrix"), alg->field());
        for (const auto& e : j.at("theta"))
            l.theta[{e.at("j").get<int>(), e.at("p").get<int>()}] = matrix_from_json(e.at("matrix"), alg->field());
        return l;
    } catch (const json::exception& e) {
        throw ParseError(std::string("window: ") + e.what());
    }
}

// ---- operands ----

json to_json(const Cochain& f) {
    json e = json::array();
    for (Index w = 0; w < f.num_cols(); ++w)
        for (const auto& x : f.col(w)) e.push_back({w, x.idx, x.val.str()});
    return {{"kind", "cochain"}, {"arity", f.arity()}, {"form_degree", f.form_degree()}, {"degree", f.arity() - f.form_degree()}, {"entries", e}};
}

json to_json(const DElem& x) { return {{"kind", "dstar"}, {"degree", x.degree}, {"entries", entries_json(x.coords)}}; }

json to_json(const Chain& c) {
    return {{"kind", "chain"}, {"n", c.n}, {"coefficients", c.coeff == Chain::Coeff::A ? "A" : "A(x)A"}, {"entries", entries_json(c.v)}};
}

Cochain cochain_from_json(const json& j, AlgebraPtr alg) {
    if (!j.is_object() || j.value("kind", "") != "cochain") throw BasisMismatch("operand is not a cochain");
    int m = as_int(need(j, "arity"), "arity"), p = as_int(need(j, "form_degree"), "form_degree");
    if (m < 0 || p < 0) throw BasisMismatch("negative arity or form degree");
    if (j.contains("degree") && as_int(j.at("degree"), "degree") != m - p) throw BasisMismatch("degree header does not equal arity - form_degree");
    Cochain f = zero_cochain(alg, m, p);
    const Index R = f.codomain().dim();
    const json& e = need(j, "entries");
    if (!e.is_array()) field_error("entries", "expected an array");
    for (std::size_t k = 0; k < e.size(); ++k) {
        std::string fk = "entries[" + std::to_string(k) + "]";
        const auto& x = e[k];
        if (!x.is_array() || x.size() != 3) field_error(fk, "expected [input, output, \"c\"]");
        long long w = x[0].is_number_integer() ? x[0].get<long long>() : -1, r = x[1].is_number_integer() ? x[1].get<long long>() : -1;
        if (w < 0 || static_cast<Index>(w) >= f.num_cols() || r < 0 || static_cast<Index>(r) >= R)
            throw BasisMismatch(fk + ": index out of range for arity " + std::to_string(m) + ", form degree " + std::to_string(p));
        f.col(static_cast<Index>(w)).push(static_cast<Index>(r), as_scalar(x[2], alg->field(), fk));
    }
    for (Index w = 0; w < f.num_cols(); ++w) f.col(w).normalize();
    return f;
}

DElem delem_from_json(const json& j, const DStar& ds) {
    if (!j.is_object() || j.value("kind", "") != "dstar") throw BasisMismatch("operand is not a D* element");
    int i = as_int(need(j, "degree"), "degree");
    ds.require_in_window(i);
    return DElem{i, entries_1d(need(j, "entries"), ds.algebra()->field(), ds.dim(i), "entries")};
}

Chain chain_from_json(const json& j, AlgebraPtr alg) {
    if (!j.is_object() || j.value("kind", "") != "chain") throw BasisMismatch("operand is not a chain");
    int n = as_int(need(j, "n"), "n");
    if (n < 0) throw BasisMismatch("negative chain degree");
    Chain c = zero_chain(alg, Chain::Coeff::A, n);
    c.v = entries_1d(need(j, "entries"), alg->field(), c.dim(), "entries");
    return c;
}

// ---- cache ----

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw Error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

std::optional<json> WindowCache::load(const std::string& key) const {
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    try {
        return json::parse(in);
    } catch (const json::exception&) {
        return std::nullopt;  // treat a damaged entry as a miss
    }
}

void WindowCache::store(const std::string& key, const json& payload) const {
    std::filesystem::create_directories(dir_);
    std::random_device rd;
    auto tmp = dir_ / (key + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot write cache file " + tmp.string());
        out << payload.dump();
        if (!out) throw Error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, dir_ / (key + ".json"));
}

}  // namespace sghh
