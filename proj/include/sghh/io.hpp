#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sghh/algebra.hpp"
#include "sghh/cohomology.hpp"
#include "sghh/complexes.hpp"

namespace sghh {

// ---- algebra files ----

// throws ParseError naming the line (syntax) or the JSON field (content)
AlgebraPresentation parse_algebra(std::string_view text);
nlohmann::json algebra_to_json(const AlgebraPresentation& p);
FieldSpec parse_field(const std::string& s);  // "101" | "Q"

// ---- reports ----

nlohmann::json to_json(const CohomologyReport& r);
CohomologyReport report_from_json(const nlohmann::json& j);
std::string to_text(const CohomologyReport& r);

// ---- windows (cache payload) ----

nlohmann::json to_json(const SparseMatrix& m);
SparseMatrix matrix_from_json(const nlohmann::json& j, const FieldSpec& f);
nlohmann::json to_json(const SgLadder& l);
SgLadder ladder_from_json(const nlohmann::json& j, AlgebraPtr alg);

// ---- operands ----
// {"kind":"cochain","arity":m,"form_degree":p,"entries":[[input,output,"c"],...]}
// {"kind":"dstar","degree":i,"entries":[[index,"c"],...]}
// {"kind":"chain","n":n,"entries":[[index,"c"],...]}  (coefficients in A)
nlohmann::json to_json(const Cochain& f);
nlohmann::json to_json(const DElem& x);
nlohmann::json to_json(const Chain& c);
Cochain cochain_from_json(const nlohmann::json& j, AlgebraPtr alg);
DElem delem_from_json(const nlohmann::json& j, const DStar& ds);
Chain chain_from_json(const nlohmann::json& j, AlgebraPtr alg);

// ---- content-addressed window cache ----

std::string sha256_hex(std::string_view data);

class WindowCache {
public:
    explicit WindowCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
    const std::filesystem::path& dir() const { return dir_; }
    std::optional<nlohmann::json> load(const std::string& key) const;
    // write to a temporary file, then rename into place
    void store(const std::string& key, const nlohmann::json& payload) const;

private:
    std::filesystem::path dir_;
};

}  // namespace sghh
