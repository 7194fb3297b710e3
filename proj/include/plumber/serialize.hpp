#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "plumber/geometry.hpp"
#include "plumber/invariants.hpp"
#include "plumber/isotopy.hpp"
#include "plumber/lattice.hpp"

namespace plumber {

inline constexpr int kCensusFormatVersion = 1;

/// Value form of a census for serialization and reloading.
struct CensusDocument {
    int version = kCensusFormatVersion;
    int n = 0;
    std::uint64_t total_cells = 0;
    struct Row {
        std::uint64_t size = 0;
        std::string representative;
        KnotLabel label;
        bool operator==(const Row&) const = default;
    };
    std::vector<Row> components;  // sorted by (size desc, representative asc)

    bool operator==(const CensusDocument&) const = default;
};

inline CensusDocument make_document(const Census& census, int jones_cap = 24,
                                    bool with_labels = true) {
    CensusDocument doc;
    doc.n = census.n();
    doc.total_cells = census.total_cells();
    for (const auto& comp : census.components()) {
        CensusDocument::Row row;
        row.size = comp.size;
        CellName rep = census.tables().cell_at(comp.representative);
        row.representative = rep.str();
        if (with_labels) row.label = classify(rep, jones_cap);
        doc.components.push_back(std::move(row));
    }
    return doc;
}

inline nlohmann::json to_json(const CensusDocument& doc) {
    nlohmann::json j;
    j["version"] = doc.version;
    j["n"] = doc.n;
    j["total_cells"] = doc.total_cells;
    j["components"] = nlohmann::json::array();
    for (const auto& row : doc.components) {
        nlohmann::json r;
        r["size"] = row.size;
        r["representative"] = row.representative;
        r["determinant"] = row.label.determinant;
        r["signature"] = row.label.signature;
        r["type_name"] = row.label.type_name;
        if (!row.label.jones.empty()) r["jones"] = row.label.jones;
        j["components"].push_back(std::move(r));
    }
    return j;
}

inline CensusDocument census_document_from_json(const nlohmann::json& j) {
    CensusDocument doc;
    doc.version = j.at("version").get<int>();
    doc.n = j.at("n").get<int>();
    doc.total_cells = j.at("total_cells").get<std::uint64_t>();
    for (const auto& r : j.at("components")) {
        CensusDocument::Row row;
        row.size = r.at("size").get<std::uint64_t>();
        row.representative = r.at("representative").get<std::string>();
        row.label.determinant = r.at("determinant").get<std::int64_t>();
        row.label.signature = r.at("signature").get<int>();
        row.label.type_name = r.at("type_name").get<std::string>();
        if (r.contains("jones")) row.label.jones = r.at("jones").get<std::string>();
        doc.components.push_back(std::move(row));
    }
    return doc;
}

/// Table-style CSV export: type,size,representative,determinant,signature.
inline std::string to_csv(const CensusDocument& doc) {
    std::ostringstream os;
    os << "type,size,representative,determinant,signature\n";
    for (const auto& row : doc.components)
        os << row.label.type_name << ',' << row.size << ',' << '"'
           << row.representative << '"' << ',' << row.label.determinant << ','
           << row.label.signature << '\n';
    return os.str();
}

inline nlohmann::json rat_json(const Rat& r) {
    return nlohmann::json::array({r.num(), r.den()});
}
inline Rat rat_from_json(const nlohmann::json& j) {
    return Rat(j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>());
}

template <typename VertexSeq>
nlohmann::json vertices_json(const VertexSeq& pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pts)
        arr.push_back(nlohmann::json::array({rat_json(p[0]), rat_json(p[1]), rat_json(p[2])}));
    return arr;
}

inline nlohmann::json to_json(const CurvePoint& v) {
    return nlohmann::json{{"moves", v.moves()}, {"vertices", vertices_json(v.vertices)}};
}
inline CurvePoint curve_from_json(const nlohmann::json& j) {
    CurvePoint v;
    for (const auto& p : j.at("vertices"))
        v.vertices.push_back({rat_from_json(p.at(0)), rat_from_json(p.at(1)),
                              rat_from_json(p.at(2))});
    if (!v.endpoints_valid())
        throw std::invalid_argument("curve_from_json: bad endpoints");
    return v;
}

inline nlohmann::json to_json(const PLKnot& w) {
    return nlohmann::json{{"segments", w.segments()}, {"vertices", vertices_json(w.vertices)}};
}

inline nlohmann::json to_json(const LatticeKnot& k) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : k.vertices)
        arr.push_back(nlohmann::json::array({p[0], p[1], p[2]}));
    return nlohmann::json{{"segments", k.segments()},
                          {"vertices", arr},
                          {"steps", k.step_string()}};
}

} // namespace plumber
