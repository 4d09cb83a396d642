#include "mcm/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace mcm {

Json series_to_json(const TruncSeries& s) {
    if (!s.context()) throw std::invalid_argument("series_to_json: series without context");
    Json j;
    j["vars"] = s.context()->vars();
    j["caps"] = s.context()->caps();
    j["mins"] = s.context()->mins();
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) {  // map order = lexicographic
        terms.push_back(Json::array({e, rat_str(c)}));
    }
    j["terms"] = std::move(terms);
    return j;
}

TruncSeries series_from_json(const Json& j) {
    Ctx ctx = make_context(j.at("vars").get<std::vector<std::string>>(),
                           j.at("caps").get<std::vector<int>>(),
                           j.contains("mins") ? j.at("mins").get<std::vector<int>>()
                                              : std::vector<int>{});
    TruncSeries s(ctx);
    for (const auto& t : j.at("terms")) {
        s.add_term(t.at(0).get<Exps>(), rat_parse(t.at(1).get<std::string>()));
    }
    return s;
}

Json partition_to_json(const Partition& lam) { return Json(lam); }

Partition partition_from_json(const Json& j) {
    Partition lam = j.get<Partition>();
    if (!is_valid_partition(lam)) throw std::invalid_argument("not a partition");
    return lam;
}

Json plane_partition_to_json(const PlanePartition& pi) { return Json(pi.rows); }

PlanePartition plane_partition_from_json(const Json& j) {
    PlanePartition pi{j.get<std::vector<std::vector<int>>>()};
    if (!is_valid_plane_partition(pi)) throw std::invalid_argument("not a plane partition");
    return pi;
}

Json report_to_json(const VerificationReport& rep) {
    Json j;
    j["identity"] = rep.identity;
    j["params"] = rep.params;
    j["caps"] = rep.caps;
    Json rs = Json::array();
    for (const auto& r : rep.residuals) {
        Json row;
        row["where"] = r.where;
        row["value"] = r.value;
        row["overflow"] = r.overflow;
        rs.push_back(std::move(row));
    }
    j["residuals"] = std::move(rs);
    j["notes"] = rep.notes;
    j["verdict"] = VerificationReport::verdict_name(rep.verdict());
    return j;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string report_to_csv(const VerificationReport& rep) {
    std::ostringstream os;
    os << "identity," << csv_escape(rep.identity) << "\n";
    for (const auto& [k, v] : rep.params) os << "param," << csv_escape(k) << "," << csv_escape(v) << "\n";
    for (const auto& [k, v] : rep.caps) os << "cap," << csv_escape(k) << "," << v << "\n";
    os << "where,value,overflow\n";
    for (const auto& r : rep.residuals)
        os << csv_escape(r.where) << "," << csv_escape(r.value) << "," << (r.overflow ? 1 : 0)
           << "\n";
    os << "verdict," << VerificationReport::verdict_name(rep.verdict()) << "\n";
    return os.str();
}

}  // namespace mcm
