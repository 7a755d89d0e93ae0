#pragma once

// CSV and JSON serialization of sequence tables.
//
// CSV: header "n,0,1,...,n_max" for triangles (row n padded with empty
// cells past k = n), "n,value" for sequences. Cells are quoted when they
// contain a comma, quote or line break.
//
// JSON: {"family", "construction", "n_max", "params": {"lambda", "p", "r"},
// "value_type": "rational" | "polynomial", "rows": [[cell, ...], ...]} with a
// rational cell as a "num/den" string and a polynomial cell as the array of
// its coefficient strings in ascending powers.

#include <truncbell/sequences.hpp>

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

namespace truncbell {

inline std::string csv_quote(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string render_cell(const SequenceTable& t, const Poly& v) {
    return t.polynomial_valued() ? v.to_string() : v.coeff(0).to_string();
}

inline std::string table_to_csv(const SequenceTable& t) {
    std::ostringstream os;
    if (t.triangular()) {
        os << "n";
        for (int k = 0; k <= t.n_max; ++k) os << ',' << k;
        os << '\n';
        for (int n = 0; n <= t.n_max; ++n) {
            os << n;
            for (int k = 0; k <= t.n_max; ++k) {
                os << ',';
                if (k <= n) os << csv_quote(render_cell(t, t.entry(n, k)));
            }
            os << '\n';
        }
    } else {
        os << "n,value\n";
        for (int n = 0; n <= t.n_max; ++n) os << n << ',' << csv_quote(render_cell(t, t.entry(n))) << '\n';
    }
    return os.str();
}

inline nlohmann::json table_to_json(const SequenceTable& t) {
    nlohmann::json j;
    j["family"] = to_string(t.family);
    j["construction"] = to_string(t.construction);
    j["n_max"] = t.n_max;
    j["params"] = {{"lambda", t.params.lambda.to_string()}, {"p", t.params.p}, {"r", t.params.r}};
    j["value_type"] = t.polynomial_valued() ? "polynomial" : "rational";
    j["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) {
            if (t.polynomial_valued()) {
                nlohmann::json cs = nlohmann::json::array();
                for (const auto& c : cell.coeffs()) cs.push_back(c.to_string());
                r.push_back(std::move(cs));
            } else {
                r.push_back(cell.coeff(0).to_string());
            }
        }
        j["rows"].push_back(std::move(r));
    }
    return j;
}

/// Inverse of table_to_json; throws std::invalid_argument on malformed input.
inline SequenceTable table_from_json(const nlohmann::json& j) {
    try {
        SequenceTable t;
        const auto family = parse_family(j.at("family").get<std::string>());
        const auto construction = parse_construction(j.at("construction").get<std::string>());
        if (!family || !construction) throw std::invalid_argument("unknown family or construction");
        t.family = *family;
        t.construction = *construction;
        t.n_max = j.at("n_max").get<int>();
        const auto& params = j.at("params");
        t.params.lambda = Lambda::parse(params.at("lambda").get<std::string>());
        t.params.p = params.at("p").get<int>();
        t.params.r = params.at("r").get<int>();
        const bool poly = j.at("value_type").get<std::string>() == "polynomial";
        if (poly != is_polynomial_valued(t.family)) throw std::invalid_argument("value_type does not match family");
        for (const auto& row : j.at("rows")) {
            std::vector<Poly> cells;
            for (const auto& cell : row) {
                if (poly) {
                    std::vector<Rational> cs;
                    for (const auto& c : cell) cs.push_back(Rational::parse(c.get<std::string>()));
                    cells.emplace_back(std::move(cs));
                } else {
                    cells.emplace_back(Rational::parse(cell.get<std::string>()));
                }
            }
            t.rows.push_back(std::move(cells));
        }
        if (static_cast<int>(t.rows.size()) != t.n_max + 1) throw std::invalid_argument("row count does not match n_max");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed table JSON: ") + e.what());
    }
}

}  // namespace truncbell
