#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "k3cusps/cusps.hpp"
#include "k3cusps/lattice.hpp"
#include "k3cusps/partners.hpp"
#include "k3cusps/quaternion.hpp"

namespace k3cusps {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("JSON document lacks field '") + key + "'");
    return j.at(key);
}

inline Int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw InvalidArgument(std::string("JSON field '") + key + "' must be an integer");
    return v.get<Int>();
}

inline std::vector<Int> int_array(const json& j) {
    if (!j.is_array()) throw InvalidArgument("expected a JSON array of integers");
    std::vector<Int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InvalidArgument("expected a JSON array of integers");
        out.push_back(x.get<Int>());
    }
    return out;
}

inline json label_json(const CuspLabel& c) { return {{"k", c.k}, {"e", c.e}}; }

inline CuspLabel label_from_json(const json& j, Int n) { return make_cusp_label(n, int_field(j, "k"), int_field(j, "e")); }

} // namespace detail

// Gram matrices: {"gram": [[...], ...]}

inline IntMatrix gram_from_json(const json& j) {
    const json& rows = detail::field(j, "gram");
    if (!rows.is_array() || rows.empty()) throw InvalidArgument("'gram' must be a nonempty array of rows");
    std::vector<std::vector<Int>> out;
    for (const auto& row : rows) out.push_back(detail::int_array(row));
    for (const auto& row : out)
        if (row.size() != out.size()) throw InvalidArgument("Gram matrix is not square");
    return IntMatrix::from_rows(out);
}

inline json gram_to_json(const IntMatrix& gram) { return {{"gram", gram.to_rows()}}; }

// Discriminant forms: {"divisors": [...], "q": [{"elt": [...], "value": "p/q"}]}

struct DiscFormDocument {
    std::vector<Int> divisors;
    std::vector<std::pair<std::vector<Int>, Rational>> q;

    friend bool operator==(const DiscFormDocument&, const DiscFormDocument&) = default;
};

inline DiscFormDocument disc_form_document(const DiscriminantForm& form, std::size_t budget = kEnumerationBudget) {
    DiscFormDocument doc;
    doc.divisors = form.divisors();
    for (auto& [x, value] : form.q_table(budget)) doc.q.emplace_back(x.coords, value);
    return doc;
}

inline json to_json(const DiscFormDocument& doc) {
    json q = json::array();
    for (const auto& [elt, value] : doc.q) q.push_back({{"elt", elt}, {"value", value.str()}});
    return {{"divisors", doc.divisors}, {"q", q}};
}

inline DiscFormDocument disc_form_from_json(const json& j) {
    DiscFormDocument doc;
    doc.divisors = detail::int_array(detail::field(j, "divisors"));
    const json& q = detail::field(j, "q");
    if (!q.is_array()) throw InvalidArgument("'q' must be an array");
    for (const auto& entry : q) {
        const json& value = detail::field(entry, "value");
        if (!value.is_string()) throw InvalidArgument("q value must be a string p/q");
        doc.q.emplace_back(detail::int_array(detail::field(entry, "elt")), Rational::parse(value.get<std::string>()));
    }
    return doc;
}

// Mukai vectors: {"n": n, "v": [r, k, s]}

inline json to_json(const MukaiVector& v) { return {{"n", v.n}, {"v", {v.r, v.k, v.s}}}; }

inline MukaiVector mukai_from_json(const json& j) {
    Int n = detail::int_field(j, "n");
    check_half_degree(n);
    auto v = detail::int_array(detail::field(j, "v"));
    if (v.size() != 3) throw InvalidArgument("Mukai vector must have three coordinates");
    return {n, v[0], v[1], v[2]};
}

// Cusps: {"n": n, "cusps": [{"k", "e"}], "fricke_classes": [{"k", "e", "orbit": [label, label]}]}

struct CuspsDocument {
    Int n = 1;
    std::vector<CuspLabel> cusps;
    std::vector<FrickeCuspClass> fricke_classes;

    friend bool operator==(const CuspsDocument&, const CuspsDocument&) = default;
};

inline CuspsDocument cusps_document(Int n) { return {n, gamma0_cusps(n), fricke_cusps(n)}; }

inline json to_json(const CuspsDocument& doc) {
    json cusps = json::array();
    for (const auto& c : doc.cusps) cusps.push_back(detail::label_json(c));
    json classes = json::array();
    for (const auto& cls : doc.fricke_classes) {
        json entry = detail::label_json(cls.canonical);
        entry["orbit"] = json::array();
        for (const auto& c : fricke_orbit(cls)) entry["orbit"].push_back(detail::label_json(c));
        classes.push_back(entry);
    }
    return {{"n", doc.n}, {"cusps", cusps}, {"fricke_classes", classes}};
}

inline CuspsDocument cusps_from_json(const json& j) {
    CuspsDocument doc;
    doc.n = detail::int_field(j, "n");
    check_half_degree(doc.n);
    for (const auto& c : detail::field(j, "cusps")) doc.cusps.push_back(detail::label_from_json(c, doc.n));
    for (const auto& c : detail::field(j, "fricke_classes")) {
        FrickeCuspClass cls{detail::label_from_json(c, doc.n)};
        if (!(fricke_class_of_label(cls.canonical) == cls)) throw InvalidArgument("label is not a canonical Fricke label");
        doc.fricke_classes.push_back(cls);
    }
    return doc;
}

// Partners: {"n", "partners": [{"d", "sigma", "k", "k_tilde", "vector", "cusp", "k3_class"}],
// "cusp_count", "identity_holds"}

struct PartnersDocument {
    Int n = 1;
    std::vector<PartnerDescriptor> partners;
    Int cusp_count = 0;
    bool identity_holds = false;

    friend bool operator==(const PartnersDocument& a, const PartnersDocument& b) {
        if (a.n != b.n || a.cusp_count != b.cusp_count || a.identity_holds != b.identity_holds ||
            a.partners.size() != b.partners.size())
            return false;
        for (std::size_t i = 0; i < a.partners.size(); ++i) {
            const auto& x = a.partners[i];
            const auto& y = b.partners[i];
            if (x.n != y.n || x.d != y.d || !(x.sigma == y.sigma) || x.k != y.k || x.k_tilde != y.k_tilde ||
                !(x.vector == y.vector) || !(x.cusp == y.cusp) || x.k3_class != y.k3_class)
                return false;
        }
        return true;
    }
};

inline json to_json(const PartnerDescriptor& p) {
    return {{"d", p.d},
            {"sigma", {p.sigma.r, p.sigma.s}},
            {"k", p.k},
            {"k_tilde", p.k_tilde},
            {"vector", {p.vector.r, p.vector.k, p.vector.s}},
            {"cusp", detail::label_json(p.cusp.canonical)},
            {"k3_class", p.k3_class}};
}

inline PartnerDescriptor partner_from_json(const json& j, Int n) {
    PartnerDescriptor p;
    p.n = n;
    p.d = detail::int_field(j, "d");
    auto sigma = detail::int_array(detail::field(j, "sigma"));
    if (sigma.size() != 2) throw InvalidArgument("'sigma' must be a pair [r, s]");
    p.sigma = {sigma[0], sigma[1]};
    p.k = detail::int_field(j, "k");
    p.k_tilde = detail::int_field(j, "k_tilde");
    auto v = detail::int_array(detail::field(j, "vector"));
    if (v.size() != 3) throw InvalidArgument("'vector' must have three coordinates");
    p.vector = {n, v[0], v[1], v[2]};
    p.cusp = {detail::label_from_json(detail::field(j, "cusp"), n)};
    p.k3_class = detail::int_field(j, "k3_class");
    return p;
}

inline PartnersDocument partners_document(Int n, std::optional<Int> d = std::nullopt) {
    PartnersDocument doc;
    doc.n = n;
    doc.partners = d ? fm_partners(n, *d) : fm_partners(n);
    doc.cusp_count = static_cast<Int>(fricke_cusps(n).size());
    doc.identity_holds = verify_bijection(n).ok();
    return doc;
}

inline json to_json(const PartnersDocument& doc) {
    json partners = json::array();
    for (const auto& p : doc.partners) partners.push_back(to_json(p));
    return {{"n", doc.n}, {"partners", partners}, {"cusp_count", doc.cusp_count}, {"identity_holds", doc.identity_holds}};
}

inline PartnersDocument partners_from_json(const json& j) {
    PartnersDocument doc;
    doc.n = detail::int_field(j, "n");
    check_half_degree(doc.n);
    for (const auto& p : detail::field(j, "partners")) doc.partners.push_back(partner_from_json(p, doc.n));
    doc.cusp_count = detail::int_field(j, "cusp_count");
    const json& holds = detail::field(j, "identity_holds");
    if (!holds.is_boolean()) throw InvalidArgument("'identity_holds' must be a boolean");
    doc.identity_holds = holds.get<bool>();
    return doc;
}

// Atkin-Lehner sweeps: {"n", "splittings": [{"N", "M", "a", "b", "matrix", "disc_unit"}]}

struct AtkinLehnerDocument {
    Int n = 1;
    std::vector<AtkinLehnerData> splittings;

    friend bool operator==(const AtkinLehnerDocument& a, const AtkinLehnerDocument& b) {
        if (a.n != b.n || a.splittings.size() != b.splittings.size()) return false;
        for (std::size_t i = 0; i < a.splittings.size(); ++i) {
            const auto& x = a.splittings[i];
            const auto& y = b.splittings[i];
            if (x.n != y.n || x.N != y.N || x.M != y.M || x.a != y.a || x.b != y.b) return false;
        }
        return true;
    }
};

inline AtkinLehnerDocument atkin_lehner_document(Int n) { return {n, atkin_lehner_all(n)}; }

inline json to_json(const AtkinLehnerDocument& doc) {
    json rows = json::array();
    for (const auto& al : doc.splittings) {
        auto g = al.matrix();
        rows.push_back({{"N", al.N},
                        {"M", al.M},
                        {"a", al.a},
                        {"b", al.b},
                        {"matrix", {{g.a.num(), g.b.num()}, {g.c.num(), g.d.num()}}},
                        {"disc_unit", disc_action_unit(al)}});
    }
    return {{"n", doc.n}, {"splittings", rows}};
}

inline AtkinLehnerDocument atkin_lehner_from_json(const json& j) {
    AtkinLehnerDocument doc;
    doc.n = detail::int_field(j, "n");
    check_half_degree(doc.n);
    for (const auto& row : detail::field(j, "splittings")) {
        AtkinLehnerData al{doc.n, detail::int_field(row, "N"), detail::int_field(row, "M"), detail::int_field(row, "a"),
                           detail::int_field(row, "b")};
        if (mul_checked(al.a, al.N) - mul_checked(al.b, al.M) != 1)
            throw InvalidArgument("Atkin-Lehner row violates a N - b M = 1");
        auto g = al.matrix();
        json expected = {{g.a.num(), g.b.num()}, {g.c.num(), g.d.num()}};
        if (detail::field(row, "matrix") != expected) throw InvalidArgument("Atkin-Lehner matrix does not match (a, b)");
        if (detail::int_field(row, "disc_unit") != disc_action_unit(al))
            throw InvalidArgument("Atkin-Lehner disc_unit does not match (a, b)");
        doc.splittings.push_back(al);
    }
    return doc;
}

} // namespace k3cusps
