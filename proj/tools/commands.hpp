#pragma once

#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "k3cusps/k3cusps.hpp"

namespace k3cusps::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsage = 2, kIdentityViolation = 3 };

/// Raised for malformed command-line input; maps to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

struct NRange {
    Int first = 1;
    Int last = 1;
};

/// "N" or "A..B", inclusive, with 1 <= A <= B.
inline NRange parse_n_range(const std::string& text) {
    auto to_int = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
            throw UsageError("invalid value for --n: '" + text + "'");
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw UsageError("invalid value for --n: '" + text + "'");
            return static_cast<Int>(v);
        } catch (const std::logic_error&) {
            throw UsageError("invalid value for --n: '" + text + "'");
        }
    };
    NRange range;
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        range.first = range.last = to_int(text);
    } else {
        range.first = to_int(text.substr(0, dots));
        range.last = to_int(text.substr(dots + 2));
    }
    if (range.first < 1) throw UsageError("n must be at least 1 (got '" + text + "')");
    if (range.last < range.first) throw UsageError("empty range for --n: '" + text + "'");
    return range;
}

inline Int parse_single_n(const std::string& text) {
    NRange r = parse_n_range(text);
    if (r.first != r.last) throw UsageError("this command takes a single n, not a range");
    return r.first;
}

inline ExtendedRational parse_point(const std::string& text) {
    try {
        return ExtendedRational::parse(text);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("malformed JSON in '" + path + "': " + e.what());
    }
}

/// A rational vector either as coordinates "1/2,0" or "[1/2, 0]", or as a sum of
/// basis symbols such as "e/2", "e/2+f/2", "3*e2 - e1/4". Symbols: e1..en, with
/// e and f as aliases for e1 and e2.
inline RationalVector parse_element(const std::string& raw, std::size_t rank) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']') text.push_back(c);
    if (text.empty()) throw UsageError("empty element");
    RationalVector out(rank);
    try {
        if (text.find_first_of("ef") == std::string::npos) {
            std::vector<std::string> parts;
            std::stringstream ss(text);
            for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
            if (parts.size() != rank)
                throw UsageError("element has " + std::to_string(parts.size()) + " coordinates, lattice rank is " +
                                 std::to_string(rank));
            for (std::size_t i = 0; i < rank; ++i) out[i] = Rational::parse(parts[i]);
            return out;
        }
        std::size_t pos = 0;
        while (pos < text.size()) {
            Rational sign(1);
            if (text[pos] == '+' || text[pos] == '-') {
                if (text[pos] == '-') sign = Rational(-1);
                ++pos;
            }
            std::size_t sym = text.find_first_of("ef", pos);
            if (sym == std::string::npos) throw UsageError("malformed element '" + raw + "'");
            Rational coef(1);
            std::string prefix = text.substr(pos, sym - pos);
            if (!prefix.empty()) {
                if (prefix.back() == '*') prefix.pop_back();
                coef = Rational::parse(prefix);
            }
            std::size_t index = 0;
            std::size_t p = sym + 1;
            if (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
                if (text[sym] != 'e') throw UsageError("malformed element '" + raw + "'");
                std::size_t start = p;
                while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
                index = std::stoul(text.substr(start, p - start));
                if (index == 0) throw UsageError("basis symbols are numbered from e1");
                --index;
            } else {
                index = text[sym] == 'e' ? 0 : 1;
            }
            if (p < text.size() && text[p] == '/') {
                std::size_t start = ++p;
                while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
                coef = coef / Rational::parse(text.substr(start, p - start));
            }
            if (index >= rank) throw UsageError("basis symbol out of range in '" + raw + "'");
            out[index] = out[index] + sign * coef;
            pos = p;
        }
    } catch (const InvalidArgument& e) {
        throw UsageError("malformed element '" + raw + "': " + e.what());
    }
    return out;
}

/// Integer vectors separated by ';', coordinates by ','.
inline std::vector<IntVector> parse_basis(const std::string& text, std::size_t rank) {
    std::vector<IntVector> out;
    std::stringstream rows(text);
    for (std::string row; std::getline(rows, row, ';');) {
        RationalVector v = parse_element(row, rank);
        IntVector w;
        for (const auto& c : v) {
            if (!c.is_integer()) throw UsageError("sublattice basis vectors must be integral");
            w.push_back(c.num());
        }
        out.push_back(std::move(w));
    }
    if (out.empty()) throw UsageError("empty sublattice basis");
    return out;
}

struct Options {
    std::string n_text;
    std::optional<Int> d;
    std::string point;
    std::string format = "table";
    std::optional<Int> oracle_bound;
    std::string gram_path;
    std::string action;
    std::string element;
    std::string basis;
};

inline bool as_json(const Options& o) { return o.format == "json"; }

inline std::string divisors_str(const std::vector<Int>& divisors) {
    if (divisors.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < divisors.size(); ++i) s += (i ? " x Z/" : "Z/") + std::to_string(divisors[i]);
    return s;
}

inline std::string vec_str(const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// cusps

inline int cmd_cusps(const Options& o, std::ostream& out) {
    NRange range = parse_n_range(o.n_text);
    json docs = json::array();
    for (Int n = range.first; n <= range.last; ++n) {
        CuspsDocument doc = cusps_document(n);
        if (as_json(o)) {
            docs.push_back(to_json(doc));
            continue;
        }
        out << "n=" << n << ": " << doc.cusps.size() << " Gamma0(n) cusps, " << doc.fricke_classes.size()
            << " Fricke classes\n";
        out << "  Gamma0 cusps (k,e):";
        for (const auto& c : doc.cusps) out << ' ' << c.str();
        out << "\n  Fricke classes:";
        for (const auto& cls : doc.fricke_classes) {
            auto orbit = fricke_orbit(cls);
            out << ' ' << orbit[0].str();
            if (orbit.size() == 2) out << '~' << orbit[1].str();
        }
        out << '\n';
    }
    if (as_json(o)) out << (docs.size() == 1 ? docs[0] : docs).dump(2) << '\n';
    return kSuccess;
}

// partners

inline int cmd_partners(const Options& o, std::ostream& out, std::ostream& err) {
    NRange range = parse_n_range(o.n_text);
    if (o.d && *o.d < 1) throw UsageError("--d must be positive");
    json docs = json::array();
    bool identity_ok = true;
    for (Int n = range.first; n <= range.last; ++n) {
        PartnersDocument doc = partners_document(n, o.d);
        identity_ok = identity_ok && doc.identity_holds;
        if (!doc.identity_holds) {
            for (const auto& f : verify_bijection(n).failures)
                err << "identity violation at n=" << n << ": " << f.check << ": " << f.detail << '\n';
        }
        if (as_json(o)) {
            docs.push_back(to_json(doc));
            continue;
        }
        out << "n=" << n << ": " << doc.partners.size() << " partner(s)";
        if (o.d) out << " with d=" << *o.d;
        out << "; " << doc.cusp_count << " Fricke cusps; identity " << (doc.identity_holds ? "holds" : "FAILS") << '\n';
        if (doc.partners.empty()) continue;
        out << "  " << std::left << std::setw(4) << "d" << std::setw(10) << "sigma" << std::setw(5) << "k"
            << std::setw(9) << "k_tilde" << std::setw(22) << "vector" << std::setw(12) << "cusp" << "k3_class\n";
        for (const auto& p : doc.partners) {
            out << "  " << std::setw(4) << p.d << std::setw(10) << vec_str({p.sigma.r, p.sigma.s}) << std::setw(5)
                << p.k << std::setw(9) << p.k_tilde << std::setw(22) << p.vector.str() << std::setw(12)
                << p.cusp.canonical.str() << p.k3_class << '\n';
        }
    }
    if (as_json(o)) out << (docs.size() == 1 ? docs[0] : docs).dump(2) << '\n';
    return identity_ok ? kSuccess : kIdentityViolation;
}

// classify

inline json classification_json(const BoundaryClassification& c) {
    return {{"n", c.label.n},
            {"point", c.point.str()},
            {"label", {{"k", c.label.k}, {"e", c.label.e}}},
            {"fricke_class", {{"k", c.cusp.canonical.k}, {"e", c.cusp.canonical.e}}},
            {"partner", to_json(c.partner)},
            {"k3_class", c.partner.k3_class},
            {"denominator_class", c.denominator_class},
            {"unit", c.unit},
            {"fricke_flipped", c.fricke_flipped}};
}

inline int cmd_classify(const Options& o, std::ostream& out) {
    Int n = parse_single_n(o.n_text);
    ExtendedRational t = parse_point(o.point);
    BoundaryClassification c = classify_boundary_point(t, n);
    if (as_json(o)) {
        out << classification_json(c).dump(2) << '\n';
        return kSuccess;
    }
    const auto& p = c.partner;
    out << "point " << t.str() << " at n=" << n << '\n'
        << "  cusp label     " << c.label.str() << '\n'
        << "  Fricke class   " << c.cusp.canonical.str() << (c.fricke_flipped ? " (Fricke image of the label)" : "")
        << '\n'
        << "  partner        d=" << p.d << " sigma=" << vec_str({p.sigma.r, p.sigma.s}) << " k=" << p.k
        << " k_tilde=" << p.k_tilde << " vector " << p.vector.str() << (p.d == 1 && p.sigma.s == 1 ? " (trivial)" : "")
        << '\n'
        << "  k3 class       [" << p.k3_class << "] mod " << n << '\n'
        << "  [b] mod n      [" << c.denominator_class << "], unit " << c.unit << '\n';
    return kSuccess;
}

// verify

struct VerifyCheck {
    std::string name;
    bool ok = true;
    std::vector<std::string> counterexamples;

    void fail(std::string detail) {
        ok = false;
        if (counterexamples.size() < 10) counterexamples.push_back(std::move(detail));
    }
};

struct OracleSummary {
    Int bound = 0;
    Int max_denominator = 0;
    std::size_t points = 0;
    std::size_t witnesses = 0;
    std::size_t label_pairs = 0;
};

inline std::vector<VerifyCheck> verify_n(Int n, Int bound, OracleSummary& oracle) {
    std::vector<VerifyCheck> checks;
    checks.reserve(8);
    auto add = [&](const char* name) -> VerifyCheck& {
        checks.emplace_back();
        checks.back().name = name;
        return checks.back();
    };
    auto& identity = add("counting_identity");
    auto report = verify_bijection(n);
    for (const auto& f : report.failures) identity.fail(f.check + ": " + f.detail);

    auto& involution = add("fricke_involution");
    auto labels = gamma0_cusps(n);
    for (const auto& c : labels)
        if (!(fricke_image(fricke_image(c)) == c)) involution.fail("label " + c.str());

    auto& count = add("gamma0_count");
    if (static_cast<Int>(labels.size()) != gamma0_cusp_count(n))
        count.fail(std::to_string(labels.size()) + " labels vs closed form " + std::to_string(gamma0_cusp_count(n)));

    auto& vectors = add("mukai_vectors");
    for (const auto& p : fm_partners(n)) {
        if (!is_primitive_isotropic(p.vector) || mukai_div(p.vector) != p.d) vectors.fail("vector " + p.vector.str());
        if (p.k3_class != mod(p.d * p.sigma.r, n) || p.k3_class != mod(p.boundary_point().den(), n))
            vectors.fail("k3 class of " + p.vector.str());
    }

    auto& roundtrip = add("round_trips");
    for (const auto& c : labels)
        if (!(cusp_label_of_rational(rational_of_cusp_label(c), n) == c)) roundtrip.fail("label " + c.str());
    auto cusps_doc = cusps_document(n);
    if (!(cusps_from_json(json::parse(to_json(cusps_doc).dump())) == cusps_doc)) roundtrip.fail("cusps JSON");
    auto partners_doc = partners_document(n);
    if (!(partners_from_json(json::parse(to_json(partners_doc).dump())) == partners_doc))
        roundtrip.fail("partners JSON");
    auto al_doc = atkin_lehner_document(n);
    if (!(atkin_lehner_from_json(json::parse(to_json(al_doc).dump())) == al_doc)) roundtrip.fail("Atkin-Lehner JSON");

    auto& al = add("atkin_lehner");
    for (const auto& s : al_doc.splittings) {
        auto g = s.matrix();
        Int u = disc_action_unit(s);
        if (g.det() != Rational(s.N) || !normalizes_Oprime(g, n) || mod(u * u, 2 * n) != 1 % (2 * n) ||
            disc_action_by_conjugation(g, n) != u)
            al.fail("splitting N=" + std::to_string(s.N) + " M=" + std::to_string(s.M));
    }

    // Oracle spot checks: every point with denominator <= n is matched to the
    // representative of its label, and representatives of distinct labels stay apart.
    auto& spot = add("oracle_spot_checks");
    oracle.bound = bound;
    oracle.max_denominator = n;
    std::vector<ExtendedRational> reps;
    for (const auto& c : labels) reps.push_back(rational_of_cusp_label(c));
    for (const auto& t : boundary_points(n)) {
        ++oracle.points;
        auto label = cusp_label_of_rational(t, n);
        auto result = oracle_gamma0_equivalent(t, rational_of_cusp_label(label), n, bound);
        if (result.verdict == OracleVerdict::equivalent)
            ++oracle.witnesses;
        else
            spot.fail("no witness within bound " + std::to_string(bound) + " from " + t.str() + " to its label " +
                      label.str());
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            ++oracle.label_pairs;
            if (oracle_gamma0_equivalent(reps[i], reps[j], n, bound).verdict == OracleVerdict::equivalent)
                spot.fail("witness joins distinct labels " + labels[i].str() + " and " + labels[j].str());
        }
    return checks;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    NRange range = parse_n_range(o.n_text);
    if (o.oracle_bound && *o.oracle_bound < 1) throw UsageError("--oracle-bound must be positive");
    json results = json::array();
    json failures = json::array();
    for (Int n = range.first; n <= range.last; ++n) {
        Int bound = o.oracle_bound ? *o.oracle_bound : mul_checked(16, mul_checked(n, n));
        if (bound < n) throw UsageError("--oracle-bound must be at least n");
        OracleSummary oracle;
        auto checks = verify_n(n, bound, oracle);
        json entry = {{"n", n}, {"checks", json::object()}};
        for (const auto& c : checks) {
            entry["checks"][c.name] = c.ok;
            for (const auto& detail : c.counterexamples) failures.push_back({{"n", n}, {"check", c.name}, {"detail", detail}});
        }
        entry["oracle"] = {{"bound", oracle.bound},
                           {"max_denominator", oracle.max_denominator},
                           {"points", oracle.points},
                           {"witnesses", oracle.witnesses},
                           {"label_pairs", oracle.label_pairs}};
        results.push_back(entry);
    }
    bool ok = failures.empty();
    if (as_json(o)) {
        out << json{{"range", {range.first, range.last}}, {"ok", ok}, {"results", results}, {"failures", failures}}.dump(2)
            << '\n';
    } else {
        std::map<std::string, std::size_t> passed;
        for (const auto& r : results)
            for (const auto& [name, value] : r["checks"].items()) passed[name] += value.get<bool>() ? 1 : 0;
        out << "verify n=" << range.first << ".." << range.last << '\n';
        for (const auto& [name, count] : passed) out << "  " << std::left << std::setw(20) << name << count << '/' << results.size() << '\n';
        out << (ok ? "all checks passed\n" : "FAILED\n");
        if (!ok) out << json{{"failures", failures}}.dump(2) << '\n';
    }
    return ok ? kSuccess : kVerificationFailed;
}

// lattice

inline int cmd_lattice(const Options& o, std::ostream& out) {
    json input = read_json_file(o.gram_path);
    IntMatrix gram;
    try {
        gram = gram_from_json(input);
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed Gram matrix: ") + e.what());
    }
    EvenLattice lattice(gram);
    DiscriminantForm form(lattice);

    if (o.action == "disc") {
        DiscFormDocument doc = disc_form_document(form);
        if (as_json(o)) {
            out << to_json(doc).dump(2) << '\n';
            return kSuccess;
        }
        out << "D_L = " << divisors_str(doc.divisors) << ", order " << form.order() << '\n';
        for (const auto& [elt, value] : doc.q) out << "  q" << vec_str(elt) << " = " << value.str() << '\n';
        return kSuccess;
    }
    if (o.action == "isotropic") {
        auto elements = isotropic_disc_elements(form);
        if (as_json(o)) {
            json list = json::array();
            for (const auto& x : elements) list.push_back({{"elt", x.coords}, {"order", x.order}});
            out << json{{"divisors", form.divisors()}, {"isotropic", list}}.dump(2) << '\n';
            return kSuccess;
        }
        out << elements.size() << " isotropic element(s) in D_L = " << divisors_str(form.divisors()) << '\n';
        for (const auto& x : elements) out << "  " << vec_str(x.coords) << " order " << x.order << '\n';
        return kSuccess;
    }
    if (o.action == "overlattice") {
        if (o.element.empty()) throw UsageError("overlattice needs --element");
        DiscElement x;
        try {
            x = form.class_of(parse_element(o.element, lattice.rank()));
        } catch (const UsageError&) {
            throw;
        } catch (const InvalidArgument& e) {
            throw UsageError(std::string("element: ") + e.what());
        }
        Overlattice over = overlattice_from_isotropic(lattice, form, x);
        if (as_json(o)) {
            json basis = json::array();
            for (std::size_t j = 0; j < over.basis.cols(); ++j) {
                json col = json::array();
                for (const auto& c : over.basis.column(j)) col.push_back(c.str());
                basis.push_back(col);
            }
            out << json{{"gram", over.lattice.gram().to_rows()}, {"basis", basis}}.dump(2) << '\n';
            return kSuccess;
        }
        out << "overlattice by " << vec_str(x.coords) << " (order " << x.order << ")\n  Gram " << over.lattice.gram()
            << "\n  det " << over.lattice.determinant() << '\n';
        return kSuccess;
    }
    if (o.action == "glue") {
        if (o.basis.empty()) throw UsageError("glue needs --basis");
        GluingTable glue = nikulin_lambda(lattice, parse_basis(o.basis, lattice.rank()));
        json pairs = json::array();
        for (const auto& [x, y] : glue.correspondence)
            pairs.push_back({{"x", x.coords},
                             {"lambda", y.coords},
                             {"q_sub", glue.sub_form.q(x).str()},
                             {"q_perp", glue.perp_form.q(y).str()}});
        if (as_json(o)) {
            out << json{{"sub_gram", glue.sub.gram().to_rows()},
                        {"perp_gram", glue.perp.gram().to_rows()},
                        {"sub_divisors", glue.sub_form.divisors()},
                        {"perp_divisors", glue.perp_form.divisors()},
                        {"lambda", pairs}}
                       .dump(2)
                << '\n';
            return kSuccess;
        }
        out << "M Gram " << glue.sub.gram() << ", D_M = " << divisors_str(glue.sub_form.divisors()) << '\n'
            << "M^perp Gram " << glue.perp.gram() << ", D_M^perp = " << divisors_str(glue.perp_form.divisors()) << '\n';
        for (const auto& p : pairs)
            out << "  " << vec_str(p["x"].get<std::vector<Int>>()) << " -> " << vec_str(p["lambda"].get<std::vector<Int>>())
                << "  q = " << p["q_sub"].get<std::string>() << ", " << p["q_perp"].get<std::string>() << '\n';
        return kSuccess;
    }
    throw UsageError("unknown lattice action '" + o.action + "' (expected disc, isotropic, overlattice or glue)");
}

/// Runs one command line. Never throws; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cusps of the Fricke modular curve and twisted Fourier-Mukai partners of K3 surfaces"};
    app.require_subcommand(1);
    Options o;
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    };

    auto* cusps = app.add_subcommand("cusps", "Gamma0(n) cusps and Fricke classes");
    cusps->add_option("--n", o.n_text, "n or A..B")->required();
    add_format(cusps);

    auto* partners = app.add_subcommand("partners", "Twisted Fourier-Mukai partners and their cusp classes");
    partners->add_option("--n", o.n_text, "n or A..B")->required();
    partners->add_option("--d", o.d, "Only partners with Brauer order d");
    add_format(partners);

    auto* classify = app.add_subcommand("classify", "Cusp, Fricke class and partner of a boundary point");
    classify->add_option("--n", o.n_text, "n")->required();
    classify->add_option("--point", o.point, "p/q, p or inf")->required();
    add_format(classify);

    auto* verify = app.add_subcommand("verify", "Run the invariant suite over a range of n");
    verify->add_option("--n", o.n_text, "n or A..B")->required();
    verify->add_option("--oracle-bound", o.oracle_bound, "Entry bound for the Gamma0(n) oracle (default 16 n^2)");
    add_format(verify);

    auto* lattice = app.add_subcommand("lattice", "Discriminant forms, isotropic elements, overlattices, gluing");
    lattice->add_option("--gram", o.gram_path, "JSON file {\"gram\": [[...]]}")->required();
    lattice->add_option("action", o.action, "disc | isotropic | overlattice | glue")->required();
    lattice->add_option("--element", o.element, "Dual vector, e.g. e/2 or 1/2,0");
    lattice->add_option("--basis", o.basis, "Sublattice basis for glue, e.g. \"1,0,0,0;0,1,0,0\"");
    add_format(lattice);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (cusps->parsed()) return cmd_cusps(o, out);
        if (partners->parsed()) return cmd_partners(o, out, err);
        if (classify->parsed()) return cmd_classify(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        return cmd_lattice(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Overflow& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kIdentityViolation;
    }
}

} // namespace k3cusps::cli
