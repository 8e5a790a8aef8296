#include "copos/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <set>

#ifndef COPOS_VERSION
#define COPOS_VERSION "0.0.0"
#endif

namespace copos
{

using nlohmann::json;

std::string tool_version()
{
    return COPOS_VERSION;
}

namespace
{

Rational value_of(const json& v, const std::string& what)
{
    try
    {
        if (v.is_string())
            return parse_rational(v.get<std::string>());
        if (v.is_number_integer() || v.is_number_unsigned())
            return parse_rational(v.dump());
        if (v.is_number_float())
            return parse_rational(v.dump());
    }
    catch (const std::invalid_argument& e)
    {
        throw ParseError(what + ": " + e.what());
    }
    throw ParseError(what + ": expected a rational string or number");
}

int positive_int(const json& doc, const char* key)
{
    if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 1 ||
        doc[key].get<long long>() > 1'000'000)
        throw ParseError(std::string("field '") + key + "' must be a positive integer");
    return doc[key].get<int>();
}

json point_to_json(const RationalPoint& p)
{
    return to_strings(p);
}

RationalPoint point_from_json(const json& j)
{
    if (!j.is_array())
        throw ParseError("point must be an array");
    RationalPoint p;
    for (const auto& x : j)
        p.push_back(value_of(x, "point coordinate"));
    return p;
}

json exponent_to_json(const ExponentVector& e)
{
    return e.alpha;
}

} // namespace

TensorDocument parse_tensor_document(std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("tensor document must be a JSON object");

    const int n = positive_int(doc, "n");
    const int d = positive_int(doc, "d");
    Rational def = 0;
    if (doc.contains("default") && !doc["default"].is_null())
        def = value_of(doc["default"], "default");

    std::map<Index, Rational> entries;
    if (doc.contains("entries"))
    {
        if (!doc["entries"].is_array())
            throw ParseError("'entries' must be an array");
        for (const auto& e : doc["entries"])
        {
            if (!e.is_object() || !e.contains("idx") || !e.contains("val") || !e["idx"].is_array())
                throw ParseError("each entry needs an 'idx' array and a 'val'");
            Index idx;
            for (const auto& c : e["idx"])
            {
                if (!c.is_number_integer())
                    throw ParseError("index components must be integers");
                long long v = c.get<long long>();
                if (v < 1 || v > n)
                    throw ParseError("index component " + std::to_string(v) + " outside 1.." + std::to_string(n));
                idx.push_back(static_cast<int>(v - 1));
            }
            if (static_cast<int>(idx.size()) != d)
                throw ParseError("index " + e["idx"].dump() + " does not have length d = " + std::to_string(d));
            if (!std::is_sorted(idx.begin(), idx.end()))
                throw ParseError("index " + e["idx"].dump() + " is not sorted (canonical form required)");
            Rational v = value_of(e["val"], "value at " + e["idx"].dump());
            if (!entries.emplace(std::move(idx), std::move(v)).second)
                throw ParseError("duplicate index " + e["idx"].dump());
        }
    }

    TensorDocument out{SymTensor(n, d, def, std::move(entries)), {}};
    if (doc.contains("name") && doc["name"].is_string())
        out.name = doc["name"].get<std::string>();
    return out;
}

SymTensor parse_tensor(std::string_view text)
{
    return parse_tensor_document(text).tensor;
}

json tensor_to_json(const SymTensor& A, const std::string& name)
{
    json doc;
    if (!name.empty())
        doc["name"] = name;
    doc["n"] = A.n();
    doc["d"] = A.d();
    doc["default"] = to_string(A.default_value());
    json entries = json::array();
    const auto& table = A.table();
    const auto& vals = A.canonical_values();
    for (std::size_t k = 0; k < table.size(); ++k)
    {
        if (vals[k] == A.default_value())
            continue;
        std::vector<int> idx;
        for (int i : table.tuple(k))
            idx.push_back(i + 1);
        entries.push_back({{"idx", idx}, {"val", to_string(vals[k])}});
    }
    doc["entries"] = std::move(entries);
    return doc;
}

std::string emit_tensor(const SymTensor& A, const std::string& name)
{
    return tensor_to_json(A, name).dump(2);
}

std::string tensor_digest(const SymTensor& A)
{
    // Normalise to default 0 so equal tensors hash equally whatever their default.
    std::map<Index, Rational> nonzero;
    const auto& vals = A.canonical_values();
    for (std::size_t k = 0; k < vals.size(); ++k)
        if (vals[k] != 0)
            nonzero.emplace(A.table().tuple(k), vals[k]);
    const std::string text = tensor_to_json(SymTensor(A.n(), A.d(), 0, std::move(nonzero))).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
    std::string hex = "sha256:";
    char buf[3];
    for (unsigned int i = 0; i < len; ++i)
    {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

json CertificateDocument::to_json() const
{
    json j;
    j["verdict"] = verdict;
    j["method"] = method;
    if (level)
        j["level"] = *level;
    if (depth)
        j["depth"] = *depth;
    if (witness)
        j["witness"] = {{"point", point_to_json(witness->point)}, {"value", to_string(witness->value)}};
    j["stats"] = stats;
    if (!gram.is_null())
        j["gram"] = gram;
    j["tool_version"] = tool_version;
    j["input_digest"] = input_digest;
    return j;
}

CertificateDocument CertificateDocument::from_json(const json& j)
{
    if (!j.is_object())
        throw ParseError("certificate must be a JSON object");
    CertificateDocument doc;
    try
    {
        doc.verdict = j.at("verdict").get<std::string>();
        doc.method = j.at("method").get<std::string>();
        if (j.contains("level"))
            doc.level = j["level"].get<int>();
        if (j.contains("depth"))
            doc.depth = j["depth"].get<int>();
        if (j.contains("witness"))
            doc.witness = Witness{point_from_json(j["witness"].at("point")),
                                  value_of(j["witness"].at("value"), "witness value")};
        if (j.contains("stats"))
            doc.stats = j["stats"];
        if (j.contains("gram"))
            doc.gram = j["gram"];
        doc.tool_version = j.value("tool_version", "");
        doc.input_digest = j.value("input_digest", "");
    }
    catch (const json::exception& e)
    {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
    return doc;
}

int exit_code_for(const std::string& verdict)
{
    static const std::set<std::string> yes{"Member", "Certified", "Copositive", "Pass"};
    static const std::set<std::string> no{"NotMember", "NotCopositive", "Fail"};
    if (yes.contains(verdict))
        return 0;
    if (no.contains(verdict))
        return 1;
    return 2;
}

namespace
{

CertificateDocument base_document(const SymTensor& A, std::string verdict, std::string method)
{
    CertificateDocument doc;
    doc.verdict = std::move(verdict);
    doc.method = std::move(method);
    doc.tool_version = tool_version();
    doc.input_digest = tensor_digest(A);
    return doc;
}

} // namespace

CertificateDocument coefficient_certificate(const SymTensor& A, int level, const CoefficientVerdict& v)
{
    auto doc = base_document(A, v.member ? "Member" : "NotMember", "coef");
    doc.level = level;
    doc.stats["coefficients"] = v.expansion.coeffs.size();
    if (v.worst_theta)
    {
        doc.stats["worst_theta"] = exponent_to_json(*v.worst_theta);
        doc.stats["worst_value"] = to_string(*v.worst_value);
    }
    return doc;
}

CertificateDocument sos_certificate(const SymTensor& A, int level, const GramProblem& problem, const SosResult& v,
                                    const SolveOptions& options)
{
    auto doc = base_document(A, v.status == SosStatus::Certified ? "Certified" : "Unknown", "sos");
    doc.level = level;
    doc.stats["iterations"] = v.iterations;
    doc.stats["fast_path"] = v.fast_path;
    doc.stats["lifted"] = v.lifted;
    doc.stats["best_residual"] = v.best_residual;
    doc.stats["best_min_eig"] = v.best_min_eig;
    doc.stats["eig_tol"] = options.eig_tol;
    doc.stats["match_tol"] = options.match_tol;
    if (v.certificate)
    {
        doc.stats["residual"] = v.certificate->residual;
        doc.stats["min_eig"] = v.certificate->min_eig;
        json blocks = json::array();
        for (std::size_t b = 0; b < problem.blocks.size(); ++b)
        {
            json mons = json::array();
            for (const auto& m : problem.blocks[b].monomials)
                mons.push_back(m.alpha);
            const auto& g = v.certificate->blocks[b];
            json rows = json::array();
            for (int i = 0; i < g.dim; ++i)
            {
                json row = json::array();
                for (int k = 0; k < g.dim; ++k)
                    row.push_back(g(i, k));
                rows.push_back(std::move(row));
            }
            blocks.push_back({{"monomials", std::move(mons)}, {"matrix", std::move(rows)}});
        }
        doc.gram = std::move(blocks);
    }
    return doc;
}

CertificateDocument grid_certificate(const SymTensor& A, int level, const GridVerdict& v)
{
    auto doc = base_document(A, v.member ? "Member" : "NotMember", "grid");
    doc.level = level;
    doc.stats["points_checked"] = v.points_checked;
    if (v.witness)
        doc.witness = Witness{*v.witness, *v.value};
    return doc;
}

CertificateDocument partition_certificate(const SymTensor& A, const CertifyOptions& options, const Certificate& c)
{
    auto doc = base_document(A, to_string(c.verdict), c.method);
    doc.depth = c.stats.max_depth_reached;
    doc.stats["max_depth"] = options.max_depth;
    doc.stats["simplex_budget"] = options.simplex_budget;
    doc.stats["simplices"] = c.stats.simplices_processed;
    doc.stats["pruned"] = c.stats.pruned;
    doc.stats["remaining"] = c.stats.remaining;
    doc.stats["delta"] = c.stats.delta;
    if (c.witness)
        doc.witness = Witness{*c.witness, *c.witness_value};
    return doc;
}

CertificateDocument screen_certificate(const SymTensor& A, const ScreenResult& s)
{
    auto doc = base_document(A, s.pass ? "Pass" : "Fail", "screen");
    if (!s.pass)
    {
        doc.stats["reason"] = s.reason;
        doc.witness = Witness{*s.witness, *s.witness_value};
    }
    return doc;
}

json expansion_to_json(const PolyExpansion& e)
{
    json rows = json::array();
    for (const auto& [theta, c] : e.coeffs)
        rows.push_back({{"theta", theta.alpha}, {"value", to_string(c)}});
    return {{"level", e.r}, {"s", e.s()}, {"n", e.n}, {"d", e.d}, {"coefficients", std::move(rows)}};
}

VerifyReport verify_certificate(const CertificateDocument& doc, const SymTensor& A)
{
    VerifyReport report;
    auto fail = [&](std::string msg) {
        report.ok = false;
        report.messages.push_back(std::move(msg));
    };
    auto note = [&](std::string msg) { report.messages.push_back(std::move(msg)); };

    if (doc.input_digest != tensor_digest(A))
    {
        fail("input digest does not match the tensor");
        return report;
    }
    note("digest matches");

    const bool negative_claim = doc.verdict == "NotMember" || doc.verdict == "NotCopositive" || doc.verdict == "Fail";
    if (doc.witness)
    {
        const auto& w = *doc.witness;
        if (static_cast<int>(w.point.size()) != A.n())
        {
            fail("witness has the wrong dimension");
            return report;
        }
        Rational sum = 0;
        for (const auto& x : w.point)
        {
            if (x < 0)
                fail("witness has a negative coordinate");
            sum += x;
        }
        if (sum != 1)
            fail("witness does not lie on the standard simplex");
        Rational value = eval(A, w.point);
        if (value != w.value)
            fail("witness value " + to_string(w.value) + " differs from exact evaluation " + to_string(value));
        if (negative_claim && value >= 0)
            fail("witness value is not negative");
        if (report.ok)
            note("witness re-evaluates to " + to_string(value));
    }
    else if (negative_claim)
    {
        if (doc.method == "coef" && doc.level)
        {
            auto v = member_C_r(A, *doc.level);
            if (v.member)
                fail("coefficient re-run finds a member");
            else
                note("coefficient re-run confirms a negative coefficient");
        }
        else
        {
            fail("negative verdict without witness");
        }
    }

    if (doc.verdict == "Member" && doc.method == "coef" && doc.level)
    {
        if (!member_C_r(A, *doc.level).member)
            fail("coefficient re-run finds a negative coefficient");
        else
            note("coefficient re-run confirms membership");
    }
    if (doc.verdict == "Member" && doc.method == "grid" && doc.level)
    {
        if (!member_O_r(A, *doc.level).member)
            fail("grid re-run finds a negative point");
        else
            note("grid re-run confirms membership");
    }
    if (doc.verdict == "Copositive" && doc.method == "partition")
    {
        CertifyOptions opt;
        opt.max_depth = doc.stats.value("max_depth", opt.max_depth);
        opt.simplex_budget = doc.stats.value("simplex_budget", opt.simplex_budget);
        if (certify_copositivity(A, opt).verdict != Verdict::Copositive)
            fail("partition re-run does not reproduce the verdict");
        else
            note("partition re-run confirms copositivity");
    }
    if (doc.verdict == "Copositive" && doc.method == "screen")
    {
        if (A.d() != 1 || !necessary_screen(A).pass)
            fail("screen verdict only certifies linear forms");
    }
    if (doc.verdict == "Certified" && doc.method == "sos")
    {
        if (!doc.level || !doc.gram.is_array())
        {
            fail("sos certificate lacks level or Gram blocks");
            return report;
        }
        try
        {
            GramProblem problem = build_gram_problem(A, *doc.level);
            GramProblem claimed = problem;
            claimed.blocks.clear();
            GramCertificate cert;
            for (const auto& b : doc.gram)
            {
                ParityBlock block;
                for (const auto& m : b.at("monomials"))
                {
                    ExponentVector e(m.get<std::vector<int>>());
                    if (e.size() != A.n() || e.degree() != A.d() + *doc.level)
                        throw ParseError("Gram monomial of wrong shape");
                    block.monomials.push_back(std::move(e));
                }
                SymMatrix g(static_cast<int>(block.monomials.size()));
                const auto& rows = b.at("matrix");
                if (rows.size() != block.monomials.size())
                    throw ParseError("Gram matrix size mismatch");
                for (int i = 0; i < g.dim; ++i)
                {
                    if (rows[static_cast<std::size_t>(i)].size() != block.monomials.size())
                        throw ParseError("Gram matrix size mismatch");
                    for (int k = 0; k < g.dim; ++k)
                        g(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
                }
                claimed.blocks.push_back(std::move(block));
                cert.blocks.push_back(std::move(g));
            }
            double eig_tol = doc.stats.value("eig_tol", 1e-8);
            double match_tol = doc.stats.value("match_tol", 1e-8);
            auto check = verify_gram_certificate(claimed, cert, eig_tol, match_tol);
            if (!check.ok)
                fail("Gram blocks fail re-verification (residual " + std::to_string(check.residual) +
                     ", min eigenvalue " + std::to_string(check.min_eig) + ")");
            else
                note("Gram blocks re-verified");
        }
        catch (const json::exception& e)
        {
            fail(std::string("malformed Gram blocks: ") + e.what());
        }
        catch (const ParseError& e)
        {
            fail(e.what());
        }
    }
    return report;
}

} // namespace copos
