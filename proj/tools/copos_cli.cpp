// copos: command-line front end.
//
// Exit codes: 0 Member/Certified/Copositive/Pass, 1 NotMember/NotCopositive/Fail,
// 2 Unknown/StrictlyIndeterminate, 3 usage error, 4 unreadable or malformed
// input, 5 size cap exceeded (see COPOS_MAX_TERMS), 6 internal error.

#include "copos/compare.hpp"
#include "copos/io.hpp"
#include "copos/limits.hpp"
#include "copos/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace copos;
using json = nlohmann::json;

namespace
{

enum Exit
{
    kUsage = 3,
    kInput = 4,
    kSize = 5,
    kInternal = 6,
};

class InputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SymTensor load_tensor(const std::string& path)
{
    try
    {
        return parse_tensor(slurp(path));
    }
    catch (const ParseError& e)
    {
        throw InputError(path + ": " + e.what());
    }
}

struct Output
{
    std::string path;

    void write(const std::string& text) const
    {
        if (path.empty() || path == "-")
        {
            std::cout << text;
            if (text.empty() || text.back() != '\n')
                std::cout << '\n';
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw InputError("cannot write " + path);
        out << text;
        if (text.empty() || text.back() != '\n')
            out << '\n';
    }
    void write(const json& j) const { write(j.dump(2)); }
};

// "R" or "a..b"; compare always starts at level 0, so only the upper end counts.
int parse_levels(const std::string& text)
{
    auto dots = text.find("..");
    std::string hi = dots == std::string::npos ? text : text.substr(dots + 2);
    if (dots != std::string::npos && text.substr(0, dots) != "0")
        throw CLI::ValidationError("--levels", "range must start at 0");
    try
    {
        std::size_t used = 0;
        int r = std::stoi(hi, &used);
        if (used != hi.size() || r < 0)
            throw std::invalid_argument(hi);
        return r;
    }
    catch (const std::logic_error&)
    {
        throw CLI::ValidationError("--levels", "expected R or 0..R, got '" + text + "'");
    }
}

std::vector<double> parse_probe(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_double(parse_rational(item)));
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Copositivity of symmetric tensors: inner and outer approximation hierarchies"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    std::string tensor_path;
    std::string output;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("tensor", tensor_path, "Tensor document (JSON), '-' for stdin")->required();
        sub->add_option("-o,--output", output, "Write the document here instead of stdout");
    };

    // check
    auto* check = app.add_subcommand("check", "Membership in one hierarchy level");
    add_common(check);
    std::string method;
    int level = 0;
    SolveOptions sos;
    check->add_option("--method", method, "coef, sos or grid")
        ->required()
        ->check(CLI::IsMember({"coef", "sos", "grid"}));
    check->add_option("--level", level, "Hierarchy level r")->check(CLI::NonNegativeNumber);
    check->add_option("--eig-tol", sos.eig_tol, "SOS eigenvalue tolerance")->check(CLI::PositiveNumber);
    check->add_option("--match-tol", sos.match_tol, "SOS coefficient tolerance")->check(CLI::PositiveNumber);
    check->add_option("--max-iters", sos.max_iters, "SOS iteration budget")->check(CLI::PositiveNumber);

    // certify
    auto* certify = app.add_subcommand("certify", "Branch and bound over simplicial partitions");
    add_common(certify);
    CertifyOptions copt;
    std::string order = "fifo";
    certify->add_option("--max-depth", copt.max_depth, "Bisection depth cap")->check(CLI::NonNegativeNumber);
    certify->add_option("--budget", copt.simplex_budget, "Simplex budget")->check(CLI::PositiveNumber);
    certify->add_option("--threads", copt.threads, "Worker threads (1 = reference mode)")
        ->check(CLI::Range(1u, 256u));
    certify->add_option("--order", order, "Work list order")->check(CLI::IsMember({"fifo", "lifo"}));

    // expand
    auto* expand = app.add_subcommand("expand", "Coefficients A_theta of P^(r)");
    add_common(expand);
    expand->add_option("--level", level, "Hierarchy level r")->check(CLI::NonNegativeNumber);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Brute-force ground truth (grid minimum or sphere sampling)");
    add_common(oracle);
    int resolution = 0;
    std::size_t samples = 0;
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::string> probes;
    auto* res_opt = oracle->add_option("--resolution", resolution, "Exact minimum over the grid {m x integral}")
                        ->check(CLI::PositiveNumber);
    auto* sam_opt = oracle->add_option("--samples", samples, "Random unit vectors in R^n")->check(CLI::PositiveNumber);
    res_opt->excludes(sam_opt);
    oracle->add_option("--seed", seed, "Sampling seed")->needs(sam_opt);
    oracle->add_option("--probe", probes, "Extra sample point, comma separated")->needs(sam_opt);

    // screen
    auto* screen = app.add_subcommand("screen", "Necessary conditions on diagonal and first-order entries");
    add_common(screen);

    // compare
    auto* compare = app.add_subcommand("compare", "Every hierarchy at levels 0..R");
    add_common(compare);
    std::string levels = "0..2";
    bool as_json = false;
    compare->add_option("--levels", levels, "R or 0..R");
    compare->add_flag("--json", as_json, "Machine-readable output");
    compare->add_option("--max-depth", copt.max_depth, "Bisection depth cap")->check(CLI::NonNegativeNumber);

    // verify
    auto* verify = app.add_subcommand("verify", "Re-check a certificate against its tensor");
    std::string cert_path;
    verify->add_option("certificate", cert_path, "Certificate document")->required();
    verify->add_option("tensor", tensor_path, "Tensor document")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kUsage;
    }

    const Output out{output};
    try
    {
        if (*check)
        {
            auto A = load_tensor(tensor_path);
            CertificateDocument doc;
            if (method == "coef")
                doc = coefficient_certificate(A, level, member_C_r(A, level));
            else if (method == "sos")
            {
                auto problem = build_gram_problem(A, level);
                doc = sos_certificate(A, level, problem, member_K_r(A, level, sos), sos);
            }
            else
                doc = grid_certificate(A, level, member_O_r(A, level));
            out.write(doc.to_json());
            return exit_code_for(doc.verdict);
        }
        if (*certify)
        {
            auto A = load_tensor(tensor_path);
            copt.order = order == "lifo" ? WorkOrder::Lifo : WorkOrder::Fifo;
            auto doc = partition_certificate(A, copt, certify_copositivity(A, copt));
            out.write(doc.to_json());
            return exit_code_for(doc.verdict);
        }
        if (*expand)
        {
            auto A = load_tensor(tensor_path);
            out.write(expansion_to_json(expand_Pr(A, level)));
            return 0;
        }
        if (*oracle)
        {
            auto A = load_tensor(tensor_path);
            json j{{"method", "oracle"}, {"input_digest", tensor_digest(A)}, {"tool_version", tool_version()}};
            if (*sam_opt)
            {
                std::vector<std::vector<double>> pts;
                for (const auto& p : probes)
                {
                    auto v = parse_probe(p);
                    if (static_cast<int>(v.size()) != A.n())
                        throw CLI::ValidationError("--probe", "expected " + std::to_string(A.n()) + " coordinates");
                    pts.push_back(std::move(v));
                }
                auto r = fullspace_sample_min(A, samples, seed, pts);
                j["mode"] = "samples";
                j["samples"] = r.samples;
                j["seed"] = r.seed;
                j["min_value"] = r.min_value;
                j["argmin"] = r.argmin;
            }
            else
            {
                auto r = simplex_grid_min(A, resolution > 0 ? resolution : 50);
                j["mode"] = "grid";
                j["resolution"] = r.resolution;
                j["points"] = r.points;
                j["min_value"] = to_string(r.min_value);
                j["argmin"] = to_strings(r.argmin);
            }
            out.write(j);
            return 0;
        }
        if (*screen)
        {
            auto A = load_tensor(tensor_path);
            auto doc = screen_certificate(A, necessary_screen(A));
            out.write(doc.to_json());
            return exit_code_for(doc.verdict);
        }
        if (*compare)
        {
            auto A = load_tensor(tensor_path);
            auto report = compare_hierarchies(A, parse_levels(levels), sos, copt);
            if (as_json)
                out.write(compare_to_json(report));
            else
                out.write(compare_to_table(report));
            return 0;
        }
        if (*verify)
        {
            auto A = load_tensor(tensor_path);
            CertificateDocument doc;
            try
            {
                doc = CertificateDocument::from_json(json::parse(slurp(cert_path)));
            }
            catch (const json::exception& e)
            {
                throw InputError(cert_path + ": " + e.what());
            }
            catch (const ParseError& e)
            {
                throw InputError(cert_path + ": " + e.what());
            }
            auto report = verify_certificate(doc, A);
            for (const auto& m : report.messages)
                std::cerr << m << "\n";
            out.write(json{{"verified", report.ok}, {"verdict", doc.verdict}, {"method", doc.method},
                           {"messages", report.messages}});
            return report.ok ? 0 : 1;
        }
    }
    catch (const CLI::ValidationError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const InputError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    catch (const SizeLimitError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kSize;
    }
    catch (const std::exception& e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
