#ifndef COPOS_IO_HPP
#define COPOS_IO_HPP

#include "copos/grid_cone.hpp"
#include "copos/polycone.hpp"
#include "copos/simplex_partition.hpp"
#include "copos/soscone.hpp"
#include "copos/tensor.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace copos
{

/// Malformed tensor or certificate document.
class ParseError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

std::string tool_version();

/// Tensor document:
///   {"n": 3, "d": 4, "default": "5",
///    "entries": [{"idx": [1, 1, 1, 1], "val": "0"}, ...], "name": "..."}
/// Indices are 1-based and sorted; values are "p/q", integer or decimal strings
/// (JSON numbers are read through their literal text).
struct TensorDocument
{
    SymTensor tensor;
    std::string name;
};

TensorDocument parse_tensor_document(std::string_view text);
SymTensor parse_tensor(std::string_view text);

/// Canonical document: entries differing from the default, in lexicographic order.
nlohmann::json tensor_to_json(const SymTensor& A, const std::string& name = {});
std::string emit_tensor(const SymTensor& A, const std::string& name = {});

/// "sha256:<hex>" of the compact canonical document (default 0, no name), so
/// equal tensors share a digest however their default was chosen.
std::string tensor_digest(const SymTensor& A);

struct Witness
{
    RationalPoint point;
    Rational value;

    bool operator==(const Witness&) const = default;
};

/// Machine-checkable verdict of one run.
struct CertificateDocument
{
    /// Member, NotMember, Certified, Unknown, Copositive, NotCopositive,
    /// StrictlyIndeterminate, Pass or Fail.
    std::string verdict;
    /// coef, sos, partition, grid, screen or oracle.
    std::string method;
    std::optional<int> level;
    std::optional<int> depth;
    std::optional<Witness> witness;
    nlohmann::json stats = nlohmann::json::object();
    /// Gram blocks for sos certificates: [{"monomials": [[...]], "matrix": [[...]]}].
    nlohmann::json gram = nullptr;
    std::string tool_version;
    std::string input_digest;

    nlohmann::json to_json() const;
    static CertificateDocument from_json(const nlohmann::json& j);
    bool operator==(const CertificateDocument&) const = default;
};

/// 0 for Member/Certified/Copositive/Pass, 1 for NotMember/NotCopositive/Fail,
/// 2 for Unknown/StrictlyIndeterminate.
int exit_code_for(const std::string& verdict);

CertificateDocument coefficient_certificate(const SymTensor& A, int level, const CoefficientVerdict& v);
CertificateDocument sos_certificate(const SymTensor& A, int level, const GramProblem& problem, const SosResult& v,
                                    const SolveOptions& options = {});
CertificateDocument grid_certificate(const SymTensor& A, int level, const GridVerdict& v);
CertificateDocument partition_certificate(const SymTensor& A, const CertifyOptions& options, const Certificate& c);
CertificateDocument screen_certificate(const SymTensor& A, const ScreenResult& s);

/// A_theta table: {"level": r, "s": r+d, "coefficients": [{"theta": [...], "value": "p/q"}]}.
nlohmann::json expansion_to_json(const PolyExpansion& e);

struct VerifyReport
{
    bool ok = true;
    std::vector<std::string> messages;
};

/// Re-checks a certificate against a tensor using only the document: digest,
/// witness (exact evaluation, sign and simplex membership), Gram blocks, and a
/// deterministic re-run for coef, grid and partition verdicts without witness.
VerifyReport verify_certificate(const CertificateDocument& doc, const SymTensor& A);

} // namespace copos

#endif
