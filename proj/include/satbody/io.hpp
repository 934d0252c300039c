#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "satbody/body.hpp"
#include "satbody/params.hpp"
#include "satbody/witness.hpp"

namespace satbody {

using Json = nlohmann::ordered_json; // insertion order = stable field order

inline constexpr const char* kToolVersion = "satbody 0.1.0";

/// Everything needed to rebuild a body bit-identically:
/// {n, N, k, kind, lp_p, p, seed, stream}.
struct BodyDescriptor {
    Index n = 0, num_blocks = 0, k = 0;
    NormKind kind = NormKind::LInf;
    double lp_p = 0.0;      // oracle exponent, Lp kind only
    double p_exponent = 1.0; // the sum exponent of Z
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

Json to_json(const BodyDescriptor& desc);
BodyDescriptor body_descriptor_from_json(const Json& j);

/// Reconstructs the body (no quotient) from its descriptor; the Gaussian
/// matrix is replayed from (seed, stream) so the result is bit-identical.
QuotientBody build_body(const BodyDescriptor& desc);

Json to_json(const WitnessReport& report);
Json to_json(const PerturbationReport& report);
Json to_json(const ParamCertificate& cert);

/// Human-readable two-column rendering (condition | status / value).
std::string certificate_table(const ParamCertificate& cert);

/// Deterministic shortest-round-trip-ish formatting used across all outputs.
std::string format_double(double v);

/// CSV with a '#'-prefixed provenance preamble (tool version, seed, config
/// as one JSON line) followed by an RFC-4180 body: '.' decimal, LF endings.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const Json& config, std::uint64_t seed);

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
};

} // namespace satbody
