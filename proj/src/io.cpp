#include "satbody/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "satbody/experiment.hpp"

namespace satbody {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json to_json(const BodyDescriptor& desc) {
    Json j;
    j["n"] = desc.n;
    j["N"] = desc.num_blocks;
    j["k"] = desc.k;
    j["kind"] = to_string(desc.kind);
    if (desc.kind == NormKind::Lp) j["lp_p"] = desc.lp_p;
    j["p"] = desc.p_exponent;
    j["seed"] = desc.seed;
    j["stream"] = desc.stream;
    return j;
}

BodyDescriptor body_descriptor_from_json(const Json& j) {
    BodyDescriptor desc;
    desc.n = j.at("n").get<Index>();
    desc.num_blocks = j.at("N").get<Index>();
    desc.k = j.at("k").get<Index>();
    desc.kind = norm_kind_from_string(j.at("kind").get<std::string>());
    if (desc.kind == NormKind::Lp) desc.lp_p = j.at("lp_p").get<double>();
    desc.p_exponent = j.at("p").get<double>();
    desc.seed = j.at("seed").get<std::uint64_t>();
    desc.stream = j.at("stream").get<std::uint64_t>();
    return desc;
}

QuotientBody build_body(const BodyDescriptor& desc) {
    NormOracle w = desc.kind == NormKind::Lp ? make_norm_oracle(NormKind::Lp, desc.k, desc.lp_p)
                                             : make_norm_oracle(desc.kind, desc.k);
    return QuotientBody(make_block_gaussian_map(desc.n, desc.num_blocks, desc.k, desc.seed,
                                                desc.stream),
                        std::move(w), desc.p_exponent);
}

Json to_json(const WitnessReport& report) {
    Json j;
    j["quotient_id"] = report.quotient_id;
    j["kappa"] = report.kappa;
    Json blocks = Json::array();
    for (const auto& blk : report.per_block) {
        Json b;
        b["j"] = blk.j;
        b["s_min_block"] = blk.s_min_block;
        b["s_max_block"] = blk.s_max_block;
        b["omega_j0_pass"] = blk.omega_j0_pass;
        b["cross_norms"] = blk.cross_norms;
        b["omega_jprime_pass"] = blk.omega_jprime_pass;
        b["brutal_pass"] = blk.brutal_pass;
        if (blk.exact_lp_pass) b["exact_lp_pass"] = *blk.exact_lp_pass;
        blocks.push_back(std::move(b));
    }
    j["per_block"] = std::move(blocks);
    if (report.witness)
        j["witness"] = *report.witness;
    else
        j["witness"] = nullptr;
    return j;
}

Json to_json(const PerturbationReport& report) {
    Json j;
    j["delta"] = report.delta;
    j["proj_dist"] = report.proj_dist;
    j["delta1"] = report.delta1;
    j["block_proj_dist"] = report.block_proj_dist;
    j["block_dist_pass"] = report.block_dist_pass;
    j["relaxed_bounds_pass"] = report.relaxed_bounds_pass;
    j["relaxed_kappa_pass"] = report.relaxed_kappa_pass;
    return j;
}

Json to_json(const ParamCertificate& cert) {
    Json j;
    j["n"] = cert.n;
    j["m0"] = cert.m0;
    j["N"] = cert.big_n;
    j["k"] = cert.k;
    if (cert.q) j["q"] = *cert.q;
    j["constants"] = {{"C0", cert.constants.c0_width},
                      {"Cprime", cert.constants.cprime},
                      {"C2", cert.constants.c2_net},
                      {"c1", cert.constants.c1}};
    j["kappa"] = cert.kappa;
    j["ell"] = cert.ell;
    j["delta"] = cert.delta;
    Json checks;
    for (const auto& [name, pass] : cert.checks) checks[name] = pass;
    j["checks"] = std::move(checks);
    j["feasible"] = cert.feasible;
    j["bounds"] = {{"log_omega1_bound", cert.log_omega1_bound},
                   {"log_singleop_bound", cert.log_singleop_bound},
                   {"log_union_bound", cert.log_union_bound},
                   {"kmax", cert.kmax}};
    j["kmax_terms"] = cert.kmax_terms;
    j["c1_max_feasible"] = cert.c1_max_feasible;
    if (cert.beta) j["beta"] = *cert.beta;
    if (cert.gamma) j["gamma"] = *cert.gamma;
    if (cert.prop_kmax) j["prop_kmax"] = *cert.prop_kmax;
    if (cert.unproven_eta_bound) j["unproven_eta_bound"] = *cert.unproven_eta_bound;
    j["net_within_coarse_bound"] = cert.net_within_coarse_bound;
    return j;
}

std::string certificate_table(const ParamCertificate& cert) {
    std::ostringstream out;
    auto line = [&out](const std::string& name, const std::string& value) {
        out << "  " << name;
        for (std::size_t i = name.size(); i < 34; ++i) out << ' ';
        out << value << "\n";
    };
    out << "parameter certificate (n=" << cert.n << ", m0=" << cert.m0 << ", N=" << cert.big_n
        << ", k=" << cert.k;
    if (cert.q) out << ", q=" << format_double(*cert.q);
    out << ")\n";
    line("kappa", format_double(cert.kappa));
    line("ell", std::to_string(cert.ell));
    line("delta", format_double(cert.delta));
    if (cert.beta) line("beta", format_double(*cert.beta));
    if (cert.gamma) line("gamma", format_double(*cert.gamma));
    for (const auto& [name, pass] : cert.checks) line(name, pass ? "pass" : "FAIL");
    line("kmax", format_double(cert.kmax));
    line("kmax_terms[0]", format_double(cert.kmax_terms[0]));
    line("kmax_terms[1]", format_double(cert.kmax_terms[1]));
    line("kmax_terms[2]", format_double(cert.kmax_terms[2]));
    if (cert.prop_kmax) line("prop_kmax", format_double(*cert.prop_kmax));
    if (cert.unproven_eta_bound)
        line("unproven_eta_bound", format_double(*cert.unproven_eta_bound));
    line("log_omega1_bound", format_double(cert.log_omega1_bound));
    line("log_singleop_bound", format_double(cert.log_singleop_bound));
    line("log_union_bound", format_double(cert.log_union_bound));
    line("c1_max_feasible", format_double(cert.c1_max_feasible));
    line("net_within_coarse_bound",
         cert.net_within_coarse_bound ? "yes" : "no");
    line("feasible", cert.feasible ? "yes" : "NO");
    return out.str();
}

CsvWriter::CsvWriter(std::ostream& out, const Json& config, std::uint64_t seed) : out_(out) {
    out_ << "# " << kToolVersion << "\n";
    out_ << "# seed " << seed << "\n";
    out_ << "# config " << config.dump() << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
}

} // namespace satbody
