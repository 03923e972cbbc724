#include "qcss/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace qcss {

using nlohmann::json;

json to_json(const QcssParams& p) {
    return json{{"K", p.K}, {"M", p.M}, {"N", p.N}, {"a", p.a()}};
}

json to_json(const BoundResult& r) {
    json j{{"kind", bound_kind_name(r.kind)},
           {"params", to_json(r.params)},
           {"value", r.value},
           {"valid", r.valid},
           {"validity_notes", r.validity_notes}};
    if (r.m) j["m"] = *r.m;
    if (r.j) j["j"] = *r.j;
    if (r.r) j["r"] = *r.r;
    return j;
}

json to_json(const TightnessReport& t) {
    return json{{"M", t.M},
                {"k_bar_inf", t.k_bar_inf},
                {"d1", t.d1},
                {"d2", t.d2},
                {"d3", t.d3},
                {"cosine_tighter", t.cosine_tighter},
                {"sine_tighter", t.sine_tighter},
                {"chebyshev_tighter", t.chebyshev_tighter}};
}

namespace {
json case_stats_json(const PerturbationCaseStats& s) {
    return json{{"trials", s.trials},
                {"resampled", s.resampled},
                {"max_violation", s.max_violation},
                {"min_norm", s.min_norm},
                {"max_norm", s.max_norm}};
}
}  // namespace

json to_json(const PerturbationReport& r) {
    return json{{"params", to_json(r.params)},
                {"seed", r.seed},
                {"trials", r.trials},
                {"norm_cap", r.norm_cap},
                {"objective_at_w", r.objective_at_w},
                {"max_violation", r.max_violation},
                {"max_violation_rel", r.max_violation_rel},
                {"identity_max_mismatch", r.identity_max_mismatch},
                {"min_norm", r.min_norm},
                {"max_norm", r.max_norm},
                {"cases",
                 {{"unstructured", case_stats_json(r.unstructured)},
                  {"case_i", case_stats_json(r.case_i)},
                  {"case_ii", case_stats_json(r.case_ii)}}},
                {"warning", r.warning}};
}

json to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"bound", to_json(c.bound)},
                              {"slack", c.slack},
                              {"holds", c.holds},
                              {"checked", c.checked}});
    return json{{"delta_max", r.delta_max},
                {"delta_max_sq", r.delta_max_sq},
                {"violations", r.violations},
                {"checks", checks}};
}

json to_json(const SequenceSet& s) {
    s.validate();
    json entries = json::array();
    for (const auto& m : s.matrices) {
        json rows = json::array();
        for (long long r = 0; r < m.rows(); ++r) {
            json cols = json::array();
            for (long long c = 0; c < m.cols(); ++c)
                cols.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
            rows.push_back(std::move(cols));
        }
        entries.push_back(std::move(rows));
    }
    return json{{"K", s.K()},
                {"M", s.M()},
                {"N", s.N()},
                {"unimodular", s.unimodular},
                {"entries", std::move(entries)}};
}

SequenceSet sequence_set_from_json(const json& j) {
    const long long K = j.at("K").get<long long>();
    const long long M = j.at("M").get<long long>();
    const long long N = j.at("N").get<long long>();
    SequenceSet s;
    s.unimodular = j.value("unimodular", true);
    const auto& entries = j.at("entries");
    if (static_cast<long long>(entries.size()) != K)
        throw std::runtime_error("sequence set: entries count does not match K");
    for (const auto& mat : entries) {
        if (static_cast<long long>(mat.size()) != M)
            throw std::runtime_error("sequence set: row count does not match M");
        MatrixXcd m(M, N);
        for (long long r = 0; r < M; ++r) {
            const auto& row = mat.at(r);
            if (static_cast<long long>(row.size()) != N)
                throw std::runtime_error("sequence set: column count does not match N");
            for (long long c = 0; c < N; ++c) {
                const auto& pair = row.at(c);
                if (pair.size() != 2)
                    throw std::runtime_error("sequence set: entry must be [re, im]");
                m(r, c) = std::complex<double>(pair.at(0).get<double>(),
                                               pair.at(1).get<double>());
            }
        }
        s.matrices.push_back(std::move(m));
    }
    s.validate();
    return s;
}

void write_sequence_set(const std::string& path, const SequenceSet& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_sequence_set: cannot open " + path);
    out << to_json(s).dump(2) << '\n';
}

SequenceSet read_sequence_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_sequence_set: cannot open " + path);
    json j;
    in >> j;
    return sequence_set_from_json(j);
}

}  // namespace qcss
