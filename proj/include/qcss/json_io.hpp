#pragma once

#include <string>

#include "json.hpp"
#include "qcss/bounds.hpp"
#include "qcss/optimizer.hpp"
#include "qcss/seqlab.hpp"

namespace qcss {

nlohmann::json to_json(const QcssParams& p);
nlohmann::json to_json(const BoundResult& r);
nlohmann::json to_json(const TightnessReport& t);
nlohmann::json to_json(const PerturbationReport& r);
nlohmann::json to_json(const VerifyReport& r);

/// SequenceSet file format:
/// {"K":..,"M":..,"N":..,"unimodular":..,"entries":[[[[re,im],..],..],..]}
/// with matrices -> rows -> columns nesting.
nlohmann::json to_json(const SequenceSet& s);
SequenceSet sequence_set_from_json(const nlohmann::json& j);

void write_sequence_set(const std::string& path, const SequenceSet& s);
SequenceSet read_sequence_set(const std::string& path);

}  // namespace qcss
