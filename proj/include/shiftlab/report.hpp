#pragma once

#include <json.hpp>

#include "shiftlab/popularity.hpp"
#include "shiftlab/search.hpp"
#include "shiftlab/verify.hpp"

namespace shiftlab {

using json = nlohmann::ordered_json;

json to_json(const RepHistogram& h);
json to_json(const VerificationReport& r);
json to_json(const TraceStep& s);
json to_json(const ProofTrace& t);
json to_json(const PopularityDecomposition& d, const RefineResult* refine = nullptr);
json to_json(const SearchRecord& r);

/// One CSV row per (instance, inequality step) for batch runs.
std::string trace_to_csv(const std::string& instance, const ProofTrace& t);
std::string search_record_csv_row(std::uint64_t p, const SearchRecord& r);

} // namespace shiftlab
