// JSON and CSV forms of configurations and results. Numbers are written as decimal strings.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "splitforge/asymptotics.hpp"
#include "splitforge/equilibria.hpp"
#include "splitforge/inner.hpp"
#include "splitforge/manifolds.hpp"
#include "splitforge/study.hpp"

namespace splitforge {

using Json = nlohmann::ordered_json;

// Accepts a decimal string or a JSON number (read through its shortest decimal text).
Real real_from_json(const Json& j);
Json real_to_json(const Real& x);
Json complex_to_json(const Complex& z);

Json to_json(const Polynomial5& p);
Polynomial5 polynomial_from_json(const Json& j);
Json to_json(const UnfoldingSpec& spec);
UnfoldingSpec spec_from_json(const Json& j);

// Bits implied by a study configuration document, before any Real is parsed.
PrecisionContext precision_from_json(const Json& config);
StudyConfig study_config_from_json(const Json& j);

Json to_json(const Equilibrium& eq);
std::string sample_csv_header();
std::string to_csv_row(const SplittingSample& s);
Json to_json(const SplittingSample& s);
Json to_json(const StokesResult& r);
Json to_json(const FitResult& r);
std::string fit_csv(const FitResult& r);
Json to_json(const Prediction& p);
Json to_json(const StudyReport& r);
std::string prediction_csv(const StudyReport& r);

Json read_json_file(const std::string& path);

}  // namespace splitforge
