#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rss/granger.hpp"
#include "rss/regress.hpp"
#include "rss/scanner.hpp"
#include "rss/stationarity.hpp"
#include "rss/var.hpp"

namespace rss {

using Json = nlohmann::ordered_json;

// "***" p < 0.01, "**" p < 0.05, "*" p < 0.1.
std::string stars(double p);
// Fixed decimals, with -0.000 printed as 0.000.
std::string fixed(double v, int decimals = 3);

Json to_json(const UnitRootResult& r);
Json to_json(const IntegrationOrder& r);
Json to_json(const DiagnosticResult& r);
Json to_json(const LagSelection& r);
Json to_json(const CusumResult& r);  // summary only, the process goes to CSV
Json to_json(const WaldResult& r);
Json to_json(const VarModel& m);
Json to_json(const GrangerReport& r);
Json to_json(const OlsResult& r);
Json to_json(const AugmentationStudy& s);
Json to_json(const ScanStats& s);

// Tables in the layout of a published results section.
void write_granger_text(std::ostream& out, const GrangerReport& r);
void write_ols_text(std::ostream& out, const OlsResult& r, const std::string& dependent);
void write_augmentation_text(std::ostream& out, const AugmentationStudy& s);
// `lag,aic`
void write_aic_csv(std::ostream& out, const LagSelection& r);
// `t,W,boundary` for one equation.
void write_cusum_csv(std::ostream& out, const CusumProcess& p, double boundary);

}  // namespace rss
