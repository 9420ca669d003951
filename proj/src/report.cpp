#include "catastro/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>

#include <nlohmann/json.hpp>

namespace catastro {

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string opt_value(const std::optional<double>& v) {
  return v ? format_value(*v) : "";
}

void emit_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << "lambda,dist,model,quantity,value,abs_error,method,replicas,stderr\n";
  for (const ReportRow& r : rows) {
    os << opt_value(r.lambda) << ',' << r.dist << ',' << r.model << ',' << r.quantity << ','
       << format_value(r.value) << ',' << opt_value(r.abs_error) << ',' << r.method << ','
       << (r.replicas ? std::to_string(*r.replicas) : "") << ',' << opt_value(r.std_error)
       << '\n';
  }
}

void emit_json(std::ostream& os, const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ReportRow& r : rows) {
    nlohmann::json obj;
    obj["lambda"] = r.lambda ? format_value(*r.lambda) : "";
    obj["dist"] = r.dist;
    obj["model"] = r.model;
    obj["quantity"] = r.quantity;
    obj["value"] = format_value(r.value);
    obj["abs_error"] = opt_value(r.abs_error);
    obj["method"] = r.method;
    obj["replicas"] = r.replicas ? std::to_string(*r.replicas) : "";
    obj["stderr"] = opt_value(r.std_error);
    arr.push_back(obj);
  }
  os << arr.dump(2) << '\n';
}

void emit_table(std::ostream& os, const std::vector<ReportRow>& rows) {
  for (const ReportRow& r : rows) {
    os << std::left << std::setw(28) << r.quantity << ' ' << std::setw(18)
       << format_value(r.value);
    if (r.abs_error) os << "  +/-" << format_value(*r.abs_error);
    if (r.std_error) os << "  se=" << format_value(*r.std_error);
    if (!r.method.empty()) os << "  [" << r.method << ']';
    if (r.replicas) os << "  n=" << *r.replicas;
    os << '\n';
  }
}

}  // namespace

void emit_report(std::ostream& os, const std::vector<ReportRow>& rows, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::Csv: emit_csv(os, rows); break;
    case OutputFormat::Json: emit_json(os, rows); break;
    case OutputFormat::Table: emit_table(os, rows); break;
  }
}

}  // namespace catastro
