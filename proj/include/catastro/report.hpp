#ifndef CATASTRO_REPORT_HPP
#define CATASTRO_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace catastro {

enum class OutputFormat { Table, Csv, Json };

// One flat row; the same schema serves exact and simulated quantities.
// CSV columns: lambda,dist,model,quantity,value,abs_error,method,replicas,stderr
struct ReportRow {
  std::optional<double> lambda;
  std::string dist;
  std::string model;
  std::string quantity;
  double value = 0.0;        // +infinity allowed; emitted as the token "inf"
  std::optional<double> abs_error;
  std::string method;
  std::optional<long> replicas;
  std::optional<double> std_error;
};

// 12 significant digits; "inf" for infinities
std::string format_value(double v);

void emit_report(std::ostream& os, const std::vector<ReportRow>& rows, OutputFormat fmt);

}  // namespace catastro

#endif
