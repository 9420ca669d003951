#include "catastro/grammar.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace catastro {

namespace {

[[noreturn]] void bad(const std::string& spec, const std::string& why) {
  throw std::invalid_argument("cannot parse '" + spec + "': " + why);
}

double parse_double(const std::string& spec, const std::string& tok) {
  double v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    bad(spec, "'" + tok + "' is not a decimal float");
  return v;
}

// "a=1,b=2" -> ordered key/value list
std::vector<std::pair<std::string, double>> parse_kv(const std::string& spec,
                                                     const std::string& body) {
  std::vector<std::pair<std::string, double>> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) bad(spec, "expected key=value, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), parse_double(spec, item.substr(eq + 1)));
  }
  return out;
}

double single_param(const std::string& spec, const std::string& body, const std::string& key) {
  auto kv = parse_kv(spec, body);
  if (kv.size() != 1 || kv[0].first != key)
    bad(spec, "expected exactly '" + key + "=<f>'");
  return kv[0].second;
}

}  // namespace

SurvivalLaw parse_survival_law(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "uniform") {
    if (!body.empty()) bad(spec, "'uniform' takes no parameters");
    return SurvivalLaw::uniform();
  }
  if (head == "degenerate") return SurvivalLaw::degenerate(single_param(spec, body, "p"));
  if (head == "power") return SurvivalLaw::power_function(single_param(spec, body, "a"));
  if (head == "truncexp")
    return SurvivalLaw::truncated_exponential(single_param(spec, body, "gamma"));
  if (head == "beta") {
    auto kv = parse_kv(spec, body);
    if (kv.size() != 2 || kv[0].first != "a" || kv[1].first != "b")
      bad(spec, "expected 'beta:a=<f>,b=<f>'");
    return SurvivalLaw::beta(kv[0].second, kv[1].second);
  }
  bad(spec, "unknown distribution (expected degenerate|beta|power|uniform|truncexp)");
}

RadiusLaw parse_radius_law(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "geomlife") return RadiusLaw::geometric_lifetime(single_param(spec, body, "p"));
  if (head == "fromdist") return RadiusLaw::from_survival_law(parse_survival_law(body));
  if (head == "support") {
    auto kv = parse_kv(spec, body);
    if (kv.empty()) bad(spec, "expected 'support:0=<f>,1=<f>,...'");
    std::map<long, double> pmf;
    long top = 0;
    for (auto& [key, value] : kv) {
      long k = 0;
      auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
      if (ec != std::errc() || p != key.data() + key.size() || k < 0)
        bad(spec, "'" + key + "' is not a radius value");
      pmf[k] = value;
      top = std::max(top, k);
    }
    std::vector<double> probs(static_cast<std::size_t>(top) + 1, 0.0);
    for (auto& [k, value] : pmf) probs[static_cast<std::size_t>(k)] = value;
    return RadiusLaw::finite_support(std::move(probs));
  }
  bad(spec, "unknown radius law (expected support|geomlife|fromdist)");
}

}  // namespace catastro
