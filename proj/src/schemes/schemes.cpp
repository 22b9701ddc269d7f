#include "schemes/schemes.hpp"

#include <sstream>

namespace taucert {

std::int64_t fat_point_degree(int m, int multiplicity) {
  if (multiplicity < 2 || multiplicity > 4)
    throw std::invalid_argument("fat_point_degree: multiplicity must be 2, 3 or 4");
  return binomial(m + multiplicity - 1, m);
}

std::int64_t two_three_degree(int m) { return 2 * static_cast<std::int64_t>(m) + 1; }

std::int64_t component_degree(int m, ComponentKind kind) {
  switch (kind) {
    case ComponentKind::kDouble:
      return fat_point_degree(m, 2);
    case ComponentKind::kTriple:
      return fat_point_degree(m, 3);
    case ComponentKind::kQuadruple:
      return fat_point_degree(m, 4);
    case ComponentKind::kTwoThree:
      return two_three_degree(m);
  }
  throw std::logic_error("component_degree: unreachable");
}

namespace {

ComponentKind kind_from_token(const std::string& token) {
  if (token == "2P") return ComponentKind::kDouble;
  if (token == "3P") return ComponentKind::kTriple;
  if (token == "4P") return ComponentKind::kQuadruple;
  if (token == "Z23") return ComponentKind::kTwoThree;
  throw std::invalid_argument("scheme spec: unknown component '" + token + "'");
}

std::string token_from_kind(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::kDouble:
      return "2P";
    case ComponentKind::kTriple:
      return "3P";
    case ComponentKind::kQuadruple:
      return "4P";
    case ComponentKind::kTwoThree:
      return "Z23";
  }
  throw std::logic_error("scheme spec: unreachable");
}

}  // namespace

std::vector<ComponentKind> parse_scheme_spec(const std::string& text) {
  std::vector<ComponentKind> kinds;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](char c) { return c == ' '; }),
                token.end());
    if (token.empty()) continue;
    long repeat = 1;
    if (auto x = token.find('x'); x != std::string::npos) {
      repeat = std::stol(token.substr(x + 1));
      if (repeat < 1) throw std::invalid_argument("scheme spec: repeat count must be >= 1");
      token = token.substr(0, x);
    }
    const ComponentKind kind = kind_from_token(token);
    for (long i = 0; i < repeat; ++i) kinds.push_back(kind);
  }
  if (kinds.empty()) throw std::invalid_argument("scheme spec: no components");
  return kinds;
}

std::string scheme_spec_string(const std::vector<ComponentKind>& kinds) {
  std::string out;
  for (std::size_t i = 0; i < kinds.size();) {
    std::size_t j = i;
    while (j < kinds.size() && kinds[j] == kinds[i]) ++j;
    if (!out.empty()) out += ',';
    out += token_from_kind(kinds[i]);
    if (j - i > 1) out += "x" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace taucert
