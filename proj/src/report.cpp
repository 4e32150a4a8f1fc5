#include "voxproof/report.hpp"

#include <sstream>

#include "json.hpp"
#include "voxproof/errors.hpp"

namespace voxproof {

namespace {

std::string fault_line(const FaultDetail& d) {
  std::string s = to_string(d.cls);
  if (d.line > 0) s += " at line " + std::to_string(d.line);
  if (d.label) s += " (N" + std::to_string(*d.label) + ")";
  if (!d.thread.empty()) s += " in thread '" + d.thread + "'";
  return s;
}

nlohmann::ordered_json fault_json(const FaultDetail& d) {
  nlohmann::ordered_json j;
  j["class"] = to_string(d.cls);
  j["command_index"] = d.command_index;
  j["line"] = d.line;
  if (d.label)
    j["label"] = *d.label;
  else
    j["label"] = nullptr;
  j["thread"] = d.thread;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const Voxel& v : d.contested) cells.push_back({v.x, v.y, v.z});
  j["contested"] = std::move(cells);
  j["detail"] = d.what;
  return j;
}

}  // namespace

std::string text_report(const VerificationReport& rep) {
  std::ostringstream os;
  os << "verdict: " << to_string(rep.verdict) << '\n';
  if (rep.fault) {
    os << "fault: " << fault_line(*rep.fault) << '\n';
    os << "contested: " << to_string(rep.fault->contested) << '\n';
    os << "detail: " << rep.fault->what << '\n';
  }
  if (rep.diagnostics.size() > 1) {
    os << "further faults:\n";
    for (std::size_t i = 1; i < rep.diagnostics.size(); ++i)
      os << "  " << fault_line(rep.diagnostics[i]) << " contested "
         << to_string(rep.diagnostics[i].contested) << '\n';
  }
  os << "steps: " << rep.steps << '\n';
  return os.str();
}

std::string json_report(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["verdict"] = to_string(rep.verdict);
  j["steps"] = rep.steps;
  if (rep.fault)
    j["fault"] = fault_json(*rep.fault);
  else
    j["fault"] = nullptr;
  nlohmann::ordered_json diags = nlohmann::ordered_json::array();
  for (const FaultDetail& d : rep.diagnostics) diags.push_back(fault_json(d));
  j["diagnostics"] = std::move(diags);
  return j.dump(2) + "\n";
}

std::string voxel_dump(const SpatialHeap& h) {
  std::ostringstream os;
  for (const Voxel& v : h.domain())
    os << v.x << ' ' << v.y << ' ' << v.z << ' ' << to_string(h.at(v)) << '\n';
  return os.str();
}

std::vector<std::pair<Voxel, Occupancy>> parse_voxel_dump(const std::string& text) {
  std::vector<std::pair<Voxel, Occupancy>> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Voxel v;
    std::string token;
    if (!(ls >> v.x >> v.y >> v.z >> token))
      throw ParseError("bad voxel dump line: " + line, lineno);
    const auto occ = parse_occupancy(token);
    if (!occ) throw ParseError("bad occupancy token '" + token + "'", lineno);
    out.emplace_back(v, *occ);
  }
  return out;
}

}  // namespace voxproof
