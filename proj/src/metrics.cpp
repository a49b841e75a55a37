#include "ftdecomp/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "fileio.hpp"
#include "ftdecomp/error.hpp"

namespace ftdecomp {

namespace {

constexpr std::array<std::string_view, 4> kKindNames = {"inheritance", "invocation", "attribute_access",
                                                        "instantiation"};

void require_service(const DependencyGraph& graph, std::string_view service) {
  if (!graph.has_service(service))
    throw Error(ErrorCode::NotFound, "unknown service \"" + std::string(service) + "\"", std::string(service));
}

}  // namespace

std::string_view relation_kind_name(RelationKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

DependencyGraph::DependencyGraph(std::vector<TypeNode> nodes, std::vector<Relation> relations)
    : nodes_(std::move(nodes)), relations_(std::move(relations)) {
  sorted_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) sorted_[i] = i;
  std::sort(sorted_.begin(), sorted_.end(),
            [&](std::size_t a, std::size_t b) { return nodes_[a].type_name < nodes_[b].type_name; });
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    const auto& node = nodes_[sorted_[i]];
    if (node.type_name.empty() || node.service.empty())
      throw Error(ErrorCode::Validation, "type node with empty name or service");
    if (i > 0 && nodes_[sorted_[i - 1]].type_name == node.type_name)
      throw Error(ErrorCode::Duplicate, "duplicate type \"" + node.type_name + "\"", node.type_name);
  }
  auto exists = [&](const std::string& name) {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), name,
                               [&](std::size_t idx, const std::string& n) { return nodes_[idx].type_name < n; });
    return it != sorted_.end() && nodes_[*it].type_name == name;
  };
  for (const auto& r : relations_) {
    if (!exists(r.source) || !exists(r.target))
      throw Error(ErrorCode::Validation, "relation " + r.source + " -> " + r.target + " has an unknown endpoint",
                  exists(r.source) ? r.target : r.source);
    if (r.kind == RelationKind::Inheritance && r.source == r.target)
      throw Error(ErrorCode::Validation, "type \"" + r.source + "\" inherits from itself", r.source);
  }
}

std::vector<std::string> DependencyGraph::services() const {
  std::vector<std::string> out;
  std::set<std::string_view> seen;
  for (const auto& n : nodes_)
    if (seen.insert(n.service).second) out.push_back(n.service);
  return out;
}

bool DependencyGraph::has_service(std::string_view service) const {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const TypeNode& n) { return n.service == service; });
}

const std::string& DependencyGraph::service_of(std::string_view type_name) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), type_name,
                             [&](std::size_t idx, std::string_view name) { return nodes_[idx].type_name < name; });
  if (it == sorted_.end() || nodes_[*it].type_name != type_name)
    throw Error(ErrorCode::NotFound, "unknown type \"" + std::string(type_name) + "\"", std::string(type_name));
  return nodes_[*it].service;
}

std::int64_t afferent_coupling(const DependencyGraph& graph, std::string_view service) {
  require_service(graph, service);
  std::set<std::string_view> sources;
  for (const auto& r : graph.relations())
    if (graph.service_of(r.target) == service && graph.service_of(r.source) != service) sources.insert(r.source);
  return static_cast<std::int64_t>(sources.size());
}

std::int64_t efferent_coupling(const DependencyGraph& graph, std::string_view service) {
  require_service(graph, service);
  std::set<std::string_view> targets;
  for (const auto& r : graph.relations())
    if (graph.service_of(r.source) == service && graph.service_of(r.target) != service) targets.insert(r.target);
  return static_cast<std::int64_t>(targets.size());
}

Rational instability_exact(std::int64_t ca, std::int64_t ce) {
  if (ca + ce == 0) return Rational(0);
  return Rational(ce, ca + ce);
}

Tenths instability(std::int64_t ca, std::int64_t ce) { return round_tenths(instability_exact(ca, ce)); }

Rational relational_cohesion_exact(const DependencyGraph& graph, std::string_view service) {
  require_service(graph, service);
  std::int64_t types = 0;
  for (const auto& n : graph.nodes())
    if (n.service == service) ++types;
  std::int64_t internal = 0;
  for (const auto& r : graph.relations())
    if (graph.service_of(r.source) == service && graph.service_of(r.target) == service) ++internal;
  return Rational(internal, types);
}

Tenths relational_cohesion(const DependencyGraph& graph, std::string_view service) {
  return round_tenths(relational_cohesion_exact(graph, service));
}

MetricsReport metrics_report(const DependencyGraph& graph, const std::vector<std::string>& services) {
  const auto names = services.empty() ? graph.services() : services;
  std::vector<std::string> missing;
  for (const auto& s : names)
    if (!graph.has_service(s)) missing.push_back(s);
  if (!missing.empty()) {
    std::string list;
    for (const auto& s : missing) list += (list.empty() ? "" : ", ") + s;
    throw Error(ErrorCode::NotFound, "unknown service(s): " + list, missing.front());
  }

  MetricsReport report;
  std::int64_t sum_ca = 0, sum_ce = 0;
  Rational sum_i, sum_rc;
  for (const auto& s : names) {
    ServiceMetrics row;
    row.service = s;
    row.ca = afferent_coupling(graph, s);
    row.ce = efferent_coupling(graph, s);
    const Rational i = instability_exact(row.ca, row.ce);
    const Rational rc = relational_cohesion_exact(graph, s);
    row.instability = round_tenths(i);
    row.rc = round_tenths(rc);
    sum_ca += row.ca;
    sum_ce += row.ce;
    sum_i = sum_i + i;
    sum_rc = sum_rc + rc;
    report.rows.push_back(std::move(row));
  }
  if (!names.empty()) {
    const auto k = static_cast<std::int64_t>(names.size());
    report.average = {round_tenths(sum_ca, k), round_tenths(sum_ce, k), round_tenths(sum_i / Rational(k)),
                      round_tenths(sum_rc / Rational(k))};
  }
  return report;
}

DependencyGraph scaffold_to_graph(const ScaffoldManifest& manifest) {
  std::vector<TypeNode> nodes;
  std::vector<Relation> relations;
  for (const auto& s : manifest) {
    const std::string prefix = s.service_name + "/";
    const std::string main = prefix + "main/" + s.main_class_name;
    const std::string controller = prefix + "controller/" + s.service_name + "Controller";
    const std::string service = prefix + "service/" + s.service_name + "Impl";
    const std::string dao = prefix + "dao/" + s.service_name + "Dao";
    for (const auto* n : {&main, &controller, &service, &dao}) nodes.push_back({*n, s.service_name});
    relations.push_back({main, controller, RelationKind::Instantiation});
    relations.push_back({controller, service, RelationKind::Invocation});
    relations.push_back({service, dao, RelationKind::Invocation});
    for (const auto& e : s.entities) {
      const std::string entity = prefix + "entities/" + e.name;
      nodes.push_back({entity, s.service_name});
      relations.push_back({service, entity, RelationKind::AttributeAccess});
    }
  }
  return DependencyGraph(std::move(nodes), std::move(relations));
}

nlohmann::json graph_to_json(const DependencyGraph& graph) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : graph.nodes()) nodes.push_back({{"type_name", n.type_name}, {"service", n.service}});
  nlohmann::json relations = nlohmann::json::array();
  for (const auto& r : graph.relations())
    relations.push_back({{"source", r.source}, {"target", r.target}, {"kind", std::string(relation_kind_name(r.kind))}});
  return {{"nodes", std::move(nodes)}, {"relations", std::move(relations)}};
}

DependencyGraph graph_from_json(const nlohmann::json& doc) {
  using detail::require;
  using detail::require_string;
  std::vector<TypeNode> nodes;
  std::vector<Relation> relations;
  const auto& jn = require(doc, "nodes", "graph");
  const auto& jr = require(doc, "relations", "graph");
  if (!jn.is_array() || !jr.is_array()) throw Error(ErrorCode::Parse, "graph: nodes and relations must be arrays");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string where = "graph.nodes[" + std::to_string(i) + "]";
    nodes.push_back({require_string(jn[i], "type_name", where), require_string(jn[i], "service", where)});
  }
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string where = "graph.relations[" + std::to_string(i) + "]";
    const std::string kind = require_string(jr[i], "kind", where);
    auto it = std::find(kKindNames.begin(), kKindNames.end(), kind);
    if (it == kKindNames.end()) throw Error(ErrorCode::Parse, where + ": unknown relation kind \"" + kind + "\"", kind);
    relations.push_back({require_string(jr[i], "source", where), require_string(jr[i], "target", where),
                         static_cast<RelationKind>(it - kKindNames.begin())});
  }
  return DependencyGraph(std::move(nodes), std::move(relations));
}

DependencyGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(detail::parse_json(detail::read_file(path), path.string()));
}

nlohmann::json metrics_to_json(const MetricsReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"service", r.service},
                    {"ca", r.ca},
                    {"ce", r.ce},
                    {"instability", r.instability.as_double()},
                    {"rc", r.rc.as_double()}});
  }
  return {{"services", std::move(rows)},
          {"average",
           {{"ca", report.average.ca.as_double()},
            {"ce", report.average.ce.as_double()},
            {"instability", report.average.instability.as_double()},
            {"rc", report.average.rc.as_double()}}}};
}

std::string render_metrics(const MetricsReport& report) {
  std::vector<std::string> header = {"Metrics"};
  for (const auto& r : report.rows) header.push_back(r.service);
  header.push_back("Avg.");

  std::vector<std::vector<std::string>> body;
  auto row = [&](const char* label, auto cell, Tenths avg) {
    std::vector<std::string> line = {label};
    for (const auto& r : report.rows) line.push_back(cell(r));
    line.push_back(avg.str());
    body.push_back(std::move(line));
  };
  row("Ca", [](const ServiceMetrics& r) { return std::to_string(r.ca); }, report.average.ca);
  row("Ce", [](const ServiceMetrics& r) { return std::to_string(r.ce); }, report.average.ce);
  row("I", [](const ServiceMetrics& r) { return r.instability.str(); }, report.average.instability);
  row("RC", [](const ServiceMetrics& r) { return r.rc.str(); }, report.average.rc);

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& line : body) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os << " | ";
      if (c == 0) os << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      else os << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    os << "\n";
  };
  emit(header);
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "-+-" : "") << std::string(width[c], '-');
  os << "\n";
  for (const auto& line : body) emit(line);
  return os.str();
}

}  // namespace ftdecomp
