#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ftdecomp/mapper.hpp"
#include "ftdecomp/rounding.hpp"
#include "json.hpp"

namespace ftdecomp {

enum class RelationKind { Inheritance, Invocation, AttributeAccess, Instantiation };

std::string_view relation_kind_name(RelationKind kind);

struct TypeNode {
  std::string type_name;
  std::string service;

  bool operator==(const TypeNode&) const = default;
};

struct Relation {
  std::string source;
  std::string target;
  RelationKind kind;

  bool operator==(const Relation&) const = default;
};

/// Type-level dependency graph partitioned into services.
class DependencyGraph {
 public:
  DependencyGraph() = default;
  /// Throws Error(Validation) on duplicate type names, dangling endpoints or
  /// self-inheritance.
  DependencyGraph(std::vector<TypeNode> nodes, std::vector<Relation> relations);

  const std::vector<TypeNode>& nodes() const { return nodes_; }
  const std::vector<Relation>& relations() const { return relations_; }

  /// Service names in first-appearance order.
  std::vector<std::string> services() const;
  bool has_service(std::string_view service) const;
  /// Service owning `type_name`; the type must exist.
  const std::string& service_of(std::string_view type_name) const;

 private:
  std::vector<TypeNode> nodes_;
  std::vector<Relation> relations_;
  std::vector<std::size_t> sorted_;  // indexes of nodes_ ordered by type_name
};

/// Distinct external types with at least one relation into the service.
std::int64_t afferent_coupling(const DependencyGraph& graph, std::string_view service);
/// Distinct external types the service's types have a relation to.
std::int64_t efferent_coupling(const DependencyGraph& graph, std::string_view service);

/// Exact ce / (ce + ca); zero when both are zero.
Rational instability_exact(std::int64_t ca, std::int64_t ce);
/// instability_exact rounded to one decimal (ratio scale).
Tenths instability(std::int64_t ca, std::int64_t ce);

/// Internal relations (each record counted once) over type count.
Rational relational_cohesion_exact(const DependencyGraph& graph, std::string_view service);
Tenths relational_cohesion(const DependencyGraph& graph, std::string_view service);

struct ServiceMetrics {
  std::string service;
  std::int64_t ca = 0;
  std::int64_t ce = 0;
  Tenths instability;
  Tenths rc;

  bool operator==(const ServiceMetrics&) const = default;
};

struct MetricsAverages {
  Tenths ca;
  Tenths ce;
  Tenths instability;
  Tenths rc;

  bool operator==(const MetricsAverages&) const = default;
};

struct MetricsReport {
  std::vector<ServiceMetrics> rows;
  MetricsAverages average;  // means of the unrounded values, then rounded
};

/// Empty `services` means every service in the graph, in graph order.
MetricsReport metrics_report(const DependencyGraph& graph, const std::vector<std::string>& services = {});

/// Per service, one node per layer (main, controller, service, dao) plus one
/// per entity copy. Relations: main -instantiates-> controller -invokes->
/// service -invokes-> dao, and service -accesses-> each entity. No relation
/// leaves its service.
DependencyGraph scaffold_to_graph(const ScaffoldManifest& manifest);

nlohmann::json graph_to_json(const DependencyGraph& graph);
DependencyGraph graph_from_json(const nlohmann::json& doc);
DependencyGraph load_graph(const std::filesystem::path& path);

nlohmann::json metrics_to_json(const MetricsReport& report);

/// Rows Ca / Ce / I / RC, one column per service plus "Avg.".
std::string render_metrics(const MetricsReport& report);

}  // namespace ftdecomp
