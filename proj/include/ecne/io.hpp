#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ecne/centrality.hpp"
#include "ecne/embedding.hpp"
#include "ecne/graph.hpp"
#include "ecne/linegraph.hpp"
#include "ecne/metrics.hpp"
#include "ecne/nn.hpp"

#include <json.hpp>

namespace ecne {

namespace detail {

// Shortest decimal that round-trips a double; keeps text outputs
// reproducible and exact.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    for (int prec = 1; prec < 17; ++prec) {
      char probe[32];
      std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
      if (std::strtod(probe, nullptr) == v) return probe;
    }
  }
  return buf;
}

}  // namespace detail

/// Embedding file: header "count dim", then one row per item:
/// "name v1 v2 ... vd". Edge rows are named "<u>_<v>" with raw labels.
struct NamedEmbeddings {
  std::vector<std::string> names;
  EmbeddingMatrix matrix;
};

inline void save_embeddings(const EmbeddingMatrix& emb,
                            const std::vector<std::string>& names,
                            const std::string& path) {
  if (names.size() != emb.rows())
    throw std::invalid_argument("save_embeddings: name/row count mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write embeddings: " + path);
  out << emb.rows() << ' ' << emb.dim << '\n';
  for (std::size_t i = 0; i < emb.rows(); ++i) {
    out << names[i];
    const double* row = emb.row(i);
    for (std::size_t j = 0; j < emb.dim; ++j)
      out << ' ' << detail::format_double(row[j]);
    out << '\n';
  }
}

inline NamedEmbeddings load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings: " + path);
  std::size_t count = 0, dim = 0;
  if (!(in >> count >> dim) || dim == 0)
    throw std::runtime_error("bad embedding header in " + path);
  NamedEmbeddings out;
  out.matrix = EmbeddingMatrix(count, dim);
  out.names.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> out.names[i]))
      throw std::runtime_error("truncated embedding file: " + path);
    for (std::size_t j = 0; j < dim; ++j)
      if (!(in >> out.matrix.row(i)[j]))
        throw std::runtime_error("truncated embedding row in " + path);
  }
  return out;
}

inline std::vector<std::string> edge_names(const Graph& g) {
  std::vector<std::string> names;
  names.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) names.push_back(g.edge_name(e));
  return names;
}

/// Debug dump: "node_id\tcb" (raw, pre-clamp values when available).
inline void save_centrality(const CentralityVector& cv,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write centrality: " + path);
  const auto& vals = cv.raw.empty() ? cv.values : cv.raw;
  for (std::size_t i = 0; i < vals.size(); ++i)
    out << i << '\t' << detail::format_double(vals[i]) << '\n';
}

/// Debug dump: "lineNodeA\tlineNodeB\tweight" with "u_v" line-node names.
inline void save_line_graph(const WeightedLineGraph& lg, const Graph& g,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write line graph: " + path);
  for (const auto& le : lg.edges())
    out << g.edge_name(le.a) << '\t' << g.edge_name(le.b) << '\t'
        << detail::format_double(le.weight) << '\n';
}

/// Metric report TSV: task dataset method metric value stddev runs.
inline void append_metric_rows(std::ostream& out, const std::string& dataset,
                               const std::string& method,
                               const std::vector<MetricReport>& rows) {
  for (const auto& r : rows)
    out << r.task << '\t' << dataset << '\t' << method << '\t' << r.metric
        << '\t' << detail::format_double(r.value) << '\t'
        << detail::format_double(r.stddev) << '\t' << r.runs << '\n';
}

/// Prediction report TSV: u v label eta (raw node labels).
inline void save_predictions(
    const Graph& g,
    const std::vector<std::tuple<NodeId, NodeId, int, double>>& rows,
    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write predictions: " + path);
  for (const auto& [u, v, label, eta] : rows)
    out << g.label(u) << '\t' << g.label(v) << '\t' << label << '\t'
        << detail::format_double(eta) << '\n';
}

/// Versioned JSON checkpoint of named parameter tensors.
template <typename Real>
void save_checkpoint(std::vector<Tensor<Real>*> tensors,
                     const std::string& path,
                     const std::map<std::string, std::string>& meta = {}) {
  nlohmann::json j;
  j["format"] = "ecne-checkpoint";
  j["version"] = 1;
  for (const auto& [k, v] : meta) j["meta"][k] = v;
  for (const auto* t : tensors) {
    nlohmann::json tj;
    tj["shape"] = t->shape;
    tj["data"] = std::vector<double>(t->value.begin(), t->value.end());
    j["tensors"][t->name] = std::move(tj);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << j.dump(2) << '\n';
}

template <typename Real>
void load_checkpoint(std::vector<Tensor<Real>*> tensors,
                     const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  nlohmann::json j;
  in >> j;
  if (j.value("version", 0) != 1)
    throw std::runtime_error("unsupported checkpoint version in " + path);
  for (auto* t : tensors) {
    if (!j["tensors"].contains(t->name))
      throw std::runtime_error("checkpoint missing tensor " + t->name);
    const auto& tj = j["tensors"][t->name];
    auto shape = tj["shape"].template get<std::vector<std::size_t>>();
    if (shape != t->shape)
      throw std::runtime_error("checkpoint shape mismatch for " + t->name);
    auto data = tj["data"].template get<std::vector<double>>();
    if (data.size() != t->size())
      throw std::runtime_error("checkpoint size mismatch for " + t->name);
    for (std::size_t i = 0; i < data.size(); ++i)
      t->value[i] = static_cast<Real>(data[i]);
  }
}

}  // namespace ecne
