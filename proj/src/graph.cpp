// Copyright 2026 The dynmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dynmatch/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dynmatch/work.hpp"

namespace dynmatch {

void DynamicGraph::check_range(const Edge& e) const {
  if (e.v >= adj_.size()) {
    throw GraphError(GraphErrorCode::kRangeError,
                     "vertex " + std::to_string(e.v) + " out of range [0, " +
                         std::to_string(adj_.size()) + ")");
  }
}

std::size_t DynamicGraph::degree(VertexId v) const {
  work::add();
  return adj_[v].size();
}

bool DynamicGraph::has_edge(const Edge& e) const {
  work::add();
  if (e.v >= adj_.size()) return false;
  const auto& nb = adj_[e.u];
  return std::binary_search(nb.begin(), nb.end(), e.v);
}

std::size_t DynamicGraph::edge_degree(const Edge& e) const {
  check_range(e);
  work::add();
  return adj_[e.u].size() + adj_[e.v].size();
}

void DynamicGraph::insert_edge(const Edge& e) {
  check_range(e);
  auto& nu = adj_[e.u];
  const auto it = std::lower_bound(nu.begin(), nu.end(), e.v);
  if (it != nu.end() && *it == e.v) {
    throw GraphError(GraphErrorCode::kDuplicateEdge,
                     "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") already present");
  }
  work::add(2);
  nu.insert(it, e.v);
  auto& nv = adj_[e.v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), e.u), e.u);
  ++edge_count_;
  ++update_clock_;
}

void DynamicGraph::delete_edge(const Edge& e) {
  check_range(e);
  auto& nu = adj_[e.u];
  const auto it = std::lower_bound(nu.begin(), nu.end(), e.v);
  if (it == nu.end() || *it != e.v) {
    throw GraphError(GraphErrorCode::kMissingEdge,
                     "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not present");
  }
  work::add(2);
  nu.erase(it);
  auto& nv = adj_[e.v];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), e.u));
  --edge_count_;
  ++update_clock_;
}

void DynamicGraph::apply(const UpdateEvent& ev) {
  if (ev.kind == UpdateKind::kInsert) {
    insert_edge(ev.edge);
  } else {
    delete_edge(ev.edge);
  }
}

std::vector<Edge> DynamicGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for_each_edge([&](const Edge& e) { out.push_back(e); });
  return out;
}

std::size_t DynamicGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nb : adj_) best = std::max(best, nb.size());
  return best;
}

namespace {

bool parse_u32(std::string_view token, VertexId& out) {
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  throw GraphError(GraphErrorCode::kParseError,
                   "line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

ParsedStream parse_stream(std::string_view text) {
  ParsedStream out;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!have_header) {
      VertexId n = 0;
      if (toks.size() != 1 || !parse_u32(toks[0], n)) parse_fail(line_no, "expected vertex count");
      out.n = n;
      have_header = true;
      continue;
    }
    if (toks.size() != 3 || (toks[0] != "+" && toks[0] != "-")) {
      parse_fail(line_no, "expected '+ u v' or '- u v'");
    }
    VertexId u = 0, v = 0;
    if (!parse_u32(toks[1], u) || !parse_u32(toks[2], v)) parse_fail(line_no, "bad vertex id");
    if (u >= out.n || v >= out.n) {
      throw GraphError(GraphErrorCode::kRangeError,
                       "line " + std::to_string(line_no) + ": vertex id >= n");
    }
    if (u == v) parse_fail(line_no, "self-loop");
    out.events.push_back({toks[0] == "+" ? UpdateKind::kInsert : UpdateKind::kDelete, Edge(u, v)});
  }
  if (!have_header) parse_fail(line_no, "missing header");
  return out;
}

std::string format_stream(std::size_t n, const std::vector<UpdateEvent>& events) {
  std::ostringstream os;
  os << n << '\n';
  for (const auto& ev : events) {
    os << (ev.kind == UpdateKind::kInsert ? '+' : '-') << ' ' << ev.edge.u << ' ' << ev.edge.v
       << '\n';
  }
  return os.str();
}

}  // namespace dynmatch
