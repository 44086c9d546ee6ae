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

#include "dynmatch/edcs_batch.hpp"

#include <algorithm>

#include "dynmatch/work.hpp"

namespace dynmatch {

namespace {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t digest_edges(std::uint64_t h, const DynamicGraph& g) {
  g.for_each_edge([&](const Edge& e) { h = mix(h, (std::uint64_t(e.u) << 32) | e.v); });
  return h;
}

std::uint64_t digest_set(std::uint64_t h, const std::set<Edge>& s) {
  for (const Edge& e : s) h = mix(h, (std::uint64_t(e.u) << 32) | e.v);
  return h;
}

}  // namespace

EdcsMatchingInstance::EdcsMatchingInstance(std::size_t n, EdcsParams params, int k,
                                           Ratio matcher_eps, bool allow_degenerate)
    : params_(params),
      k_(k),
      matcher_eps_(matcher_eps),
      allow_degenerate_(allow_degenerate),
      g_(n),
      h_(n),
      deg_inserted_(n, 0),
      deg_deleted_(n, 0) {
  params_.validate();
  if (k_ < 1) throw EdcsError(EdcsErrorCode::kBadParams, "k must be >= 1");
  const Ratio alpha_exact =
      Ratio(static_cast<long long>(n)) * params_.delta * params_.lambda * params_.beta / Ratio(64);
  alpha_ = alpha_exact.floor();
  if ((alpha_ <= 1 || alpha_ / k_ < 1) && !allow_degenerate_) {
    throw EdcsError(EdcsErrorCode::kDegenerateParams,
                    "rebuild period alpha=" + std::to_string(alpha_) + " with k=" +
                        std::to_string(k_) + " would rebuild after every update");
  }
  // Construction must not leave journal entries: instances may still be moved
  // into their final location before the first batch begins.
}

long long EdcsMatchingInstance::active_threshold() const {
  const long long d = std::clamp<long long>(depth_, 1, k_);
  return std::max<long long>(1, d * alpha_ / k_);
}

void EdcsMatchingInstance::begin_batch() {
  log_.mark();
  log_.set_int(depth_, depth_ + 1);
}

void EdcsMatchingInstance::revert_batches(std::size_t count) { log_.revert(count); }

void EdcsMatchingInstance::process(const UpdateEvent& ev) {
  log_.graph_apply(g_, ev);
  const Edge e = ev.edge;

  if (ev.kind == UpdateKind::kInsert) {
    log_.set_insert(e_inserted_, e);
    log_.set_vec_int(deg_inserted_, e.u, deg_inserted_[e.u] + 1);
    log_.set_vec_int(deg_inserted_, e.v, deg_inserted_[e.v] + 1);
    work::add(2);
    const Ratio insert_cap = params_.beta * params_.lambda / Ratio(16) - Ratio(1);
    const long long max_deg_i = std::max(deg_inserted_[e.u], deg_inserted_[e.v]);
    const Ratio deg_h(static_cast<long long>(h_.degree(e.u) + h_.degree(e.v)));
    if (Ratio(max_deg_i) < insert_cap && deg_h <= params_.beta - Ratio(2)) {
      log_.graph_apply(h_, ev);
      host_event(ev);
    }
  } else {
    log_.set_insert(e_deleted_, e);
    log_.set_vec_int(deg_deleted_, e.u, deg_deleted_[e.u] + 1);
    log_.set_vec_int(deg_deleted_, e.v, deg_deleted_[e.v] + 1);
    work::add(2);
    if (h_.has_edge(e)) {
      log_.graph_apply(h_, ev);
      host_event(ev);
    }
  }

  log_.set_int(counter_, counter_ + 1);
  if (counter_ >= active_threshold()) rebuild();
}

void EdcsMatchingInstance::host_event(const UpdateEvent& hev) {
  if (hev.kind == UpdateKind::kDelete && matched_.count(hev.edge)) {
    log_.set_erase(matched_, hev.edge);
  }
  log_.set_int(m_counter_, m_counter_ + 1);
  const long long threshold =
      std::max<long long>(1, (matcher_eps_ * Ratio(last_size_)).floor());
  if (m_counter_ > threshold) matcher_rebuild();
}

void EdcsMatchingInstance::matcher_rebuild() {
  const Matching next = static_approx_matching(h_, matcher_eps_);
  const std::set<Edge> current = matched_;
  for (const Edge& e : current) {
    if (!next.contains(e)) log_.set_erase(matched_, e);
  }
  for (const Edge& e : next.edges()) {
    log_.set_insert(matched_, e);
  }
  log_.set_int(last_size_, static_cast<long long>(next.size()));
  log_.set_int(m_counter_, 0);
}

void EdcsMatchingInstance::rebuild() {
  const auto built = static_build(g_, params_.beta / (Ratio(1) + params_.lambda / Ratio(4)),
                                  params_.lambda / Ratio(4), params_.delta / Ratio(2));
  const std::set<Edge> next(built.h.begin(), built.h.end());
  for (const Edge& e : h_.edges()) {
    if (!next.count(e)) log_.graph_apply(h_, {UpdateKind::kDelete, e});
  }
  for (const Edge& e : next) {
    if (!h_.has_edge(e)) log_.graph_apply(h_, {UpdateKind::kInsert, e});
  }
  log_.set_clear(e_inserted_);
  log_.set_clear(e_deleted_);
  for (std::size_t v = 0; v < deg_inserted_.size(); ++v) {
    if (deg_inserted_[v] != 0) log_.set_vec_int(deg_inserted_, v, 0);
    if (deg_deleted_[v] != 0) log_.set_vec_int(deg_deleted_, v, 0);
  }
  log_.set_vid_vec(v_d_base_, built.v_d);
  log_.set_int(counter_, 0);
  log_.set_int(rebuild_count_, rebuild_count_ + 1);
  matcher_rebuild();
}

std::vector<VertexId> EdcsMatchingInstance::witness() const {
  const Ratio threshold = params_.beta * params_.lambda / Ratio(16);
  std::vector<bool> in(g_.n(), false);
  for (VertexId v : v_d_base_) in[v] = true;
  for (VertexId v = 0; v < g_.n(); ++v) {
    if (Ratio(deg_inserted_[v]) >= threshold) in[v] = true;
    if (Ratio(deg_deleted_[v]) >= threshold) in[v] = true;
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g_.n(); ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

Matching EdcsMatchingInstance::matching_from_mate() const { return Matching(matched_); }

std::uint64_t EdcsMatchingInstance::state_digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = digest_edges(h, g_);
  h = mix(h, 0x1111);
  h = digest_edges(h, h_);
  h = mix(h, 0x2222);
  h = digest_set(h, e_inserted_);
  h = digest_set(h, e_deleted_);
  for (long long d : deg_inserted_) h = mix(h, static_cast<std::uint64_t>(d));
  for (long long d : deg_deleted_) h = mix(h, static_cast<std::uint64_t>(d));
  for (VertexId v : v_d_base_) h = mix(h, v);
  h = mix(h, static_cast<std::uint64_t>(counter_));
  h = mix(h, static_cast<std::uint64_t>(depth_));
  h = mix(h, static_cast<std::uint64_t>(rebuild_count_));
  h = digest_set(h, matched_);
  h = mix(h, static_cast<std::uint64_t>(last_size_));
  h = mix(h, static_cast<std::uint64_t>(m_counter_));
  return h;
}

}  // namespace dynmatch
